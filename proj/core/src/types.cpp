#include "starsel/types.hpp"

namespace starsel {

std::string to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int e : s.elements()) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  out += "}";
  return out;
}

std::string to_string(const SetFamily& f) {
  std::string out = "{";
  bool first = true;
  for (Subset s : f.members()) {
    if (!first) out += ",";
    out += to_string(s);
    first = false;
  }
  out += "}";
  return out;
}

bool refines_into(const SetFamily& a, const SetFamily& b) {
  for (Subset s : a.members()) {
    bool fits = false;
    for (Subset t : b.members())
      if (s.is_subset_of(t)) {
        fits = true;
        break;
      }
    if (!fits) return false;
  }
  return true;
}

}  // namespace starsel
