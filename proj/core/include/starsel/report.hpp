#pragma once

#include <string>

#include "starsel/principles.hpp"
#include "starsel/search.hpp"
#include "starsel/theorems.hpp"

namespace starsel::report {

/// Byte-stable JSON documents: fixed key order, canonical set ordering,
/// no timestamps.
std::string eval_report(principles::PrincipleId p, const principles::EvalResult& r,
                        const Instance& inst);
std::string theorem_report(const theorems::TheoremReport& r,
                           const std::string& corpus_label, std::uint64_t seed);
std::string separation_report(const std::optional<search::SeparationResult>& r,
                              principles::PrincipleId left,
                              principles::PrincipleId right);
/// Sidecar document for a persisted separation (instance stored separately).
std::string separation_sidecar(const search::SeparationResult& r);

}  // namespace starsel::report
