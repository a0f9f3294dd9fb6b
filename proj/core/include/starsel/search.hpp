#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "starsel/instance.hpp"
#include "starsel/principles.hpp"

namespace starsel::search {

/// Corpus generation limits. max_instances = 0 means "flow default".
struct Budget {
  int max_n = 16;
  int max_family_size = 16;
  int max_a_size = 4;
  int max_b_size = 2;
  int max_horizon = 4;
  std::uint64_t max_instances = 0;
  std::uint64_t seed = 0;

  enum class BMode { Extensional, PredicatePool, Mixed, CoverOnly };
  BMode b_mode = BMode::Extensional;
};

/// The truncated initial-segment family {{0},{0,1},...,{0..n-1}} as the
/// single member of 𝒜, with the family exported under the name "U".
Instance initial_segments_instance(int n, Collection b, int horizon = 2);

/// Streams every (𝒜, extensional 𝒷, H) combination within the budget in
/// canonical order: ground size, then horizon, then 𝒜, then 𝒷. Full
/// exhaustion requires max_n ≤ 3; CoverOnly mode fixes 𝒷 = cover.
class InstanceEnumerator {
 public:
  explicit InstanceEnumerator(Budget budget);
  std::optional<Instance> next();
  std::uint64_t emitted() const { return emitted_; }

 private:
  void enter_ground(int n);
  Budget budget_;
  int n_;
  int horizon_;
  std::vector<SetFamily> families_;     // all families within budget, canonical
  std::vector<int> a_combo_;            // current 𝒜 combination (indices)
  std::vector<int> b_combo_;            // current 𝒷 combination (indices)
  bool cover_b_;
  bool done_ = false;
  std::uint64_t emitted_ = 0;

  bool advance_b();
  bool advance_a();
  bool advance_horizon();
  Instance materialize() const;
};

std::vector<Instance> enumerate_instances(const Budget& budget);

/// Seeded stream of random instances: sizes uniform within the budget,
/// members uniform over subsets, families nonempty by construction.
/// 𝒷 is drawn per b_mode (extensional lists, a fixed predicate pool,
/// a mix of the two, or cover).
class RandomInstanceStream {
 public:
  explicit RandomInstanceStream(Budget budget);
  Instance next();

 private:
  Budget budget_;
  std::mt19937_64 rng_;
};

Instance random_instance(const Budget& budget);

struct SeparationResult {
  principles::PrincipleId left{};
  principles::PrincipleId right{};
  Instance instance;
  principles::EvalResult left_result;   // Holds
  principles::EvalResult right_result;  // Fails
  std::uint64_t candidates_tried = 0;
};

/// Brute-force hunt for an instance where `left` holds and `right` fails:
/// tiny exhaustive corpus first, then the seeded random stream. The first
/// hit (canonical order) is re-evaluated before being returned.
std::optional<SeparationResult> find_separation(principles::PrincipleId left,
                                                principles::PrincipleId right,
                                                const Budget& budget);

}  // namespace starsel::search
