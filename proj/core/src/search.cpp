#include "starsel/search.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "starsel/parallel.hpp"
#include "starsel/staralg.hpp"

namespace starsel::search {

using principles::EvalResult;
using principles::PrincipleId;
using principles::Verdict;

// -- built-in instances ------------------------------------------------------------

Instance initial_segments_instance(int n, Collection b, int horizon) {
  if (n < 1 || n > max_ground_size)
    throw FormatError("initial segments need 1 <= n <= " +
                      std::to_string(max_ground_size));
  std::vector<Subset> segments;
  std::uint32_t bits = 0;
  for (int k = 0; k < n; ++k) {
    bits |= 1u << k;
    segments.push_back(Subset(bits));
  }
  SetFamily u(std::move(segments));

  Instance inst;
  inst.ground = GroundSet{n};
  inst.named_families["U"] = u;
  inst.a = Collection::extensional({u});
  inst.b = std::move(b);
  inst.kappa = Kappa::finite_with_empty();
  inst.horizon = horizon;
  inst.validate();
  return inst;
}

// -- exhaustive enumeration ---------------------------------------------------------

namespace {

void check_budget_fields(const Budget& b) {
  if (b.max_n < 1 || b.max_family_size < 1 || b.max_a_size < 1 ||
      b.max_b_size < 1 || b.max_horizon < 1)
    throw FormatError("budget limits must be positive");
}

bool next_combination(std::vector<int>& combo, int universe) {
  const int k = static_cast<int>(combo.size());
  for (int i = k - 1; i >= 0; --i) {
    if (combo[i] < universe - (k - i)) {
      ++combo[i];
      for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

InstanceEnumerator::InstanceEnumerator(Budget budget) : budget_(budget) {
  check_budget_fields(budget_);
  if (budget_.max_n > 3)
    throw BudgetExceeded("exhaustive enumeration requires max_n <= 3");
  cover_b_ = budget_.b_mode == Budget::BMode::CoverOnly;
  n_ = 0;
  enter_ground(1);
}

void InstanceEnumerator::enter_ground(int n) {
  n_ = n;
  horizon_ = 1;
  families_.clear();
  for (const SetFamily& f : staralg::all_families(GroundSet{n}))
    if (f.size() <= static_cast<std::size_t>(budget_.max_family_size))
      families_.push_back(f);
  a_combo_ = {0};
  b_combo_ = {0};
}

bool InstanceEnumerator::advance_b() {
  if (cover_b_) return false;
  if (next_combination(b_combo_, static_cast<int>(families_.size()))) return true;
  const int size = static_cast<int>(b_combo_.size()) + 1;
  if (size > budget_.max_b_size || size > static_cast<int>(families_.size()))
    return false;
  b_combo_.resize(size);
  for (int i = 0; i < size; ++i) b_combo_[i] = i;
  return true;
}

bool InstanceEnumerator::advance_a() {
  b_combo_ = {0};
  if (next_combination(a_combo_, static_cast<int>(families_.size()))) return true;
  const int size = static_cast<int>(a_combo_.size()) + 1;
  if (size > budget_.max_a_size || size > static_cast<int>(families_.size()))
    return false;
  a_combo_.resize(size);
  for (int i = 0; i < size; ++i) a_combo_[i] = i;
  return true;
}

bool InstanceEnumerator::advance_horizon() {
  a_combo_ = {0};
  b_combo_ = {0};
  return ++horizon_ <= budget_.max_horizon;
}

Instance InstanceEnumerator::materialize() const {
  Instance inst;
  inst.ground = GroundSet{n_};
  std::vector<SetFamily> a_families;
  for (std::size_t i = 0; i < a_combo_.size(); ++i) {
    const SetFamily& fam = families_[a_combo_[i]];
    inst.named_families["F" + std::to_string(i)] = fam;
    a_families.push_back(fam);
  }
  inst.a = Collection::extensional(std::move(a_families));
  if (cover_b_) {
    inst.b = Collection::intensional(pred::cover());
  } else {
    std::vector<SetFamily> b_families;
    for (int idx : b_combo_) b_families.push_back(families_[idx]);
    inst.b = Collection::extensional(std::move(b_families));
  }
  inst.kappa = Kappa::singletons();
  inst.horizon = horizon_;
  return inst;
}

std::optional<Instance> InstanceEnumerator::next() {
  if (done_) return std::nullopt;
  if (budget_.max_instances > 0 && emitted_ >= budget_.max_instances) {
    done_ = true;
    return std::nullopt;
  }
  Instance out = materialize();
  ++emitted_;
  if (!advance_b() && !advance_a() && !advance_horizon()) {
    if (n_ + 1 <= budget_.max_n)
      enter_ground(n_ + 1);
    else
      done_ = true;
  }
  return out;
}

std::vector<Instance> enumerate_instances(const Budget& budget) {
  constexpr std::uint64_t hard_cap = 1'000'000;
  InstanceEnumerator en(budget);
  std::vector<Instance> out;
  while (auto inst = en.next()) {
    out.push_back(std::move(*inst));
    if (out.size() > hard_cap)
      throw BudgetExceeded("exhaustive corpus exceeds " + std::to_string(hard_cap) +
                           " instances; set max_instances");
  }
  return out;
}

// -- random instances ------------------------------------------------------------------

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

SetFamily random_family(std::mt19937_64& rng, GroundSet g, int max_family_size) {
  const std::uint32_t subset_count = 1u << g.size;
  const int max_size =
      std::min<int>(max_family_size, static_cast<int>(subset_count));
  const int size = 1 + static_cast<int>(bounded(rng, max_size));
  std::set<std::uint32_t> picked;
  while (static_cast<int>(picked.size()) < size)
    picked.insert(static_cast<std::uint32_t>(bounded(rng, subset_count)));
  std::vector<Subset> members;
  for (std::uint32_t bits : picked) members.push_back(Subset(bits));
  return SetFamily(std::move(members));
}

// Fixed pool of target predicates for the predicate draw mode.
std::vector<PredPtr> predicate_pool() {
  using namespace pred;
  return {
      cover(),
      max_size(1),
      max_size(2),
      min_size(1),
      min_size(2),
      nonempty_members(),
      card_le(1),
      card_le(2),
      and_(cover(), max_size(2)),
      and_(cover(), nonempty_members()),
      not_(cover()),
      or_(cover(), max_size(1)),
  };
}

}  // namespace

RandomInstanceStream::RandomInstanceStream(Budget budget)
    : budget_(budget), rng_(budget.seed) {
  check_budget_fields(budget_);
}

Instance RandomInstanceStream::next() {
  // Draw order is fixed: ground size, horizon, kappa, 𝒜, then 𝒷.
  Instance inst;
  const int n = 1 + static_cast<int>(bounded(rng_, budget_.max_n));
  inst.ground = GroundSet{n};
  inst.horizon = 1 + static_cast<int>(bounded(rng_, budget_.max_horizon));
  switch (bounded(rng_, 3)) {
    case 0: inst.kappa = Kappa::singletons(); break;
    case 1: inst.kappa = Kappa::finite_nonempty(); break;
    default: inst.kappa = Kappa::finite_with_empty(); break;
  }

  const int a_count = 1 + static_cast<int>(bounded(rng_, budget_.max_a_size));
  std::vector<SetFamily> a_families;
  for (int i = 0; i < a_count; ++i)
    a_families.push_back(random_family(rng_, inst.ground, budget_.max_family_size));
  inst.a = Collection::extensional(std::move(a_families));
  for (std::size_t i = 0; i < inst.a_families().size(); ++i)
    inst.named_families["F" + std::to_string(i)] = inst.a_families()[i];

  Budget::BMode mode = budget_.b_mode;
  if (mode == Budget::BMode::Mixed)
    mode = bounded(rng_, 2) == 0 ? Budget::BMode::Extensional
                                 : Budget::BMode::PredicatePool;
  switch (mode) {
    case Budget::BMode::CoverOnly:
      inst.b = Collection::intensional(pred::cover());
      break;
    case Budget::BMode::PredicatePool: {
      static const std::vector<PredPtr> pool = predicate_pool();
      inst.b = Collection::intensional(pool[bounded(rng_, pool.size())]);
      break;
    }
    case Budget::BMode::Extensional:
    default: {
      const int b_count = 1 + static_cast<int>(bounded(rng_, budget_.max_b_size));
      std::vector<SetFamily> b_families;
      for (int i = 0; i < b_count; ++i)
        b_families.push_back(
            random_family(rng_, inst.ground, budget_.max_family_size));
      inst.b = Collection::extensional(std::move(b_families));
      break;
    }
  }
  inst.validate();
  return inst;
}

Instance random_instance(const Budget& budget) {
  return RandomInstanceStream(budget).next();
}

// -- separation search ---------------------------------------------------------------------

namespace {

std::optional<SeparationResult> try_candidate(PrincipleId left, PrincipleId right,
                                              const Instance& inst) {
  EvalResult lres, rres;
  try {
    lres = principles::evaluate(left, inst);
    if (lres.verdict != Verdict::Holds) return std::nullopt;
    rres = principles::evaluate(right, inst);
    if (rres.verdict != Verdict::Fails) return std::nullopt;

    // Re-verify before returning: evaluation is deterministic, so a
    // disagreement here means a real defect, not noise.
    EvalResult lcheck = principles::evaluate(left, inst);
    EvalResult rcheck = principles::evaluate(right, inst);
    if (lcheck.verdict != Verdict::Holds || rcheck.verdict != Verdict::Fails)
      return std::nullopt;
    if (!lcheck.witness ||
        !principles::replay_witness(*lcheck.witness, inst,
                                    principles::Target::instance_b()))
      return std::nullopt;
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  SeparationResult result;
  result.left = left;
  result.right = right;
  result.instance = inst;
  result.left_result = std::move(lres);
  result.right_result = std::move(rres);
  return result;
}

// Candidates are evaluated in parallel batches; the hit with the lowest
// stream index wins, so the result never depends on scheduling.
std::optional<SeparationResult> scan_stream(
    PrincipleId left, PrincipleId right, std::uint64_t& tried,
    const std::function<std::optional<Instance>()>& next_candidate) {
  const int workers = default_workers();
  const std::size_t batch_size = workers <= 1 ? 1 : 64;
  for (;;) {
    std::vector<Instance> batch;
    while (batch.size() < batch_size) {
      auto inst = next_candidate();
      if (!inst) break;
      batch.push_back(std::move(*inst));
    }
    if (batch.empty()) return std::nullopt;
    std::vector<std::optional<SeparationResult>> hits(batch.size());
    parallel_for_index(
        batch.size(),
        [&](std::size_t i) { hits[i] = try_candidate(left, right, batch[i]); },
        workers);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (hits[i]) {
        hits[i]->candidates_tried = tried + i + 1;
        return std::move(hits[i]);
      }
    }
    tried += batch.size();
  }
}

}  // namespace

std::optional<SeparationResult> find_separation(PrincipleId left, PrincipleId right,
                                                const Budget& budget) {
  check_budget_fields(budget);
  if (left == right) return std::nullopt;

  std::uint64_t tried = 0;

  // Tiny exhaustive corpus first, in canonical order.
  Budget tiny = budget;
  tiny.max_n = std::min(budget.max_n, 2);
  tiny.max_family_size = std::min(budget.max_family_size, 3);
  tiny.max_a_size = std::min(budget.max_a_size, 2);
  tiny.max_b_size = std::min(budget.max_b_size, 2);
  tiny.max_horizon = std::min(budget.max_horizon, 2);
  tiny.max_instances = 5000;
  if (tiny.b_mode != Budget::BMode::CoverOnly)
    tiny.b_mode = Budget::BMode::Extensional;
  InstanceEnumerator en(tiny);
  if (auto hit = scan_stream(left, right, tried, [&] { return en.next(); }))
    return hit;

  // Then the seeded random stream.
  const std::uint64_t cap =
      budget.max_instances > 0 ? budget.max_instances : 20'000;
  RandomInstanceStream stream(budget);
  std::uint64_t drawn = 0;
  return scan_stream(left, right, tried, [&]() -> std::optional<Instance> {
    if (drawn >= cap) return std::nullopt;
    ++drawn;
    return stream.next();
  });
}

}  // namespace starsel::search
