#include "mecsr/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <span>
#include <thread>
#include <unordered_set>

#include "mecsr/errors.hpp"

namespace mecsr {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Brute: return "brute";
    case Method::MinUnanimous: return "min_unanimous";
    case Method::MinSubsets: return "min_subsets";
    case Method::SubsetFpt: return "subset_fpt";
  }
  return "brute";
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Auto: return "auto";
    case Strategy::Brute: return "brute";
    case Strategy::MinUnanimous: return "min_unanimous";
    case Strategy::MinSubsets: return "min_subsets";
    case Strategy::SubsetFpt: return "subset_fpt";
  }
  return "auto";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "auto") return Strategy::Auto;
  if (text == "brute") return Strategy::Brute;
  if (text == "min_unanimous") return Strategy::MinUnanimous;
  if (text == "min_subsets") return Strategy::MinSubsets;
  if (text == "subset_fpt") return Strategy::SubsetFpt;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;
using VoterBits = std::uint64_t;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t kMaxBitsetVoters = 63;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    out = saturating_mul(out, base);
    if (out == kSaturated) break;
  }
  return out;
}

// 2^n * n * t * ell, the per-subset solvers' work estimate.
std::uint64_t subset_cost(const Instance& inst) {
  if (inst.n >= 64) return kSaturated;
  std::uint64_t c = std::uint64_t{1} << inst.n;
  c = saturating_mul(c, inst.n);
  c = saturating_mul(c, inst.t);
  return saturating_mul(c, inst.ell);
}

std::int64_t elapsed_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

Satisfaction identity(Model model) {
  return model == Model::Min ? std::numeric_limits<Satisfaction>::max() : 0;
}

// Sum saturates at d so partial sums never overflow; only ">= d" matters.
Satisfaction combine(Model model, Satisfaction d, Satisfaction acc, Satisfaction v) {
  switch (model) {
    case Model::Sum: return v >= d - acc ? d : acc + v;
    case Model::Max: return std::max(acc, v);
    case Model::Min: return std::min(acc, v);
  }
  return acc;
}

// Enumerates every assignment extending `prefix` in lexicographic order.
// Returns the 0-based rank of the first feasible one inside the slice, writing
// it to `witness`. Gives up early once `cancel_below` drops under `slice`.
std::optional<std::uint64_t> scan_slice(const Instance& inst, std::span<const std::size_t> prefix,
                                        std::vector<std::size_t>& witness,
                                        const std::atomic<std::uint64_t>* cancel_below,
                                        std::uint64_t slice) {
  const std::size_t n = inst.n;
  const std::size_t t = inst.t;
  const std::size_t p = prefix.size();
  std::vector<std::size_t> rules(t, 0);
  std::copy(prefix.begin(), prefix.end(), rules.begin());

  std::vector<Satisfaction> acc((t + 1) * n, identity(inst.model));
  auto refresh = [&](std::size_t from) {
    for (std::size_t j = from; j < t; ++j) {
      const Satisfaction* src = &acc[j * n];
      Satisfaction* dst = &acc[(j + 1) * n];
      for (std::size_t i = 0; i < n; ++i) {
        dst[i] = combine(inst.model, inst.d, src[i], inst.at(i, j, rules[j]));
      }
    }
  };
  refresh(0);

  std::uint64_t rank = 0;
  while (true) {
    const Satisfaction* last = &acc[t * n];
    std::size_t satisfied = 0;
    for (std::size_t i = 0; i < n && satisfied < inst.alpha; ++i) {
      if (last[i] >= inst.d) ++satisfied;
    }
    if (satisfied >= inst.alpha) {
      witness = rules;
      return rank;
    }

    std::size_t pos = t;
    while (pos > p) {
      --pos;
      if (++rules[pos] < inst.ell) break;
      rules[pos] = 0;
      if (pos == p) return std::nullopt;
    }
    if (pos == t) return std::nullopt;
    refresh(pos);
    ++rank;

    if (cancel_below != nullptr && (rank & 0xfff) == 0 &&
        cancel_below->load(std::memory_order_relaxed) < slice) {
      return std::nullopt;
    }
  }
}

std::vector<std::uint64_t> type_bits(const std::vector<RuleType>& types) {
  std::vector<std::uint64_t> out;
  out.reserve(types.size());
  for (const auto& type : types) out.push_back(type.mask.to_ulong());
  return out;
}

// Enumerates voter subsets with popcount from n down to alpha; within one size
// in lexicographic order of their sorted member lists. Stops when `visit`
// returns true.
template <typename Visit>
bool for_each_subset_desc(std::size_t n, std::size_t alpha, std::uint64_t& counter, Visit&& visit) {
  for (std::size_t size = n + 1; size-- > alpha;) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      VoterBits subset = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (pick[i]) subset |= VoterBits{1} << i;
      }
      ++counter;
      if (visit(subset)) return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return false;
}

void require_bitset_cap(const Instance& inst, std::size_t cap, std::string_view method) {
  const std::size_t limit = std::min(cap, kMaxBitsetVoters);
  if (inst.n > limit) {
    std::ostringstream msg;
    msg << method << " voter cap exceeded: n = " << inst.n << " > " << limit;
    throw ResourceError(msg.str());
  }
}

}  // namespace

std::uint64_t assignment_count(const Instance& inst) { return saturating_pow(inst.ell, inst.t); }

std::vector<RuleType> rule_types(const Instance& inst, std::size_t layer) {
  require_valid(inst);
  if (layer >= inst.t) {
    throw UsageError("layer " + std::to_string(layer) + " out of range for t = " +
                     std::to_string(inst.t));
  }
  const Satisfaction cut = inst.model == Model::Sum ? 1 : inst.d;
  std::vector<RuleType> types;
  for (std::size_t k = 0; k < inst.ell; ++k) {
    boost::dynamic_bitset<> mask(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) mask[i] = inst.at(i, layer, k) >= cut;
    auto it = std::find_if(types.begin(), types.end(),
                           [&](const RuleType& type) { return type.mask == mask; });
    if (it == types.end()) {
      types.push_back(RuleType{layer, std::move(mask), k, {k}});
    } else {
      it->members.push_back(k);
    }
  }
  return types;
}

SolveResult solve_brute(const Instance& inst, const SolveOptions& opts) {
  require_valid(inst);
  const auto start = Clock::now();
  const std::uint64_t total = assignment_count(inst);
  if (total > opts.assignment_budget) {
    std::ostringstream msg;
    msg << "assignment budget exceeded: ell^t = "
        << (total == kSaturated ? std::string(">= 2^64") : std::to_string(total))
        << " > budget " << opts.assignment_budget;
    throw ResourceError(msg.str());
  }

  SolveResult result;
  result.method = Method::Brute;

  // Split on a prefix of layers so workers own disjoint, ordered slices. The
  // smallest slice holding a witness wins, so the answer matches one thread.
  const unsigned threads = std::max(1u, opts.threads);
  std::size_t depth = 0;
  if (threads > 1) {
    while (depth < inst.t && saturating_pow(inst.ell, depth) < 8ull * threads) ++depth;
  }
  const std::uint64_t slices = saturating_pow(inst.ell, depth);
  const std::uint64_t slice_size = saturating_pow(inst.ell, inst.t - depth);

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{slices};
  std::mutex found_mutex;
  std::vector<std::size_t> best_witness;
  std::uint64_t best_rank = 0;

  auto worker = [&] {
    std::vector<std::size_t> prefix(depth);
    std::vector<std::size_t> witness;
    while (true) {
      const std::uint64_t s = next.fetch_add(1);
      if (s >= slices || s > best.load()) return;
      std::uint64_t rest = s;
      for (std::size_t j = depth; j-- > 0;) {
        prefix[j] = static_cast<std::size_t>(rest % inst.ell);
        rest /= inst.ell;
      }
      auto rank = scan_slice(inst, prefix, witness, threads > 1 ? &best : nullptr, s);
      if (!rank) continue;
      std::lock_guard lock(found_mutex);
      if (s < best.load()) {
        best.store(s);
        best_witness = witness;
        best_rank = *rank;
      }
      return;
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  if (best.load() < slices) {
    result.feasible = true;
    result.assignment = RuleAssignment{best_witness};
    result.stats.assignments = best.load() * slice_size + best_rank + 1;
  } else {
    result.stats.assignments = total;
  }
  result.stats.elapsed_ns = elapsed_since(start);
  return result;
}

SolveResult solve_min_unanimous(const Instance& inst) {
  require_valid(inst);
  if (inst.model != Model::Min) throw UsageError("min_unanimous requires the min model");
  if (inst.alpha != inst.n) throw UsageError("min_unanimous requires alpha = n");
  const auto start = Clock::now();

  SolveResult result;
  result.method = Method::MinUnanimous;
  std::vector<std::size_t> chosen(inst.t);
  bool all_layers = true;
  for (std::size_t j = 0; j < inst.t && all_layers; ++j) {
    bool found = false;
    for (std::size_t k = 0; k < inst.ell && !found; ++k) {
      bool everyone = true;
      for (std::size_t i = 0; i < inst.n; ++i) {
        ++result.stats.sat_reads;
        if (inst.at(i, j, k) < inst.d) {
          everyone = false;
          break;
        }
      }
      if (everyone) {
        chosen[j] = k;
        found = true;
      }
    }
    all_layers = found;
  }
  if (all_layers) {
    result.feasible = true;
    result.assignment = RuleAssignment{std::move(chosen)};
  }
  result.stats.elapsed_ns = elapsed_since(start);
  return result;
}

SolveResult solve_min_subsets(const Instance& inst, const SolveOptions& opts) {
  require_valid(inst);
  if (inst.model != Model::Min) throw UsageError("min_subsets requires the min model");
  require_bitset_cap(inst, opts.min_subsets_cap, "min_subsets");
  const auto start = Clock::now();

  // ok[j * ell + k]: voters whose layer-j vote reaches d under rule k.
  std::vector<VoterBits> ok(inst.t * inst.ell, 0);
  for (std::size_t j = 0; j < inst.t; ++j) {
    for (std::size_t k = 0; k < inst.ell; ++k) {
      for (std::size_t i = 0; i < inst.n; ++i) {
        if (inst.at(i, j, k) >= inst.d) ok[j * inst.ell + k] |= VoterBits{1} << i;
      }
    }
  }

  SolveResult result;
  result.method = Method::MinSubsets;
  std::vector<std::size_t> chosen(inst.t);
  const bool found = for_each_subset_desc(inst.n, inst.alpha, result.stats.subsets,
                                          [&](VoterBits subset) {
    for (std::size_t j = 0; j < inst.t; ++j) {
      bool layer_ok = false;
      for (std::size_t k = 0; k < inst.ell; ++k) {
        if ((subset & ~ok[j * inst.ell + k]) == 0) {
          chosen[j] = k;
          layer_ok = true;
          break;
        }
      }
      if (!layer_ok) return false;
    }
    return true;
  });
  if (found) {
    result.feasible = true;
    result.assignment = RuleAssignment{std::move(chosen)};
  }
  result.stats.elapsed_ns = elapsed_since(start);
  return result;
}

namespace {

// One rule type per layer; x[j][type] is binary and exactly one per layer is set.
// Coverage is the ILP's second constraint family, checked incrementally.
class TypeSearch {
 public:
  TypeSearch(const Instance& inst, std::vector<std::vector<std::uint64_t>> masks,
             std::vector<std::vector<std::size_t>> reps, std::uint64_t& nodes)
      : inst_(inst), masks_(std::move(masks)), reps_(std::move(reps)), nodes_(nodes) {
    const std::size_t t = inst.t;
    reach_.assign(t + 1, 0);
    remaining_.assign((t + 1) * inst.n, 0);
    for (std::size_t j = t; j-- > 0;) {
      VoterBits any = 0;
      for (auto m : masks_[j]) any |= m;
      reach_[j] = reach_[j + 1] | any;
      for (std::size_t i = 0; i < inst.n; ++i) {
        remaining_[j * inst.n + i] = remaining_[(j + 1) * inst.n + i] + ((any >> i) & 1u);
      }
    }
  }

  std::optional<std::vector<std::size_t>> run(VoterBits target) {
    target_ = target;
    members_.clear();
    for (std::size_t i = 0; i < inst_.n; ++i) {
      if ((target >> i) & 1u) members_.push_back(i);
    }
    choice_.assign(inst_.t, 0);
    failed_.assign(inst_.t + 1, {});
    const bool ok = inst_.model == Model::Max ? run_max() : run_sum();
    if (!ok) return std::nullopt;
    return choice_;
  }

 private:
  bool run_max() {
    if ((target_ & ~reach_[0]) != 0) return false;
    return dfs_max(0, 0);
  }

  bool dfs_max(std::size_t j, VoterBits covered) {
    if ((target_ & ~covered) == 0) return finish(j);
    if (j == inst_.t) return false;
    const std::string key = std::to_string(covered & target_);
    if (failed_[j].contains(key)) return false;
    for (std::size_t ty = 0; ty < masks_[j].size(); ++ty) {
      const VoterBits next = covered | masks_[j][ty];
      if ((target_ & ~next & ~reach_[j + 1]) != 0) continue;
      ++nodes_;
      choice_[j] = reps_[j][ty];
      if (dfs_max(j + 1, next)) return true;
    }
    failed_[j].insert(key);
    return false;
  }

  bool run_sum() {
    std::vector<std::uint32_t> counts(members_.size(), 0);
    if (!reachable(0, counts)) return false;
    return dfs_sum(0, counts);
  }

  bool reachable(std::size_t j, const std::vector<std::uint32_t>& counts) const {
    for (std::size_t m = 0; m < members_.size(); ++m) {
      const auto best = static_cast<Satisfaction>(counts[m]) +
                        static_cast<Satisfaction>(remaining_[j * inst_.n + members_[m]]);
      if (best < inst_.d) return false;
    }
    return true;
  }

  bool dfs_sum(std::size_t j, std::vector<std::uint32_t>& counts) {
    const bool done = std::all_of(counts.begin(), counts.end(), [&](std::uint32_t c) {
      return static_cast<Satisfaction>(c) >= inst_.d;
    });
    if (done) return finish(j);
    if (j == inst_.t) return false;
    const std::string key(reinterpret_cast<const char*>(counts.data()),
                          counts.size() * sizeof(std::uint32_t));
    if (failed_[j].contains(key)) return false;
    for (std::size_t ty = 0; ty < masks_[j].size(); ++ty) {
      std::vector<std::uint32_t> next = counts;
      for (std::size_t m = 0; m < members_.size(); ++m) {
        if (((masks_[j][ty] >> members_[m]) & 1u) && static_cast<Satisfaction>(next[m]) < inst_.d) {
          ++next[m];
        }
      }
      if (!reachable(j + 1, next)) continue;
      ++nodes_;
      choice_[j] = reps_[j][ty];
      if (dfs_sum(j + 1, next)) return true;
    }
    failed_[j].insert(key);
    return false;
  }

  // Target already met: the remaining layers are free, take rule 0.
  bool finish(std::size_t j) {
    for (std::size_t rest = j; rest < inst_.t; ++rest) choice_[rest] = 0;
    return true;
  }

  const Instance& inst_;
  std::vector<std::vector<std::uint64_t>> masks_;
  std::vector<std::vector<std::size_t>> reps_;
  std::uint64_t& nodes_;
  std::vector<VoterBits> reach_;
  std::vector<std::uint32_t> remaining_;
  VoterBits target_ = 0;
  std::vector<std::size_t> members_;
  std::vector<std::size_t> choice_;
  std::vector<std::unordered_set<std::string>> failed_;
};

}  // namespace

SolveResult solve_subset_fpt(const Instance& inst, const SolveOptions& opts) {
  require_valid(inst);
  if (inst.model == Model::Min) throw UsageError("subset_fpt handles the sum and max models only");
  if (inst.model == Model::Sum && !is_dichotomous(inst)) {
    throw UsageError("subset_fpt needs a 0/1 tensor under the sum model; use the brute strategy");
  }
  require_bitset_cap(inst, opts.subset_fpt_cap, "subset_fpt");
  const auto start = Clock::now();

  SolveResult result;
  result.method = Method::SubsetFpt;

  std::vector<std::vector<std::uint64_t>> masks(inst.t);
  std::vector<std::vector<std::size_t>> reps(inst.t);
  for (std::size_t j = 0; j < inst.t; ++j) {
    const auto types = rule_types(inst, j);
    masks[j] = type_bits(types);
    for (const auto& type : types) reps[j].push_back(type.representative_rule);
    result.stats.rule_types += types.size();
  }

  TypeSearch search(inst, std::move(masks), std::move(reps), result.stats.assignments);
  std::optional<std::vector<std::size_t>> witness;
  for_each_subset_desc(inst.n, inst.alpha, result.stats.subsets, [&](VoterBits target) {
    witness = search.run(target);
    return witness.has_value();
  });
  if (witness) {
    result.feasible = true;
    result.assignment = RuleAssignment{std::move(*witness)};
  }
  result.stats.elapsed_ns = elapsed_since(start);
  return result;
}

Method choose_method(const Instance& inst, const SolveOptions& opts) {
  require_valid(inst);
  const std::uint64_t brute_cost = assignment_count(inst);
  const bool brute_ok = brute_cost <= opts.assignment_budget;
  const std::uint64_t per_subset = subset_cost(inst);

  auto pick = [&](Method subset_method, std::size_t cap) {
    const bool subset_ok = inst.n <= std::min(cap, kMaxBitsetVoters);
    if (subset_ok && (!brute_ok || per_subset < brute_cost)) return subset_method;
    if (brute_ok) return Method::Brute;
    std::ostringstream msg;
    msg << "no method fits the budgets: ell^t exceeds assignment budget "
        << opts.assignment_budget << " and n = " << inst.n << " exceeds "
        << to_string(subset_method) << " cap " << cap;
    throw ResourceError(msg.str());
  };

  switch (inst.model) {
    case Model::Min:
      if (inst.alpha == inst.n) return Method::MinUnanimous;
      return pick(Method::MinSubsets, opts.min_subsets_cap);
    case Model::Max:
      return pick(Method::SubsetFpt, opts.subset_fpt_cap);
    case Model::Sum:
      if (is_dichotomous(inst)) return pick(Method::SubsetFpt, opts.subset_fpt_cap);
      if (brute_ok) return Method::Brute;
      throw ResourceError("no method fits the budgets: general sum model needs brute force and "
                          "ell^t exceeds assignment budget " +
                          std::to_string(opts.assignment_budget));
  }
  return Method::Brute;
}

SolveResult solve(const Instance& inst, Strategy strategy, const SolveOptions& opts) {
  Method method;
  switch (strategy) {
    case Strategy::Auto: method = choose_method(inst, opts); break;
    case Strategy::Brute: method = Method::Brute; break;
    case Strategy::MinUnanimous: method = Method::MinUnanimous; break;
    case Strategy::MinSubsets: method = Method::MinSubsets; break;
    case Strategy::SubsetFpt: method = Method::SubsetFpt; break;
    default: method = Method::Brute;
  }
  switch (method) {
    case Method::Brute: return solve_brute(inst, opts);
    case Method::MinUnanimous: return solve_min_unanimous(inst);
    case Method::MinSubsets: return solve_min_subsets(inst, opts);
    case Method::SubsetFpt: return solve_subset_fpt(inst, opts);
  }
  return solve_brute(inst, opts);
}

}  // namespace mecsr
