#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mecsr/instance.hpp"

namespace mecsr {

enum class Method { Brute, MinUnanimous, MinSubsets, SubsetFpt };
enum class Strategy { Auto, Brute, MinUnanimous, MinSubsets, SubsetFpt };

std::string_view to_string(Method method);
std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view text);

struct SolveOptions {
  std::uint64_t assignment_budget = 100'000'000;
  std::size_t min_subsets_cap = 24;
  std::size_t subset_fpt_cap = 20;
  unsigned threads = 1;
};

/// Work counters. `assignments` counts complete assignments for the brute
/// scan (the lexicographic rank of the witness, or ell^t when none exists) and
/// search nodes for subset_fpt. `sat_reads` counts tensor cells inspected by
/// min_unanimous; it is not part of the serialized result.
struct SolveStats {
  std::uint64_t assignments = 0;
  std::uint64_t subsets = 0;
  std::uint64_t rule_types = 0;
  std::uint64_t sat_reads = 0;
  std::int64_t elapsed_ns = 0;
};

struct SolveResult {
  bool feasible = false;
  std::optional<RuleAssignment> assignment;
  Method method = Method::Brute;
  SolveStats stats;
};

/// Rules that satisfy exactly the same voters at one layer.
struct RuleType {
  std::size_t layer = 0;
  boost::dynamic_bitset<> mask;
  std::size_t representative_rule = 0;
  std::vector<std::size_t> members;
};

/// Partition of the rules at `layer` by satisfied-voter mask, ordered by
/// representative (the lowest member). Voter i is in a rule's mask when
/// sat >= d under Max/Min, and when sat >= 1 under Sum (its 0/1 contribution).
std::vector<RuleType> rule_types(const Instance& inst, std::size_t layer);

// Saturating ell^t.
std::uint64_t assignment_count(const Instance& inst);

SolveResult solve_brute(const Instance& inst, const SolveOptions& opts = {});
SolveResult solve_min_unanimous(const Instance& inst);
SolveResult solve_min_subsets(const Instance& inst, const SolveOptions& opts = {});
SolveResult solve_subset_fpt(const Instance& inst, const SolveOptions& opts = {});

/// Dispatches to the named method, or for Strategy::Auto to the cheapest
/// method whose preconditions and budgets hold.
SolveResult solve(const Instance& inst, Strategy strategy, const SolveOptions& opts = {});

// The method solve() would pick for Strategy::Auto; throws ResourceError when none fits.
Method choose_method(const Instance& inst, const SolveOptions& opts = {});

}  // namespace mecsr
