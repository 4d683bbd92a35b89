#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "mecsr/instance.hpp"
#include "mecsr/sources.hpp"

// Instance generators built from the hardness constructions, each paired with
// an extractor that maps a feasible rule assignment back to a source solution.
namespace mecsr::reductions {

enum class Reduction {
  DominatingSet,          // graph, k      -> sum model, t = k, ell = |V|
  DominatingSetTwoRules,  // graph, k      -> sum model, ell = 2, t = 2|V|
  SetPacking,             // triples, k    -> sum model, t = k, alpha = 3k
  Partition,              // values        -> sum model, n = 2, ell = 2
  Sat3,                   // 3-CNF         -> max model, ell = 2
  MulticolorClique,       // colored graph -> min model, t = k, ell = q
};

std::string_view to_string(Reduction r);
std::optional<Reduction> parse_reduction(std::string_view text);

Instance from_dominating_set(const Graph& g, std::size_t k);

/// Two-rule construction with m+1 voters and 2m layers. Built literally,
/// including the all-zero last layer; it is known not to be equivalent to
/// dominating set on every input (e.g. edgeless graphs with k = m).
Instance from_dominating_set_two_rules(const Graph& g, std::size_t k);

/// Voter per element, rule per triple, k layers, alpha = 3k. When 3k exceeds
/// the universe size, never-satisfiable padding voters are appended so that
/// alpha <= n still holds.
Instance from_set_packing(const TripleSystem& ts, std::size_t k);

/// d = ceil(total / 2). Odd totals throw RefusalError unless `force`; the
/// forced instance is infeasible because both voters need more than half.
Instance from_partition(const ValueMultiset& vals, bool force = false);

Instance from_3sat(const Cnf3& f);

/// Voter for vertex (color i, position i') sits at index q*i + i' (0-based).
Instance from_multicolor_clique(const ColoredGraph& g, std::size_t k);

std::size_t clique_voter_index(std::size_t color, std::size_t position, std::size_t q);

/// Everything needed to regenerate an instance and extract from its witnesses.
struct ReductionInput {
  Reduction kind = Reduction::DominatingSet;
  SourceInstance source;
  std::size_t k = 0;   // ignored by Partition and Sat3
  bool force = false;  // Partition only
};

Instance generate(const ReductionInput& input);

/// Maps a feasible witness of `inst` back to a source solution and checks it
/// with the matching oracle checker. Throws UsageError if the witness is not
/// feasible for `inst`, ConsistencyError if the extracted solution fails the check.
Extraction extract(const ReductionInput& input, const Instance& inst, const RuleAssignment& witness);

}  // namespace mecsr::reductions
