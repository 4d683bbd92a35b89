#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "mecsr/sources.hpp"

// Naive exhaustive solvers and solution checkers for the source problems.
// Nothing here shares search code with solvers.hpp. Size caps throw ResourceError.
namespace mecsr::oracles {

struct Verdict {
  bool solvable = false;
  std::optional<Extraction> witness;
};

inline constexpr std::size_t kDominatingSetMaxVertices = 20;
inline constexpr std::size_t kSetPackingMaxTriples = 20;
inline constexpr std::size_t kPartitionMaxValues = 30;
inline constexpr std::size_t kSatMaxVariables = 24;
inline constexpr std::uint64_t kCliqueMaxTuples = 10'000'000;

// Smallest, then lexicographically first, dominating set of size <= k.
Verdict dominating_set(const Graph& g, std::size_t k);

// Lexicographically first k pairwise-disjoint triples.
Verdict set_packing(const TripleSystem& ts, std::size_t k);

// Equal-sum split; odd totals are simply unsolvable.
Verdict partition(const ValueMultiset& vals);

// Lexicographically first satisfying assignment, false < true, x1 most significant.
Verdict sat3(const Cnf3& f);

// One vertex per color, pairwise adjacent; tuples scanned in lexicographic order.
Verdict multicolor_clique(const ColoredGraph& g, std::size_t k);

// Checkers return an empty string on success, otherwise the reason for rejection.
std::string check_dominating_set(const Graph& g, std::size_t k, const VertexSet& s);
std::string check_set_packing(const TripleSystem& ts, std::size_t k, const TripleSubset& s);
std::string check_partition(const ValueMultiset& vals, const Bipartition& b);
std::string check_sat3(const Cnf3& f, const TruthAssignment& a);
std::string check_multicolor_clique(const ColoredGraph& g, std::size_t k, const VertexSet& s);

}  // namespace mecsr::oracles
