#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace mecsr {

/// Simple undirected graph on vertices [0, n).
struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  friend bool operator==(const Graph&, const Graph&) = default;
};

/// Graph whose vertices carry one of k colors, q vertices per color, with no
/// edge inside a color class. The i'-th vertex of color i is the i'-th
/// smallest vertex id with color[v] == i.
struct ColoredGraph {
  Graph graph;
  std::size_t k = 0;
  std::size_t q = 0;
  std::vector<std::size_t> color;

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;
};

// Literals are 1-based variable numbers, negative when negated.
using Clause3 = std::array<int, 3>;

struct Cnf3 {
  std::size_t vars = 0;
  std::vector<Clause3> clauses;

  friend bool operator==(const Cnf3&, const Cnf3&) = default;
};

using Triple = std::array<std::size_t, 3>;

// Triples over the universe [0, m).
struct TripleSystem {
  std::size_t m = 0;
  std::vector<Triple> triples;

  friend bool operator==(const TripleSystem&, const TripleSystem&) = default;
};

struct ValueMultiset {
  std::vector<std::int64_t> values;

  friend bool operator==(const ValueMultiset&, const ValueMultiset&) = default;
};

using SourceInstance = std::variant<Graph, ColoredGraph, Cnf3, TripleSystem, ValueMultiset>;

// Each throws UsageError describing the first broken invariant.
void require_valid(const Graph& g);
void require_valid(const ColoredGraph& g);
void require_valid(const Cnf3& f);
void require_valid(const TripleSystem& ts);
void require_valid(const ValueMultiset& vals);
void require_valid(const SourceInstance& source);

/// Vertex ids of each color class in ascending order: classes[color][position].
std::vector<std::vector<std::size_t>> color_classes(const ColoredGraph& g);

// Extraction payloads, shared by the reductions and the oracles.
struct VertexSet {
  std::vector<std::size_t> vertices;
  friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

// values[j] is the value of variable j + 1.
struct TruthAssignment {
  std::vector<bool> values;
  friend bool operator==(const TruthAssignment&, const TruthAssignment&) = default;
};

// Element indices on each side.
struct Bipartition {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

// Indices into TripleSystem::triples.
struct TripleSubset {
  std::vector<std::size_t> triples;
  friend bool operator==(const TripleSubset&, const TripleSubset&) = default;
};

using Extraction = std::variant<VertexSet, TruthAssignment, Bipartition, TripleSubset>;

}  // namespace mecsr
