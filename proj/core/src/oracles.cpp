#include "mecsr/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <unordered_map>

#include "mecsr/errors.hpp"

namespace mecsr::oracles {

namespace {

std::vector<std::vector<bool>> adjacency(const Graph& g) {
  std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
  for (auto [u, v] : g.edges) {
    adj[u][v] = true;
    adj[v][u] = true;
  }
  return adj;
}

// Calls visit(indices) for every size-`size` subset of [0, n) in lexicographic
// order until it returns true.
template <typename Visit>
bool combinations(std::size_t n, std::size_t size, Visit&& visit) {
  if (size > n) return false;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
  std::vector<std::size_t> chosen;
  do {
    chosen.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) chosen.push_back(i);
    }
    if (visit(chosen)) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

bool literal_true(int lit, const std::vector<bool>& values) {
  const bool v = values[static_cast<std::size_t>(std::abs(lit)) - 1];
  return lit > 0 ? v : !v;
}

}  // namespace

Verdict dominating_set(const Graph& g, std::size_t k) {
  require_valid(g);
  if (g.n > kDominatingSetMaxVertices) {
    throw ResourceError("dominating_set oracle handles at most " +
                        std::to_string(kDominatingSetMaxVertices) + " vertices");
  }
  const auto adj = adjacency(g);
  Verdict verdict;
  for (std::size_t size = 0; size <= std::min(k, g.n) && !verdict.solvable; ++size) {
    combinations(g.n, size, [&](const std::vector<std::size_t>& chosen) {
      for (std::size_t v = 0; v < g.n; ++v) {
        const bool dominated = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
          return c == v || adj[c][v];
        });
        if (!dominated) return false;
      }
      verdict.solvable = true;
      verdict.witness = VertexSet{chosen};
      return true;
    });
  }
  return verdict;
}

Verdict set_packing(const TripleSystem& ts, std::size_t k) {
  require_valid(ts);
  if (ts.triples.size() > kSetPackingMaxTriples) {
    throw ResourceError("set_packing oracle handles at most " +
                        std::to_string(kSetPackingMaxTriples) + " triples");
  }
  Verdict verdict;
  combinations(ts.triples.size(), k, [&](const std::vector<std::size_t>& chosen) {
    std::vector<bool> used(ts.m, false);
    for (std::size_t s : chosen) {
      for (std::size_t x : ts.triples[s]) {
        if (used[x]) return false;
        used[x] = true;
      }
    }
    verdict.solvable = true;
    verdict.witness = TripleSubset{chosen};
    return true;
  });
  return verdict;
}

Verdict partition(const ValueMultiset& vals) {
  require_valid(vals);
  const std::size_t n = vals.values.size();
  if (n > kPartitionMaxValues) {
    throw ResourceError("partition oracle handles at most " +
                        std::to_string(kPartitionMaxValues) + " values");
  }
  std::int64_t total = 0;
  for (auto v : vals.values) {
    if (v > std::numeric_limits<std::int64_t>::max() - total) {
      throw UsageError("partition values overflow a 64-bit total");
    }
    total += v;
  }
  Verdict verdict;
  if (total % 2 != 0) return verdict;
  const std::int64_t half = total / 2;

  // Meet in the middle: left half by first mask reaching each sum.
  const std::size_t left = n / 2;
  const std::size_t right = n - left;
  std::unordered_map<std::int64_t, std::uint64_t> left_sums;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << left); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < left; ++i) {
      if ((mask >> i) & 1u) s += vals.values[i];
    }
    left_sums.emplace(s, mask);
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << right); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < right; ++i) {
      if ((mask >> i) & 1u) s += vals.values[left + i];
    }
    auto it = left_sums.find(half - s);
    if (it == left_sums.end()) continue;
    Bipartition b;
    for (std::size_t i = 0; i < n; ++i) {
      const bool in_first = i < left ? ((it->second >> i) & 1u) : ((mask >> (i - left)) & 1u);
      (in_first ? b.first : b.second).push_back(i);
    }
    verdict.solvable = true;
    verdict.witness = std::move(b);
    return verdict;
  }
  return verdict;
}

Verdict sat3(const Cnf3& f) {
  require_valid(f);
  if (f.vars > kSatMaxVariables) {
    throw ResourceError("sat3 oracle handles at most " + std::to_string(kSatMaxVariables) +
                        " variables");
  }
  Verdict verdict;
  std::vector<bool> values(f.vars);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << f.vars); ++code) {
    for (std::size_t j = 0; j < f.vars; ++j) values[j] = (code >> (f.vars - 1 - j)) & 1u;
    const bool all = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause3& c) {
      return literal_true(c[0], values) || literal_true(c[1], values) ||
             literal_true(c[2], values);
    });
    if (all) {
      verdict.solvable = true;
      verdict.witness = TruthAssignment{values};
      return verdict;
    }
  }
  return verdict;
}

Verdict multicolor_clique(const ColoredGraph& g, std::size_t k) {
  require_valid(g);
  if (k != g.k) {
    throw UsageError("clique size " + std::to_string(k) + " must equal the color count " +
                     std::to_string(g.k));
  }
  std::uint64_t tuples = 1;
  for (std::size_t c = 0; c < g.k; ++c) {
    tuples *= g.q;
    if (tuples > kCliqueMaxTuples) {
      throw ResourceError("multicolor_clique oracle handles at most " +
                          std::to_string(kCliqueMaxTuples) + " tuples");
    }
  }
  const auto adj = adjacency(g.graph);
  const auto classes = color_classes(g);
  std::vector<std::size_t> pos(g.k, 0);
  Verdict verdict;
  while (true) {
    bool clique = true;
    for (std::size_t a = 0; a < g.k && clique; ++a) {
      for (std::size_t b = a + 1; b < g.k && clique; ++b) {
        clique = adj[classes[a][pos[a]]][classes[b][pos[b]]];
      }
    }
    if (clique) {
      VertexSet s;
      for (std::size_t c = 0; c < g.k; ++c) s.vertices.push_back(classes[c][pos[c]]);
      verdict.solvable = true;
      verdict.witness = std::move(s);
      return verdict;
    }
    std::size_t c = g.k;
    while (c > 0) {
      --c;
      if (++pos[c] < g.q) break;
      pos[c] = 0;
      if (c == 0) return verdict;
    }
  }
}

std::string check_dominating_set(const Graph& g, std::size_t k, const VertexSet& s) {
  if (s.vertices.size() > k) {
    return "dominating set has " + std::to_string(s.vertices.size()) + " vertices, limit " +
           std::to_string(k);
  }
  std::vector<bool> dominated(g.n, false);
  std::set<std::size_t> distinct;
  for (std::size_t v : s.vertices) {
    if (v >= g.n) return "vertex " + std::to_string(v) + " out of range";
    if (!distinct.insert(v).second) return "vertex " + std::to_string(v) + " listed twice";
    dominated[v] = true;
  }
  for (auto [u, v] : g.edges) {
    if (distinct.contains(u)) dominated[v] = true;
    if (distinct.contains(v)) dominated[u] = true;
  }
  for (std::size_t v = 0; v < g.n; ++v) {
    if (!dominated[v]) return "vertex " + std::to_string(v) + " is not dominated";
  }
  return {};
}

std::string check_set_packing(const TripleSystem& ts, std::size_t k, const TripleSubset& s) {
  if (s.triples.size() != k) {
    return "packing has " + std::to_string(s.triples.size()) + " triples, expected " +
           std::to_string(k);
  }
  std::set<std::size_t> elements;
  std::set<std::size_t> distinct;
  for (std::size_t idx : s.triples) {
    if (idx >= ts.triples.size()) return "triple index " + std::to_string(idx) + " out of range";
    if (!distinct.insert(idx).second) return "triple " + std::to_string(idx) + " used twice";
    for (std::size_t x : ts.triples[idx]) {
      if (!elements.insert(x).second) {
        return "element " + std::to_string(x) + " covered by two chosen triples";
      }
    }
  }
  return {};
}

std::string check_partition(const ValueMultiset& vals, const Bipartition& b) {
  std::vector<int> side(vals.values.size(), 0);
  std::int64_t sums[2] = {0, 0};
  const std::vector<std::size_t>* parts[2] = {&b.first, &b.second};
  for (int p = 0; p < 2; ++p) {
    for (std::size_t idx : *parts[p]) {
      if (idx >= vals.values.size()) return "element " + std::to_string(idx) + " out of range";
      if (side[idx] != 0) return "element " + std::to_string(idx) + " placed twice";
      side[idx] = p + 1;
      sums[p] += vals.values[idx];
    }
  }
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (side[i] == 0) return "element " + std::to_string(i) + " not placed";
  }
  if (sums[0] != sums[1]) {
    return "sides sum to " + std::to_string(sums[0]) + " and " + std::to_string(sums[1]);
  }
  return {};
}

std::string check_sat3(const Cnf3& f, const TruthAssignment& a) {
  if (a.values.size() != f.vars) {
    return "assignment has " + std::to_string(a.values.size()) + " values for " +
           std::to_string(f.vars) + " variables";
  }
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    bool sat = false;
    for (int lit : f.clauses[c]) {
      const auto var = static_cast<std::size_t>(std::abs(lit));
      if (var == 0 || var > f.vars) return "clause " + std::to_string(c) + " has a bad literal";
      sat = sat || literal_true(lit, a.values);
    }
    if (!sat) return "clause " + std::to_string(c) + " is false";
  }
  return {};
}

std::string check_multicolor_clique(const ColoredGraph& g, std::size_t k, const VertexSet& s) {
  if (s.vertices.size() != k) {
    return "clique has " + std::to_string(s.vertices.size()) + " vertices, expected " +
           std::to_string(k);
  }
  std::set<std::size_t> colors;
  for (std::size_t v : s.vertices) {
    if (v >= g.graph.n || v >= g.color.size()) return "vertex " + std::to_string(v) + " out of range";
    if (!colors.insert(g.color[v]).second) {
      return "color " + std::to_string(g.color[v]) + " used twice";
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (auto [u, v] : g.graph.edges) edges.insert(std::minmax(u, v));
  for (std::size_t a = 0; a < s.vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < s.vertices.size(); ++b) {
      if (!edges.contains(std::minmax(s.vertices[a], s.vertices[b]))) {
        return "vertices " + std::to_string(s.vertices[a]) + " and " +
               std::to_string(s.vertices[b]) + " are not adjacent";
      }
    }
  }
  return {};
}

}  // namespace mecsr::oracles
