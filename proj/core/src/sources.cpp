#include "mecsr/sources.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "mecsr/errors.hpp"

namespace mecsr {

void require_valid(const Graph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : g.edges) {
    if (u >= g.n || v >= g.n) {
      throw UsageError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references a vertex outside [0, " + std::to_string(g.n) + ")");
    }
    if (u == v) throw UsageError("self-loop at vertex " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw UsageError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
  }
}

void require_valid(const ColoredGraph& g) {
  require_valid(g.graph);
  if (g.k == 0 || g.q == 0) throw UsageError("colored graph needs k >= 1 and q >= 1");
  if (g.color.size() != g.graph.n) {
    throw UsageError("color map has " + std::to_string(g.color.size()) + " entries for " +
                     std::to_string(g.graph.n) + " vertices");
  }
  if (g.graph.n != g.k * g.q) {
    throw UsageError("expected k*q = " + std::to_string(g.k * g.q) + " vertices, found " +
                     std::to_string(g.graph.n));
  }
  std::vector<std::size_t> class_size(g.k, 0);
  for (std::size_t v = 0; v < g.color.size(); ++v) {
    if (g.color[v] >= g.k) {
      throw UsageError("vertex " + std::to_string(v) + " has color " + std::to_string(g.color[v]) +
                       " outside [0, " + std::to_string(g.k) + ")");
    }
    ++class_size[g.color[v]];
  }
  for (std::size_t c = 0; c < g.k; ++c) {
    if (class_size[c] != g.q) {
      throw UsageError("color " + std::to_string(c) + " has " + std::to_string(class_size[c]) +
                       " vertices, expected q = " + std::to_string(g.q));
    }
  }
  for (auto [u, v] : g.graph.edges) {
    if (g.color[u] == g.color[v]) {
      throw UsageError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") joins two vertices of color " + std::to_string(g.color[u]));
    }
  }
}

void require_valid(const Cnf3& f) {
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    for (int lit : f.clauses[c]) {
      const auto var = static_cast<std::size_t>(std::abs(lit));
      if (lit == 0 || var > f.vars) {
        throw UsageError("clause " + std::to_string(c) + " has literal " + std::to_string(lit) +
                         " outside +-[1, " + std::to_string(f.vars) + "]");
      }
    }
  }
}

void require_valid(const TripleSystem& ts) {
  for (std::size_t s = 0; s < ts.triples.size(); ++s) {
    const auto& tr = ts.triples[s];
    for (std::size_t x : tr) {
      if (x >= ts.m) {
        throw UsageError("triple " + std::to_string(s) + " has element " + std::to_string(x) +
                         " outside [0, " + std::to_string(ts.m) + ")");
      }
    }
    if (tr[0] == tr[1] || tr[0] == tr[2] || tr[1] == tr[2]) {
      throw UsageError("triple " + std::to_string(s) + " repeats an element");
    }
  }
}

void require_valid(const ValueMultiset& vals) {
  for (std::size_t i = 0; i < vals.values.size(); ++i) {
    if (vals.values[i] < 0) {
      throw UsageError("value " + std::to_string(i) + " is negative");
    }
  }
}

void require_valid(const SourceInstance& source) {
  std::visit([](const auto& s) { require_valid(s); }, source);
}

std::vector<std::vector<std::size_t>> color_classes(const ColoredGraph& g) {
  std::vector<std::vector<std::size_t>> classes(g.k);
  for (std::size_t v = 0; v < g.color.size(); ++v) {
    if (g.color[v] < g.k) classes[g.color[v]].push_back(v);
  }
  return classes;
}

}  // namespace mecsr
