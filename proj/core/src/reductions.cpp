#include "mecsr/reductions.hpp"

#include <algorithm>
#include <set>

#include "mecsr/errors.hpp"
#include "mecsr/oracles.hpp"

namespace mecsr::reductions {

std::string_view to_string(Reduction r) {
  switch (r) {
    case Reduction::DominatingSet: return "dominating-set";
    case Reduction::DominatingSetTwoRules: return "dominating-set-two-rules";
    case Reduction::SetPacking: return "set-packing";
    case Reduction::Partition: return "partition";
    case Reduction::Sat3: return "3sat";
    case Reduction::MulticolorClique: return "multicolor-clique";
  }
  return "dominating-set";
}

std::optional<Reduction> parse_reduction(std::string_view text) {
  for (auto r : {Reduction::DominatingSet, Reduction::DominatingSetTwoRules, Reduction::SetPacking,
                 Reduction::Partition, Reduction::Sat3, Reduction::MulticolorClique}) {
    if (text == to_string(r)) return r;
  }
  return std::nullopt;
}

namespace {

Instance blank(std::size_t n, std::size_t t, std::size_t ell, Model model, Satisfaction d,
               std::size_t alpha) {
  Instance inst;
  inst.n = n;
  inst.t = t;
  inst.ell = ell;
  inst.model = model;
  inst.d = d;
  inst.alpha = alpha;
  inst.sat.assign(n * t * ell, 0);
  return inst;
}

Satisfaction& cell(Instance& inst, std::size_t i, std::size_t j, std::size_t k) {
  return inst.sat[(i * inst.t + j) * inst.ell + k];
}

// closed[u][v]: v is u or a neighbour of u.
std::vector<std::vector<bool>> closed_neighbourhoods(const Graph& g) {
  std::vector<std::vector<bool>> closed(g.n, std::vector<bool>(g.n, false));
  for (std::size_t v = 0; v < g.n; ++v) closed[v][v] = true;
  for (auto [u, v] : g.edges) {
    closed[u][v] = true;
    closed[v][u] = true;
  }
  return closed;
}

void require_k_in_range(std::size_t k, std::size_t hi, std::string_view what) {
  if (k < 1 || k > hi) {
    throw UsageError("k = " + std::to_string(k) + " outside [1, " + std::to_string(hi) + "] for " +
                     std::string(what));
  }
}

std::vector<std::size_t> distinct_rules(const RuleAssignment& a) {
  std::set<std::size_t> used(a.layers.begin(), a.layers.end());
  return {used.begin(), used.end()};
}

void require_checked(const std::string& failure, const RuleAssignment& witness,
                     Reduction kind) {
  if (failure.empty()) return;
  std::string msg = std::string(to_string(kind)) + " extraction failed its checker (" + failure +
                    "); witness [";
  for (std::size_t j = 0; j < witness.layers.size(); ++j) {
    if (j) msg += ",";
    msg += std::to_string(witness.layers[j]);
  }
  throw ConsistencyError(msg + "]");
}

template <typename T>
const T& source_as(const ReductionInput& input) {
  if (const T* s = std::get_if<T>(&input.source)) return *s;
  throw UsageError(std::string(to_string(input.kind)) + " reduction got the wrong source type");
}

}  // namespace

Instance from_dominating_set(const Graph& g, std::size_t k) {
  require_valid(g);
  require_k_in_range(k, g.n, "dominating set");
  const auto closed = closed_neighbourhoods(g);
  Instance inst = blank(g.n, k, g.n, Model::Sum, 1, g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t r = 0; r < g.n; ++r) cell(inst, i, j, r) = closed[r][i] ? 1 : 0;
    }
  }
  return inst;
}

Instance from_dominating_set_two_rules(const Graph& g, std::size_t k) {
  require_valid(g);
  require_k_in_range(k, g.n, "dominating set");
  const std::size_t m = g.n;
  const auto closed = closed_neighbourhoods(g);
  Instance inst = blank(m + 1, 2 * m, 2, Model::Sum, static_cast<Satisfaction>(m), m + 1);
  const std::size_t extra = m;  // the additional voter

  // Vertex layers: r1 rewards the closed neighbourhood of v_j, r2 only the extra voter.
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) cell(inst, i, j, 0) = closed[j][i] ? 1 : 0;
    cell(inst, extra, j, 1) = 1;
  }
  // Filler layers m .. 2m-2: rule-independent; the extra voter gains only in the first k.
  for (std::size_t j = m; j + 1 < 2 * m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      cell(inst, i, j, 0) = 1;
      cell(inst, i, j, 1) = 1;
    }
    const Satisfaction bonus = j < m + k ? 1 : 0;
    cell(inst, extra, j, 0) = bonus;
    cell(inst, extra, j, 1) = bonus;
  }
  // Layer 2m-1 stays all zero.
  return inst;
}

Instance from_set_packing(const TripleSystem& ts, std::size_t k) {
  require_valid(ts);
  require_k_in_range(k, ts.triples.size(), "set packing");
  const std::size_t n = std::max(ts.m, 3 * k);
  Instance inst = blank(n, k, ts.triples.size(), Model::Sum, 1, 3 * k);
  for (std::size_t s = 0; s < ts.triples.size(); ++s) {
    for (std::size_t x : ts.triples[s]) {
      for (std::size_t j = 0; j < k; ++j) cell(inst, x, j, s) = 1;
    }
  }
  return inst;
}

Instance from_partition(const ValueMultiset& vals, bool force) {
  require_valid(vals);
  if (vals.values.empty()) throw UsageError("partition needs at least one value");
  Satisfaction total = 0;
  for (auto v : vals.values) {
    if (v > kSatisfactionLimit - total) throw UsageError("partition total exceeds 2^62");
    total += v;
  }
  if (total == 0) throw UsageError("partition needs a positive total");
  if (total % 2 != 0 && !force) {
    throw RefusalError("partition total " + std::to_string(total) +
                       " is odd; no equal split exists (pass force to build anyway)");
  }
  const std::size_t t = vals.values.size();
  Instance inst = blank(2, t, 2, Model::Sum, (total + 1) / 2, 2);
  for (std::size_t j = 0; j < t; ++j) {
    cell(inst, 0, j, 0) = vals.values[j];
    cell(inst, 1, j, 1) = vals.values[j];
  }
  return inst;
}

Instance from_3sat(const Cnf3& f) {
  require_valid(f);
  if (f.clauses.empty()) throw UsageError("3sat reduction needs at least one clause");
  Instance inst = blank(f.clauses.size(), f.vars, 2, Model::Max, 1, f.clauses.size());
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    for (int lit : f.clauses[i]) {
      const auto j = static_cast<std::size_t>(lit > 0 ? lit : -lit) - 1;
      cell(inst, i, j, lit > 0 ? 0 : 1) = 1;
    }
  }
  return inst;
}

std::size_t clique_voter_index(std::size_t color, std::size_t position, std::size_t q) {
  return q * color + position;
}

Instance from_multicolor_clique(const ColoredGraph& g, std::size_t k) {
  require_valid(g);
  if (k != g.k) {
    throw UsageError("k = " + std::to_string(k) + " must equal the color count " +
                     std::to_string(g.k));
  }
  const auto closed = closed_neighbourhoods(g.graph);
  const auto classes = color_classes(g);
  Instance inst = blank(g.q * k, k, g.q, Model::Min, 1, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t pos = 0; pos < g.q; ++pos) {
      const std::size_t voter = clique_voter_index(i, pos, g.q);
      const std::size_t u = classes[i][pos];
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t r = 0; r < g.q; ++r) {
          cell(inst, voter, j, r) = closed[classes[j][r]][u] ? 1 : 0;
        }
      }
    }
  }
  return inst;
}

Instance generate(const ReductionInput& input) {
  switch (input.kind) {
    case Reduction::DominatingSet:
      return from_dominating_set(source_as<Graph>(input), input.k);
    case Reduction::DominatingSetTwoRules:
      return from_dominating_set_two_rules(source_as<Graph>(input), input.k);
    case Reduction::SetPacking:
      return from_set_packing(source_as<TripleSystem>(input), input.k);
    case Reduction::Partition:
      return from_partition(source_as<ValueMultiset>(input), input.force);
    case Reduction::Sat3:
      return from_3sat(source_as<Cnf3>(input));
    case Reduction::MulticolorClique:
      return from_multicolor_clique(source_as<ColoredGraph>(input), input.k);
  }
  throw UsageError("unknown reduction");
}

Extraction extract(const ReductionInput& input, const Instance& inst, const RuleAssignment& witness) {
  if (generate(input) != inst) {
    throw UsageError(std::string(to_string(input.kind)) +
                     " extraction: instance does not match the regenerated construction");
  }
  if (!evaluate(inst, witness).feasible) {
    throw UsageError("extraction needs a feasible witness");
  }

  switch (input.kind) {
    case Reduction::DominatingSet: {
      VertexSet s{distinct_rules(witness)};
      require_checked(oracles::check_dominating_set(source_as<Graph>(input), input.k, s), witness,
                      input.kind);
      return s;
    }
    case Reduction::DominatingSetTwoRules: {
      const auto& g = source_as<Graph>(input);
      VertexSet s;
      for (std::size_t j = 0; j < g.n; ++j) {
        if (witness.layers[j] == 0) s.vertices.push_back(j);
      }
      require_checked(oracles::check_dominating_set(g, input.k, s), witness, input.kind);
      return s;
    }
    case Reduction::SetPacking: {
      TripleSubset s{distinct_rules(witness)};
      require_checked(oracles::check_set_packing(source_as<TripleSystem>(input), input.k, s),
                      witness, input.kind);
      return s;
    }
    case Reduction::Partition: {
      Bipartition b;
      for (std::size_t j = 0; j < witness.layers.size(); ++j) {
        (witness.layers[j] == 0 ? b.first : b.second).push_back(j);
      }
      require_checked(oracles::check_partition(source_as<ValueMultiset>(input), b), witness,
                      input.kind);
      return b;
    }
    case Reduction::Sat3: {
      TruthAssignment a;
      for (std::size_t rule : witness.layers) a.values.push_back(rule == 0);
      require_checked(oracles::check_sat3(source_as<Cnf3>(input), a), witness, input.kind);
      return a;
    }
    case Reduction::MulticolorClique: {
      const auto& g = source_as<ColoredGraph>(input);
      const auto classes = color_classes(g);
      VertexSet s;
      for (std::size_t j = 0; j < witness.layers.size(); ++j) {
        s.vertices.push_back(classes[j][witness.layers[j]]);
      }
      require_checked(oracles::check_multicolor_clique(g, input.k, s), witness, input.kind);
      return s;
    }
  }
  throw UsageError("unknown reduction");
}

}  // namespace mecsr::reductions
