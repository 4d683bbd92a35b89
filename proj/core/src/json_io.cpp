#include "mecsr/json_io.hpp"

#include <algorithm>

#include "mecsr/errors.hpp"

namespace mecsr::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ParseError(path + ": " + message);
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      fail(path, "integer out of range");
    }
    return static_cast<std::int64_t>(u);
  }
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::size_t as_count(const Json& v, const std::string& path) {
  const auto x = as_int(v, path);
  if (x < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

const Json& as_array(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::vector<std::size_t> count_list(const Json& v, const std::string& path) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < as_array(v, path).size(); ++i) out.push_back(as_count(v[i], at_index(path, i)));
  return out;
}

Graph graph_from_json(const Json& doc) {
  Graph g;
  g.n = as_count(field(doc, "n", "$"), "$.n");
  const auto& edges = as_array(field(doc, "edges", "$"), "$.edges");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto path = at_index("$.edges", e);
    const auto ends = count_list(edges[e], path);
    if (ends.size() != 2) fail(path, "an edge needs exactly two endpoints");
    g.edges.emplace_back(ends[0], ends[1]);
  }
  return g;
}

Json graph_json(const Graph& g) {
  Json doc;
  doc["n"] = g.n;
  Json edges = Json::array();
  for (auto [u, v] : g.edges) edges.push_back(Json::array({u, v}));
  doc["edges"] = std::move(edges);
  return doc;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Graph: return "graph";
    case SourceKind::ColoredGraph: return "colored-graph";
    case SourceKind::Cnf: return "cnf";
    case SourceKind::Triples: return "triples";
    case SourceKind::Values: return "values";
  }
  return "graph";
}

std::optional<SourceKind> parse_source_kind(std::string_view text) {
  for (auto k : {SourceKind::Graph, SourceKind::ColoredGraph, SourceKind::Cnf, SourceKind::Triples,
                 SourceKind::Values}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

SourceKind kind_of(const SourceInstance& source) {
  return static_cast<SourceKind>(source.index());
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points at the offending character.
    const std::size_t byte = e.byte;
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + " (byte " + std::to_string(byte) + ")",
                     line, column, byte);
  }
}

std::string dump(const Json& doc) { return doc.dump() + "\n"; }

Json to_json(const Instance& inst) {
  Json doc;
  doc["n"] = inst.n;
  doc["t"] = inst.t;
  doc["ell"] = inst.ell;
  doc["model"] = std::string(to_string(inst.model));
  doc["d"] = inst.d;
  doc["alpha"] = inst.alpha;
  Json sat = Json::array();
  for (std::size_t i = 0; i < inst.n; ++i) {
    Json voter = Json::array();
    for (std::size_t j = 0; j < inst.t; ++j) {
      Json layer = Json::array();
      for (std::size_t k = 0; k < inst.ell; ++k) layer.push_back(inst.at(i, j, k));
      voter.push_back(std::move(layer));
    }
    sat.push_back(std::move(voter));
  }
  doc["sat"] = std::move(sat);
  return doc;
}

Instance instance_from_json(const Json& doc) {
  Instance inst;
  inst.n = as_count(field(doc, "n", "$"), "$.n");
  inst.t = as_count(field(doc, "t", "$"), "$.t");
  inst.ell = as_count(field(doc, "ell", "$"), "$.ell");
  const auto& model = field(doc, "model", "$");
  if (!model.is_string()) fail("$.model", "expected a string");
  const auto parsed = parse_model(model.get<std::string>());
  if (!parsed) fail("$.model", "expected \"sum\", \"max\" or \"min\"");
  inst.model = *parsed;
  inst.d = as_int(field(doc, "d", "$"), "$.d");
  inst.alpha = as_count(field(doc, "alpha", "$"), "$.alpha");

  // Ragged nesting is a parse error; a consistent but mis-sized tensor is
  // left for validate() to report.
  const auto& sat = as_array(field(doc, "sat", "$"), "$.sat");
  std::size_t layers = 0;
  std::size_t rules = 0;
  bool first = true;
  for (std::size_t i = 0; i < sat.size(); ++i) {
    const auto vpath = at_index("$.sat", i);
    const auto& voter = as_array(sat[i], vpath);
    if (first) layers = voter.size();
    if (voter.size() != layers) fail(vpath, "ragged tensor: layer count differs between voters");
    for (std::size_t j = 0; j < voter.size(); ++j) {
      const auto lpath = at_index(vpath, j);
      const auto& layer = as_array(voter[j], lpath);
      if (first) {
        rules = layer.size();
        first = false;
      }
      if (layer.size() != rules) fail(lpath, "ragged tensor: rule count differs between layers");
      for (std::size_t k = 0; k < layer.size(); ++k) {
        inst.sat.push_back(as_int(layer[k], at_index(lpath, k)));
      }
    }
    first = false;
  }
  return inst;
}

std::string write_instance(const Instance& inst) { return dump(to_json(inst)); }

Instance read_instance(std::string_view text) { return instance_from_json(parse_document(text)); }

Json to_json(const RuleAssignment& a) {
  Json arr = Json::array();
  for (auto r : a.layers) arr.push_back(r);
  return arr;
}

Json to_json(const SolveResult& result) {
  Json doc;
  doc["feasible"] = result.feasible;
  doc["assignment"] = result.assignment ? to_json(*result.assignment) : Json(nullptr);
  doc["method"] = std::string(to_string(result.method));
  Json stats;
  stats["assignments"] = result.stats.assignments;
  stats["subsets"] = result.stats.subsets;
  stats["rule_types"] = result.stats.rule_types;
  stats["elapsed_ns"] = result.stats.elapsed_ns;
  doc["stats"] = std::move(stats);
  return doc;
}

SolveResult solve_result_from_json(const Json& doc) {
  SolveResult result;
  const auto& feasible = field(doc, "feasible", "$");
  if (!feasible.is_boolean()) fail("$.feasible", "expected a boolean");
  result.feasible = feasible.get<bool>();
  const auto& assignment = field(doc, "assignment", "$");
  if (!assignment.is_null()) result.assignment = RuleAssignment{count_list(assignment, "$.assignment")};
  const auto& method = field(doc, "method", "$");
  if (!method.is_string()) fail("$.method", "expected a string");
  const auto name = method.get<std::string>();
  bool known = false;
  for (auto m : {Method::Brute, Method::MinUnanimous, Method::MinSubsets, Method::SubsetFpt}) {
    if (name == to_string(m)) {
      result.method = m;
      known = true;
    }
  }
  if (!known) fail("$.method", "unknown method \"" + name + "\"");
  const auto& stats = field(doc, "stats", "$");
  result.stats.assignments = as_count(field(stats, "assignments", "$.stats"), "$.stats.assignments");
  result.stats.subsets = as_count(field(stats, "subsets", "$.stats"), "$.stats.subsets");
  result.stats.rule_types = as_count(field(stats, "rule_types", "$.stats"), "$.stats.rule_types");
  result.stats.elapsed_ns = as_int(field(stats, "elapsed_ns", "$.stats"), "$.stats.elapsed_ns");
  return result;
}

std::string write_solve_result(const SolveResult& result) { return dump(to_json(result)); }

Json to_json(const SourceInstance& source) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Graph>) {
          return graph_json(s);
        } else if constexpr (std::is_same_v<T, ColoredGraph>) {
          Json doc = graph_json(s.graph);
          doc["k"] = s.k;
          doc["q"] = s.q;
          doc["color"] = s.color;
          return doc;
        } else if constexpr (std::is_same_v<T, Cnf3>) {
          Json doc;
          doc["vars"] = s.vars;
          Json clauses = Json::array();
          for (const auto& c : s.clauses) clauses.push_back(Json::array({c[0], c[1], c[2]}));
          doc["clauses"] = std::move(clauses);
          return doc;
        } else if constexpr (std::is_same_v<T, TripleSystem>) {
          Json doc;
          doc["m"] = s.m;
          Json triples = Json::array();
          for (const auto& tr : s.triples) triples.push_back(Json::array({tr[0], tr[1], tr[2]}));
          doc["triples"] = std::move(triples);
          return doc;
        } else {
          Json doc;
          doc["values"] = s.values;
          return doc;
        }
      },
      source);
}

SourceInstance source_from_json(SourceKind kind, const Json& doc) {
  switch (kind) {
    case SourceKind::Graph:
      return graph_from_json(doc);
    case SourceKind::ColoredGraph: {
      ColoredGraph g;
      g.graph = graph_from_json(doc);
      g.k = as_count(field(doc, "k", "$"), "$.k");
      g.q = as_count(field(doc, "q", "$"), "$.q");
      g.color = count_list(field(doc, "color", "$"), "$.color");
      return g;
    }
    case SourceKind::Cnf: {
      Cnf3 f;
      f.vars = as_count(field(doc, "vars", "$"), "$.vars");
      const auto& clauses = as_array(field(doc, "clauses", "$"), "$.clauses");
      for (std::size_t c = 0; c < clauses.size(); ++c) {
        const auto path = at_index("$.clauses", c);
        const auto& lits = as_array(clauses[c], path);
        if (lits.size() != 3) fail(path, "a clause needs exactly three literals");
        Clause3 clause{};
        for (std::size_t l = 0; l < 3; ++l) {
          const auto lit = as_int(lits[l], at_index(path, l));
          if (lit == 0 || lit > std::numeric_limits<int>::max() || lit < -std::numeric_limits<int>::max()) {
            fail(at_index(path, l), "literal must be a non-zero int");
          }
          clause[l] = static_cast<int>(lit);
        }
        f.clauses.push_back(clause);
      }
      return f;
    }
    case SourceKind::Triples: {
      TripleSystem ts;
      ts.m = as_count(field(doc, "m", "$"), "$.m");
      const auto& triples = as_array(field(doc, "triples", "$"), "$.triples");
      for (std::size_t s = 0; s < triples.size(); ++s) {
        const auto path = at_index("$.triples", s);
        const auto elems = count_list(triples[s], path);
        if (elems.size() != 3) fail(path, "a triple needs exactly three elements");
        ts.triples.push_back({elems[0], elems[1], elems[2]});
      }
      return ts;
    }
    case SourceKind::Values: {
      ValueMultiset vals;
      const auto& values = as_array(field(doc, "values", "$"), "$.values");
      for (std::size_t i = 0; i < values.size(); ++i) vals.values.push_back(as_int(values[i], at_index("$.values", i)));
      return vals;
    }
  }
  fail("$", "unknown source kind");
}

std::string write_source(const SourceInstance& source) { return dump(to_json(source)); }

SourceInstance read_source(SourceKind kind, std::string_view text) {
  return source_from_json(kind, parse_document(text));
}

Json to_json(const Extraction& extraction) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        Json doc;
        if constexpr (std::is_same_v<T, VertexSet>) {
          doc["type"] = "vertex_set";
          doc["vertices"] = x.vertices;
        } else if constexpr (std::is_same_v<T, TruthAssignment>) {
          doc["type"] = "truth_assignment";
          Json values = Json::array();
          for (bool b : x.values) values.push_back(b);
          doc["values"] = std::move(values);
        } else if constexpr (std::is_same_v<T, Bipartition>) {
          doc["type"] = "bipartition";
          doc["first"] = x.first;
          doc["second"] = x.second;
        } else {
          doc["type"] = "triple_subset";
          doc["triples"] = x.triples;
        }
        return doc;
      },
      extraction);
}

ProfileFile read_profile(std::string_view text) {
  const Json doc = parse_document(text);
  ProfileFile out;
  out.profile.m = as_count(field(doc, "m", "$"), "$.m");
  out.profile.p = as_count(field(doc, "p", "$"), "$.p");
  const auto& rankings = as_array(field(doc, "rankings", "$"), "$.rankings");
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    const auto vpath = at_index("$.rankings", i);
    const auto& voter = as_array(rankings[i], vpath);
    std::vector<Ranking> layers;
    for (std::size_t j = 0; j < voter.size(); ++j) {
      const auto lpath = at_index(vpath, j);
      Ranking ranking = count_list(voter[j], lpath);
      try {
        require_permutation(ranking, out.profile.m);
      } catch (const UsageError& e) {
        fail(lpath, e.what());
      }
      layers.push_back(std::move(ranking));
    }
    out.profile.rankings.push_back(std::move(layers));
  }
  const auto& rules = as_array(field(doc, "rules", "$"), "$.rules");
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const auto path = at_index("$.rules", r);
    const auto& kind = field(rules[r], "kind", path);
    if (!kind.is_string()) fail(path + ".kind", "expected a string");
    const auto parsed = parse_rule_kind(kind.get<std::string>());
    if (!parsed) fail(path + ".kind", "unknown rule kind \"" + kind.get<std::string>() + "\"");
    RuleSpec spec{*parsed, std::nullopt};
    if (rules[r].contains("k")) spec.k = as_count(rules[r]["k"], path + ".k");
    out.rules.push_back(spec);
  }
  return out;
}

std::string write_profile(const ProfileFile& file) {
  Json doc;
  doc["m"] = file.profile.m;
  doc["p"] = file.profile.p;
  doc["rankings"] = file.profile.rankings;
  Json rules = Json::array();
  for (const auto& spec : file.rules) {
    Json r;
    r["kind"] = std::string(to_string(spec.kind));
    if (spec.k) r["k"] = *spec.k;
    rules.push_back(std::move(r));
  }
  doc["rules"] = std::move(rules);
  return dump(doc);
}

}  // namespace mecsr::io
