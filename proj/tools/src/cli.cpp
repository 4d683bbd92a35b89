#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "mecsr/errors.hpp"
#include "mecsr/json_io.hpp"
#include "mecsr/oracles.hpp"
#include "mecsr/reductions.hpp"
#include "mecsr/scoring.hpp"
#include "mecsr/solvers.hpp"

namespace mecsr::cli {

namespace {

using io::Json;

struct SolverFlags {
  std::string strategy = "auto";
  std::uint64_t budget = SolveOptions{}.assignment_budget;
  std::optional<std::size_t> cap_n;
  unsigned threads = 1;
  bool no_timing = false;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--strategy", f.strategy, "auto, brute, min_unanimous, min_subsets or subset_fpt")
      ->capture_default_str();
  cmd->add_option("--budget-assignments", f.budget, "Largest ell^t the brute scan may enumerate")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--cap-n", f.cap_n, "Voter cap for the subset-based solvers")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", f.threads, "Worker threads for the brute scan")
      ->capture_default_str()
      ->check(CLI::Range(1u, 256u));
  cmd->add_flag("--no-timing", f.no_timing, "Report elapsed_ns as 0 for byte-stable output");
}

SolveOptions options_from(const SolverFlags& f) {
  SolveOptions opts;
  opts.assignment_budget = f.budget;
  if (f.cap_n) {
    opts.min_subsets_cap = *f.cap_n;
    opts.subset_fpt_cap = *f.cap_n;
  }
  opts.threads = f.threads;
  return opts;
}

Strategy strategy_from(const std::string& text) {
  const auto s = parse_strategy(text);
  if (!s) throw UsageError("unknown strategy \"" + text + "\"");
  return *s;
}

Model model_from(const std::string& text) {
  const auto m = parse_model(text);
  if (!m) throw UsageError("unknown model \"" + text + "\"");
  return *m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  file << text;
  if (!file) throw UsageError("write failed for " + path);
}

io::SourceKind source_kind_for(reductions::Reduction r) {
  switch (r) {
    case reductions::Reduction::DominatingSet:
    case reductions::Reduction::DominatingSetTwoRules: return io::SourceKind::Graph;
    case reductions::Reduction::SetPacking: return io::SourceKind::Triples;
    case reductions::Reduction::Partition: return io::SourceKind::Values;
    case reductions::Reduction::Sat3: return io::SourceKind::Cnf;
    case reductions::Reduction::MulticolorClique: return io::SourceKind::ColoredGraph;
  }
  return io::SourceKind::Graph;
}

reductions::Reduction reduction_from(const std::string& text) {
  const auto r = reductions::parse_reduction(text);
  if (!r) throw UsageError("unknown reduction \"" + text + "\"");
  return *r;
}

std::string provenance_path(const std::string& instance_path) { return instance_path + ".provenance.json"; }

// ---- generate ------------------------------------------------------------

constexpr std::size_t kMaxGeneratedCells = 100'000'000;
constexpr std::size_t kMaxGridValues = 10'000;

struct GenerateArgs {
  std::size_t n = 0, t = 0, ell = 0;
  std::string model = "sum";
  Satisfaction d = 1;
  std::size_t alpha = 0;
  Satisfaction min_value = 0, max_value = 1;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.min_value < 0 || a.max_value < a.min_value) {
    throw UsageError("value range must satisfy 0 <= min-value <= max-value");
  }
  Instance inst;
  inst.n = a.n;
  inst.t = a.t;
  inst.ell = a.ell;
  inst.model = model_from(a.model);
  inst.d = a.d;
  inst.alpha = a.alpha;
  if (a.n == 0 || a.t == 0 || a.ell == 0) throw UsageError("n, t and ell must be at least 1");
  if (a.n > kMaxGeneratedCells / a.t / a.ell) throw UsageError("n*t*ell exceeds the generator limit");
  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<Satisfaction> cell(a.min_value, a.max_value);
  inst.sat.resize(a.n * a.t * a.ell);
  for (auto& s : inst.sat) s = cell(rng);
  require_valid(inst);
  write_output(a.output, io::write_instance(inst), out);
  return kFeasible;
}

// ---- reduce --------------------------------------------------------------

struct ReduceArgs {
  std::string reduction;
  std::string source;
  std::size_t k = 0;
  bool force = false;
  std::string output;
};

Json provenance_json(const reductions::ReductionInput& input, const std::string& instance_text) {
  const std::string source_text = io::write_source(input.source);
  Json doc;
  doc["reduction"] = std::string(reductions::to_string(input.kind));
  doc["k"] = input.k;
  doc["force"] = input.force;
  doc["source_kind"] = std::string(io::to_string(io::kind_of(input.source)));
  doc["source"] = io::to_json(input.source);
  doc["source_sha256"] = sha256_hex(source_text);
  doc["instance_sha256"] = sha256_hex(instance_text);
  return doc;
}

int cmd_reduce(const ReduceArgs& a, std::ostream& out) {
  if (a.output.empty() || a.output == "-") {
    throw UsageError("reduce needs -o <file> so the provenance sidecar has a home");
  }
  const auto kind = reduction_from(a.reduction);
  reductions::ReductionInput input;
  input.kind = kind;
  input.source = io::read_source(source_kind_for(kind), read_file(a.source));
  input.k = a.k;
  input.force = a.force;
  const std::string text = io::write_instance(reductions::generate(input));
  write_output(a.output, text, out);
  write_output(provenance_path(a.output), io::dump(provenance_json(input, text)), out);
  return kFeasible;
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  SolverFlags solver;
  std::string output;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Instance inst = io::read_instance(read_file(a.instance));
  require_valid(inst);
  auto result = solve(inst, strategy_from(a.solver.strategy), options_from(a.solver));
  if (a.solver.no_timing) result.stats.elapsed_ns = 0;
  write_output(a.output, io::write_solve_result(result), out);
  return result.feasible ? kFeasible : kInfeasible;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string instance;
  std::string provenance;
  SolverFlags solver;
  bool diagnostic = false;
  std::string output;
};

oracles::Verdict run_oracle(const reductions::ReductionInput& input) {
  using reductions::Reduction;
  switch (input.kind) {
    case Reduction::DominatingSet:
    case Reduction::DominatingSetTwoRules:
      return oracles::dominating_set(std::get<Graph>(input.source), input.k);
    case Reduction::SetPacking:
      return oracles::set_packing(std::get<TripleSystem>(input.source), input.k);
    case Reduction::Partition:
      return oracles::partition(std::get<ValueMultiset>(input.source));
    case Reduction::Sat3:
      return oracles::sat3(std::get<Cnf3>(input.source));
    case Reduction::MulticolorClique:
      return oracles::multicolor_clique(std::get<ColoredGraph>(input.source), input.k);
  }
  return {};
}

reductions::ReductionInput input_from_provenance(const Json& doc) {
  auto str = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_string()) {
      throw ParseError(std::string("provenance: missing string \"") + key + "\"");
    }
    return doc[key].get<std::string>();
  };
  reductions::ReductionInput input;
  input.kind = reduction_from(str("reduction"));
  if (!doc.contains("k") || !doc["k"].is_number_unsigned()) throw ParseError("provenance: missing \"k\"");
  if (!doc.contains("force") || !doc["force"].is_boolean()) throw ParseError("provenance: missing \"force\"");
  if (!doc.contains("source")) throw ParseError("provenance: missing \"source\"");
  input.k = doc["k"].get<std::size_t>();
  input.force = doc["force"].get<bool>();
  const auto kind = io::parse_source_kind(str("source_kind"));
  if (!kind || *kind != source_kind_for(input.kind)) {
    throw ParseError("provenance: source_kind does not match the reduction");
  }
  input.source = io::source_from_json(*kind, doc["source"]);
  if (sha256_hex(io::write_source(input.source)) != str("source_sha256")) {
    throw UsageError("provenance: source hash mismatch; the sidecar was edited or corrupted");
  }
  return input;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const std::string sidecar = a.provenance.empty() ? provenance_path(a.instance) : a.provenance;
  std::ifstream probe(sidecar);
  if (!probe) throw UsageError("missing provenance sidecar " + sidecar);
  const auto input = input_from_provenance(io::parse_document(read_file(sidecar)));
  const bool two_rules = input.kind == reductions::Reduction::DominatingSetTwoRules;
  if (a.diagnostic && !two_rules) {
    throw UsageError("--diagnostic applies only to the dominating-set-two-rules reduction");
  }

  const std::string instance_text = read_file(a.instance);
  const Instance inst = io::read_instance(instance_text);
  if (reductions::generate(input) != inst) {
    throw UsageError("instance does not match the construction recorded in " + sidecar);
  }

  const auto verdict = run_oracle(input);
  auto result = solve(inst, strategy_from(a.solver.strategy), options_from(a.solver));
  Json details;
  details["reduction"] = std::string(reductions::to_string(input.kind));
  details["k"] = input.k;
  details["oracle_solvable"] = verdict.solvable;
  details["oracle_witness"] = verdict.witness ? io::to_json(*verdict.witness) : Json(nullptr);
  details["solver_feasible"] = result.feasible;
  details["method"] = std::string(to_string(result.method));
  details["assignment"] = result.assignment ? io::to_json(*result.assignment) : Json(nullptr);

  bool agree = verdict.solvable == result.feasible;
  details["extraction"] = nullptr;
  details["extraction_error"] = nullptr;
  if (result.feasible) {
    try {
      details["extraction"] = io::to_json(reductions::extract(input, inst, *result.assignment));
    } catch (const ConsistencyError& e) {
      if (!two_rules) throw;
      details["extraction_error"] = e.what();
      agree = false;
    }
  }

  Json report;
  report["agree"] = agree;
  report["details"] = details;
  write_output(a.output, io::dump(report), out);

  if (agree) return kFeasible;
  if (a.diagnostic) {
    Json record;
    record["discrepancy"] = details;
    err << io::dump(record);
    return kFeasible;
  }
  return kInfeasible;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
  std::string family = "random";
  std::string n = "1..4";
  std::string t = "1..4";
  std::string ell = "2";
  std::string model = "sum";
  Satisfaction d = 1;
  std::optional<std::size_t> alpha;
  Satisfaction min_value = 0, max_value = 1;
  unsigned repeats = 3;
  std::uint64_t seed = 0;
  SolverFlags solver;
  std::string output;
};

Instance bench_instance(const BenchArgs& a, std::size_t n, std::size_t t, std::size_t ell, std::mt19937_64& rng) {
  Instance inst;
  inst.n = n;
  inst.t = t;
  inst.ell = ell;
  inst.model = model_from(a.model);
  inst.d = a.d;
  inst.alpha = a.alpha.value_or(n);
  inst.sat.assign(n * t * ell, 0);
  if (a.family == "random") {
    std::uniform_int_distribution<Satisfaction> cell(a.min_value, a.max_value);
    for (auto& s : inst.sat) s = cell(rng);
  } else if (a.family == "zero") {
    inst.d = std::max<Satisfaction>(a.d, 1);
  } else if (a.family == "min-worst") {
    // Each rule fails only at the last voter, except the last rule of every layer.
    inst.model = Model::Min;
    inst.d = 1;
    inst.alpha = n;
    std::fill(inst.sat.begin(), inst.sat.end(), 1);
    for (std::size_t j = 0; j < t; ++j) {
      for (std::size_t k = 0; k + 1 < ell; ++k) inst.sat[((n - 1) * t + j) * ell + k] = 0;
    }
  } else {
    throw UsageError("unknown bench family \"" + a.family + "\" (random, zero, min-worst)");
  }
  return inst;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.min_value < 0 || a.max_value < a.min_value) {
    throw UsageError("value range must satisfy 0 <= min-value <= max-value");
  }
  if (a.repeats == 0) throw UsageError("--repeats must be positive");
  const auto strategy = strategy_from(a.solver.strategy);
  const auto opts = options_from(a.solver);
  const auto ns = parse_grid(a.n), ts = parse_grid(a.t), ells = parse_grid(a.ell);
  std::mt19937_64 rng(a.seed);
  std::ostringstream rows;
  for (std::size_t n : ns) {
    for (std::size_t t : ts) {
      for (std::size_t ell : ells) {
        Json row;
        row["family"] = a.family;
        row["strategy"] = a.solver.strategy;
        row["n"] = n;
        row["t"] = t;
        row["ell"] = ell;
        if (n == 0 || t == 0 || ell == 0) {
          row["status"] = "skipped";
          row["reason"] = "dimensions must be at least 1";
          rows << io::dump(row);
          continue;
        }
        const Instance inst = bench_instance(a, n, t, ell, rng);
        if (inst.alpha > inst.n) {
          row["status"] = "skipped";
          row["reason"] = "alpha exceeds n";
          rows << io::dump(row);
          continue;
        }
        std::vector<std::int64_t> times;
        SolveResult last;
        try {
          for (unsigned r = 0; r < a.repeats; ++r) {
            last = solve(inst, strategy, opts);
            times.push_back(last.stats.elapsed_ns);
          }
        } catch (const ResourceError& e) {
          row["status"] = "skipped";
          row["reason"] = e.what();
          rows << io::dump(row);
          continue;
        }
        std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2), times.end());
        row["status"] = "ok";
        row["method"] = std::string(to_string(last.method));
        row["feasible"] = last.feasible;
        row["assignments"] = last.stats.assignments;
        row["subsets"] = last.stats.subsets;
        row["rule_types"] = last.stats.rule_types;
        row["sat_reads"] = last.stats.sat_reads;
        row["median_ns"] = a.solver.no_timing ? 0 : times[times.size() / 2];
        rows << io::dump(row);
      }
    }
  }
  write_output(a.output, rows.str(), out);
  return kFeasible;
}

// ---- score ---------------------------------------------------------------

struct ScoreArgs {
  std::string profile;
  std::string model = "sum";
  Satisfaction d = 1;
  std::size_t alpha = 1;
  std::string output;
};

int cmd_score(const ScoreArgs& a, std::ostream& out) {
  const auto file = io::read_profile(read_file(a.profile));
  auto inst = make_instance(build_tensor(file.profile, file.rules), model_from(a.model), a.d, a.alpha);
  require_valid(inst);
  write_output(a.output, io::write_instance(inst), out);
  return kFeasible;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw ConsistencyError("SHA-256 computation failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  auto number = [&](const std::string& part) -> std::size_t {
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw UsageError("bad grid value \"" + part + "\" in \"" + text + "\"");
    }
    return std::stoull(part);
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t lo = number(text.substr(0, dots));
    const std::size_t hi = number(text.substr(dots + 2));
    if (hi >= lo && hi - lo >= kMaxGridValues) throw UsageError("grid \"" + text + "\" is too long");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) out.push_back(number(part));
  if (out.size() > kMaxGridValues) throw UsageError("grid \"" + text + "\" is too long");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solvers, reduction generators and verifiers for multi-layer election control"};
  app.name(args.empty() ? "mecsr" : args[0]);
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--n", gen.n, "Voters")->required();
  generate->add_option("--t", gen.t, "Layers")->required();
  generate->add_option("--ell", gen.ell, "Rules")->required();
  generate->add_option("--model", gen.model, "sum, max or min")->capture_default_str();
  generate->add_option("--d", gen.d, "Satisfaction threshold")->capture_default_str();
  generate->add_option("--alpha", gen.alpha, "Accepting-voter quota")->capture_default_str();
  generate->add_option("--min-value", gen.min_value, "Smallest cell value")->capture_default_str();
  generate->add_option("--max-value", gen.max_value, "Largest cell value")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("-o,--output", gen.output, "Output file (default stdout)");

  ReduceArgs red;
  auto* reduce = app.add_subcommand("reduce", "Build an instance from a source problem");
  reduce->add_option("reduction", red.reduction,
                     "dominating-set, dominating-set-two-rules, set-packing, partition, 3sat, multicolor-clique")
      ->required();
  reduce->add_option("source", red.source, "Source problem JSON file")->required();
  reduce->add_option("--k", red.k, "Solution size (color count for multicolor-clique)");
  reduce->add_flag("--force", red.force, "Build odd-total partition instances anyway");
  reduce->add_option("-o,--output", red.output, "Instance file; the sidecar goes next to it")->required();

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance; exit 0 if feasible, 1 if not");
  solve_cmd->add_option("instance", sol.instance, "Instance JSON file")->required();
  add_solver_flags(solve_cmd, sol.solver);
  solve_cmd->add_option("-o,--output", sol.output, "Result file (default stdout)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Compare the source oracle with the solver on a reduced instance");
  verify->add_option("instance", ver.instance, "Instance written by reduce")->required();
  verify->add_option("--provenance", ver.provenance, "Sidecar path (default <instance>.provenance.json)");
  add_solver_flags(verify, ver.solver);
  verify->add_flag("--diagnostic", ver.diagnostic, "Two-rule reduction: log disagreements and exit 0");
  verify->add_option("-o,--output", ver.output, "Report file (default stdout)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep a parameter grid and emit one JSON row per cell");
  bench_cmd->add_option("--family", bench.family, "random, zero or min-worst")->capture_default_str();
  bench_cmd->add_option("--n", bench.n, "Voter grid: a..b or a,b,c")->capture_default_str();
  bench_cmd->add_option("--t", bench.t, "Layer grid")->capture_default_str();
  bench_cmd->add_option("--ell", bench.ell, "Rule grid")->capture_default_str();
  bench_cmd->add_option("--model", bench.model, "sum, max or min")->capture_default_str();
  bench_cmd->add_option("--d", bench.d, "Satisfaction threshold")->capture_default_str();
  bench_cmd->add_option("--alpha", bench.alpha, "Quota (default n)");
  bench_cmd->add_option("--min-value", bench.min_value, "Smallest cell value")->capture_default_str();
  bench_cmd->add_option("--max-value", bench.max_value, "Largest cell value")->capture_default_str();
  bench_cmd->add_option("--repeats", bench.repeats, "Runs per cell")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
  add_solver_flags(bench_cmd, bench.solver);
  bench_cmd->add_option("-o,--output", bench.output, "Output file (default stdout)");

  ScoreArgs sc;
  auto* score_cmd = app.add_subcommand("score", "Build an instance from a ranked profile");
  score_cmd->add_option("profile", sc.profile, "Profile JSON file")->required();
  score_cmd->add_option("--model", sc.model, "sum, max or min")->capture_default_str();
  score_cmd->add_option("--d", sc.d, "Satisfaction threshold")->capture_default_str();
  score_cmd->add_option("--alpha", sc.alpha, "Accepting-voter quota")->capture_default_str();
  score_cmd->add_option("-o,--output", sc.output, "Output file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kFeasible;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kFeasible;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, out);
    if (*reduce) return cmd_reduce(red, out);
    if (*solve_cmd) return cmd_solve(sol, out);
    if (*verify) return cmd_verify(ver, out, err);
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*score_cmd) return cmd_score(sc, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << "\n";
    return kRefused;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ArithmeticError& e) {
    err << "arithmetic error: " << e.what() << "\n";
    return kInternal;
  } catch (const ConsistencyError& e) {
    err << "internal consistency error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace mecsr::cli
