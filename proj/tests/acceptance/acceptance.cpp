// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   mecsr_acceptance [--report-dir DIR]
//
// The two-rule diagnostic report is written to DIR/two_rule_diagnostic.jsonl.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "mecsr/errors.hpp"
#include "mecsr/json_io.hpp"
#include "mecsr/oracles.hpp"
#include "mecsr/reductions.hpp"
#include "mecsr/scoring.hpp"
#include "mecsr/solvers.hpp"
#include "test_support.hpp"

namespace {

using namespace mecsr;
using Clock = std::chrono::steady_clock;

// Time limits in seconds, per criterion.
constexpr double kLimitDominatingSet = 60.0;
constexpr double kLimitSetPacking = 30.0;
constexpr double kLimitPartition = 30.0;
constexpr double kLimitSat = 60.0;
constexpr double kLimitClique = 60.0;
constexpr double kLimitCrossValidation = 120.0;
constexpr double kLimitDichotomization = 60.0;
constexpr double kLimitCounters = 60.0;
constexpr double kLimitDiagnostic = 60.0;

// Required agreement rate for criteria 1-7.
constexpr double kRequiredAgreement = 1.0;

struct Tally {
  std::uint64_t cases = 0;
  std::uint64_t agree = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) {
      ++agree;
    } else if (first_failure.empty()) {
      first_failure = what;
    }
  }
  double rate() const { return cases == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(cases); }
};

// Witness soundness, accumulated across every suite.
struct Soundness {
  std::uint64_t witnesses = 0;
  std::uint64_t extractions = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    ++failures;
    if (first_failure.empty()) first_failure = what;
  }
} soundness;

int failed_criteria = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("[%s] C%-2d %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failed_criteria;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_rate(const Tally& t, double secs, double limit) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu/%llu agree (%.1f%%), %.2f s (limit %.0f s)",
                static_cast<unsigned long long>(t.agree), static_cast<unsigned long long>(t.cases),
                100.0 * t.rate(), secs, limit);
  std::string out = buf;
  if (!t.first_failure.empty()) out += "; first mismatch: " + t.first_failure;
  return out;
}

void check_rate(int id, const std::string& title, const Tally& t, Clock::time_point start, double limit) {
  const double secs = seconds_since(start);
  report(id, title, t.cases > 0 && t.rate() >= kRequiredAgreement && secs <= limit, format_rate(t, secs, limit));
}

// Solves and re-evaluates any witness through evaluate().
SolveResult checked_solve(const Instance& inst, Strategy strategy, const std::string& label) {
  auto r = solve(inst, strategy);
  if (r.feasible != r.assignment.has_value()) soundness.fail(label + ": witness presence mismatch");
  if (r.assignment) {
    ++soundness.witnesses;
    if (!evaluate(inst, *r.assignment).feasible) soundness.fail(label + ": witness re-evaluates infeasible");
  }
  return r;
}

// Extracts and re-checks with the oracle checkers (extract also checks internally).
void checked_extract(const reductions::ReductionInput& input, const Instance& inst, const RuleAssignment& w,
                     const std::string& label) {
  try {
    const auto e = reductions::extract(input, inst, w);
    ++soundness.extractions;
    std::string why;
    using reductions::Reduction;
    switch (input.kind) {
      case Reduction::DominatingSet:
      case Reduction::DominatingSetTwoRules:
        why = oracles::check_dominating_set(std::get<Graph>(input.source), input.k, std::get<VertexSet>(e));
        break;
      case Reduction::SetPacking:
        why = oracles::check_set_packing(std::get<TripleSystem>(input.source), input.k, std::get<TripleSubset>(e));
        break;
      case Reduction::Partition:
        why = oracles::check_partition(std::get<ValueMultiset>(input.source), std::get<Bipartition>(e));
        break;
      case Reduction::Sat3:
        why = oracles::check_sat3(std::get<Cnf3>(input.source), std::get<TruthAssignment>(e));
        break;
      case Reduction::MulticolorClique:
        why = oracles::check_multicolor_clique(std::get<ColoredGraph>(input.source), input.k, std::get<VertexSet>(e));
        break;
    }
    if (!why.empty()) soundness.fail(label + ": " + why);
  } catch (const std::exception& e) {
    soundness.fail(label + ": " + e.what());
  }
}

// Oracle verdict vs brute force and auto dispatch on the generated instance.
bool equivalence_case(const reductions::ReductionInput& input, bool oracle, const std::string& label) {
  const auto inst = reductions::generate(input);
  if (!validate(inst).empty()) return false;
  const auto brute = checked_solve(inst, Strategy::Brute, label);
  const auto fast = checked_solve(inst, Strategy::Auto, label);
  if (brute.feasible) checked_extract(input, inst, *brute.assignment, label);
  if (fast.feasible && fast.assignment != brute.assignment) {
    checked_extract(input, inst, *fast.assignment, label + " (auto)");
  }
  return brute.feasible == oracle && fast.feasible == oracle;
}

std::string graph_label(const Graph& g, std::size_t k) {
  return io::dump(io::to_json(SourceInstance{g})).substr(0, 120) + " k=" + std::to_string(k);
}

void criterion_dominating_set() {
  const auto start = Clock::now();
  Tally tally;
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& g : testing::nonisomorphic_graphs(n)) {
      ++graphs;
      for (std::size_t k = 1; k <= n; ++k) {
        const bool oracle = oracles::dominating_set(g, k).solvable;
        reductions::ReductionInput input{reductions::Reduction::DominatingSet, g, k, false};
        const auto label = "dominating set " + graph_label(g, k);
        tally.record(equivalence_case(input, oracle, label), label);
      }
    }
  }
  if (graphs != 52) tally.record(false, "expected 52 graphs, enumerated " + std::to_string(graphs));
  check_rate(1, "dominating set reduction, all 52 graphs on <= 5 vertices, all k", tally, start,
             kLimitDominatingSet);
}

void criterion_set_packing() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2001);
  Tally tally;
  for (int s = 0; s < 200; ++s) {
    const std::size_t m = 3 + rng() % 7;
    const std::size_t count = 1 + rng() % 6;
    const auto ts = testing::random_triples(rng, m, count);
    for (std::size_t k = 1; k <= count; ++k) {
      const bool oracle = oracles::set_packing(ts, k).solvable;
      reductions::ReductionInput input{reductions::Reduction::SetPacking, ts, k, false};
      const auto label = "set packing system " + std::to_string(s) + " k=" + std::to_string(k);
      tally.record(equivalence_case(input, oracle, label), label);
    }
  }
  check_rate(2, "set packing reduction, 200 random triple systems, all k", tally, start, kLimitSetPacking);
}

void criterion_partition() {
  const auto start = Clock::now();
  Tally tally;
  for (std::size_t ones = 0; ones <= 10; ++ones) {
    for (std::size_t twos = 0; ones + twos <= 10; ++twos) {
      for (std::size_t threes = 0; ones + twos + threes <= 10; ++threes) {
        if (ones + twos + threes == 0) continue;
        ValueMultiset vals;
        vals.values.insert(vals.values.end(), ones, 1);
        vals.values.insert(vals.values.end(), twos, 2);
        vals.values.insert(vals.values.end(), threes, 3);
        const bool odd = (ones + 3 * threes) % 2 == 1;
        const bool oracle = oracles::partition(vals).solvable;
        reductions::ReductionInput input{reductions::Reduction::Partition, vals, 0, odd};
        const auto label = "partition 1^" + std::to_string(ones) + " 2^" + std::to_string(twos) + " 3^" +
                           std::to_string(threes);
        tally.record(equivalence_case(input, oracle, label), label);
      }
    }
  }
  check_rate(3, "partition reduction, all multisets over {1,2,3} of size 1..10", tally, start, kLimitPartition);
}

void criterion_sat() {
  const auto start = Clock::now();
  std::mt19937_64 rng(4001);
  Tally tally;
  for (int s = 0; s < 300; ++s) {
    const std::size_t vars = 1 + rng() % 6;
    const std::size_t clauses = 1 + rng() % 10;
    const auto f = testing::random_cnf(rng, vars, clauses);
    const bool oracle = oracles::sat3(f).solvable;
    reductions::ReductionInput input{reductions::Reduction::Sat3, f, 0, false};
    const auto label = "3-CNF " + std::to_string(s);
    tally.record(equivalence_case(input, oracle, label), label);
  }
  check_rate(4, "3-SAT reduction, 300 random formulas, extractions satisfy every clause", tally, start, kLimitSat);
}

void criterion_clique() {
  const auto start = Clock::now();
  std::mt19937_64 rng(5001);
  Tally tally;
  for (int s = 0; s < 200; ++s) {
    const std::size_t k = 1 + rng() % 3;
    const std::size_t q = 1 + rng() % 3;
    const double p = 0.2 + 0.1 * static_cast<double>(rng() % 8);
    const auto g = testing::random_colored_graph(rng, k, q, p);
    const bool oracle = oracles::multicolor_clique(g, k).solvable;
    if (oracle != testing::rainbow_clique_exists(g)) {
      tally.record(false, "clique oracles disagree on graph " + std::to_string(s));
      continue;
    }
    reductions::ReductionInput input{reductions::Reduction::MulticolorClique, g, k, false};
    const auto label = "colored graph " + std::to_string(s);
    tally.record(equivalence_case(input, oracle, label), label);
  }
  check_rate(5, "multicolor clique reduction, 200 random colored graphs (k, q <= 3)", tally, start, kLimitClique);
}

void criterion_cross_validation() {
  const auto start = Clock::now();
  std::mt19937_64 rng(6001);
  Tally tally;
  std::uint64_t specialized_runs = 0;
  for (int s = 0; s < 1000; ++s) {
    const std::size_t n = 1 + rng() % 4, t = 1 + rng() % 4, ell = 1 + rng() % 4;
    // Every fourth tensor is 0/1 so that the sum model also exercises subset_fpt.
    const Satisfaction hi = s % 4 == 3 ? 1 : 3;
    const auto base = testing::random_instance(rng, n, t, ell, Model::Sum, 0, hi, 0, 0);
    for (Model model : {Model::Sum, Model::Max, Model::Min}) {
      for (Satisfaction d = 0; d <= 6; ++d) {
        for (std::size_t alpha = 0; alpha <= n; ++alpha) {
          Instance inst = base;
          inst.model = model;
          inst.d = d;
          inst.alpha = alpha;
          const auto label = "instance " + std::to_string(s) + " model=" + std::string(to_string(model)) +
                             " d=" + std::to_string(d) + " alpha=" + std::to_string(alpha);
          const bool expected = checked_solve(inst, Strategy::Brute, label).feasible;
          if (expected != testing::naive_feasible(inst)) {
            tally.record(false, label + " (brute vs naive enumeration)");
            continue;
          }
          std::vector<Strategy> applicable;
          if (model == Model::Min && alpha == n) applicable.push_back(Strategy::MinUnanimous);
          if (model == Model::Min) applicable.push_back(Strategy::MinSubsets);
          if (model == Model::Max || (model == Model::Sum && is_dichotomous(inst))) {
            applicable.push_back(Strategy::SubsetFpt);
          }
          applicable.push_back(Strategy::Auto);
          bool ok = true;
          for (auto strategy : applicable) {
            ++specialized_runs;
            ok = ok && checked_solve(inst, strategy, label).feasible == expected;
          }
          tally.record(ok, label);
        }
      }
    }
  }
  const double secs = seconds_since(start);
  auto detail = format_rate(tally, secs, kLimitCrossValidation);
  detail += ", " + std::to_string(specialized_runs) + " specialized runs";
  report(6, "solver cross-validation, 1000 random instances x models x d <= 6 x all alpha",
         tally.cases > 0 && tally.rate() >= kRequiredAgreement && secs <= kLimitCrossValidation, detail);
}

void criterion_dichotomization() {
  const auto start = Clock::now();
  std::mt19937_64 rng(7001);
  Tally tally;
  for (int s = 0; s < 500; ++s) {
    const std::size_t n = 1 + rng() % 4, t = 1 + rng() % 4, ell = 1 + rng() % 4;
    const Satisfaction d = static_cast<Satisfaction>(rng() % 7);
    const auto inst = testing::random_instance(rng, n, t, ell, Model::Max, 0, 5, d, rng() % (n + 1));
    const auto label = "max instance " + std::to_string(s);
    const bool original = checked_solve(inst, Strategy::Brute, label).feasible;
    const bool binary = checked_solve(dichotomize(inst, d), Strategy::Brute, label + " dichotomized").feasible;
    tally.record(original == binary, label);
  }
  for (int s = 0; s < 500; ++s) {
    const std::size_t n = 1 + rng() % 4, t = 1 + rng() % 4, ell = 1 + rng() % 4;
    auto inst = testing::random_instance(rng, n, t, ell, Model::Sum, 0, 1, 1, rng() % (n + 1));
    const auto label = "0/1 instance " + std::to_string(s);
    const bool sum = checked_solve(inst, Strategy::Brute, label + " sum").feasible;
    inst.model = Model::Max;
    const bool max = checked_solve(inst, Strategy::Brute, label + " max").feasible;
    tally.record(sum == max, label);
  }
  check_rate(7, "dichotomization equivalence (500 max instances) and 0/1 sum = max at d = 1 (500)", tally, start,
             kLimitDichotomization);
}

void criterion_counters() {
  const auto start = Clock::now();
  Tally tally;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t t = 1; t <= 7; ++t) {
      for (std::size_t ell = 1; ell <= 4; ++ell) {
        // All-zero tensor with d = 1: infeasible for any alpha >= 1.
        Instance zero{n, t, ell, Model::Sum, 1, 1, std::vector<Satisfaction>(n * t * ell, 0)};
        const auto r = solve_brute(zero);
        std::uint64_t expected = 1;
        for (std::size_t j = 0; j < t; ++j) expected *= ell;
        tally.record(!r.feasible && r.stats.assignments == expected,
                     "brute n=" + std::to_string(n) + " t=" + std::to_string(t) + " ell=" + std::to_string(ell) +
                         " counted " + std::to_string(r.stats.assignments));
      }
    }
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t t = 1; t <= 6; ++t) {
      for (std::size_t ell = 1; ell <= 6; ++ell) {
        Instance worst{n, t, ell, Model::Min, 1, n, std::vector<Satisfaction>(n * t * ell, 1)};
        for (std::size_t j = 0; j < t; ++j) {
          for (std::size_t k = 0; k + 1 < ell; ++k) worst.sat[((n - 1) * t + j) * ell + k] = 0;
        }
        const auto r = solve_min_unanimous(worst);
        tally.record(r.feasible && r.stats.sat_reads == n * t * ell,
                     "min_unanimous n=" + std::to_string(n) + " t=" + std::to_string(t) + " ell=" +
                         std::to_string(ell) + " read " + std::to_string(r.stats.sat_reads));
      }
    }
  }
  std::mt19937_64 rng(9001);
  for (int s = 0; s < 500; ++s) {
    const std::size_t n = 1 + rng() % 5, t = 1 + rng() % 5, ell = 1 + rng() % 5;
    const auto inst = testing::random_instance(rng, n, t, ell, Model::Min, 0, 2, 1, n);
    const auto r = solve_min_unanimous(inst);
    tally.record(r.stats.sat_reads <= n * t * ell, "min_unanimous random read bound " + std::to_string(s));
  }
  check_rate(9, "operation counters: brute = ell^t when infeasible, min_unanimous = n*t*ell worst case", tally,
             start, kLimitCounters);
}

void criterion_two_rule_diagnostic(const std::filesystem::path& report_dir) {
  const auto start = Clock::now();
  std::filesystem::create_directories(report_dir);
  const auto path = report_dir / "two_rule_diagnostic.jsonl";
  std::ofstream out(path);
  std::uint64_t cases = 0, agree = 0, oracle_yes_solver_no = 0, oracle_no_solver_yes = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& g : testing::labeled_graphs(n)) {
      for (std::size_t k = 1; k <= n; ++k) {
        reductions::ReductionInput input{reductions::Reduction::DominatingSetTwoRules, g, k, false};
        const auto inst = reductions::generate(input);
        const auto label = "two-rule " + graph_label(g, k);
        const auto r = checked_solve(inst, Strategy::Brute, label);
        const bool oracle = oracles::dominating_set(g, k).solvable;
        if (r.feasible) checked_extract(input, inst, *r.assignment, label);
        ++cases;
        if (oracle == r.feasible) {
          ++agree;
        } else if (oracle) {
          ++oracle_yes_solver_no;
        } else {
          ++oracle_no_solver_yes;
        }
        io::Json row;
        row["graph"] = io::to_json(SourceInstance{g});
        row["k"] = k;
        row["oracle_solvable"] = oracle;
        row["solver_feasible"] = r.feasible;
        row["assignment"] = r.assignment ? io::to_json(*r.assignment) : io::Json(nullptr);
        row["agree"] = oracle == r.feasible;
        out << io::dump(row);
      }
    }
  }
  io::Json summary;
  summary["summary"] = true;
  summary["cases"] = cases;
  summary["agree"] = agree;
  summary["oracle_yes_solver_no"] = oracle_yes_solver_no;
  summary["oracle_no_solver_yes"] = oracle_no_solver_yes;
  out << io::dump(summary);
  out.close();
  const bool written = static_cast<bool>(out) && std::filesystem::file_size(path) > 0;
  const double secs = seconds_since(start);
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "%llu/%llu agree, %llu oracle-only, %llu solver-only (recorded, not asserted); report %s; %.2f s",
                static_cast<unsigned long long>(agree), static_cast<unsigned long long>(cases),
                static_cast<unsigned long long>(oracle_yes_solver_no),
                static_cast<unsigned long long>(oracle_no_solver_yes), path.string().c_str(), secs);
  report(10, "two-rule dominating set diagnostic, all labeled graphs on <= 4 vertices", written && secs <= kLimitDiagnostic,
         buf);
}

void criterion_soundness() {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu witnesses re-evaluated, %llu extractions checked, %llu failures",
                static_cast<unsigned long long>(soundness.witnesses),
                static_cast<unsigned long long>(soundness.extractions),
                static_cast<unsigned long long>(soundness.failures));
  std::string detail = buf;
  if (!soundness.first_failure.empty()) detail += "; first: " + soundness.first_failure;
  report(8, "witness soundness across all suites", soundness.failures == 0 && soundness.witnesses > 0 &&
                                                        soundness.extractions > 0,
         detail);
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, "aborted", false, e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path report_dir = "acceptance_reports";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--report-dir" && i + 1 < argc) {
      report_dir = argv[++i];
    } else {
      std::cerr << "usage: " << argv[0] << " [--report-dir DIR]\n";
      return 2;
    }
  }

  guarded(1, criterion_dominating_set);
  guarded(2, criterion_set_packing);
  guarded(3, criterion_partition);
  guarded(4, criterion_sat);
  guarded(5, criterion_clique);
  guarded(6, criterion_cross_validation);
  guarded(7, criterion_dichotomization);
  guarded(9, criterion_counters);
  guarded(10, [&] { criterion_two_rule_diagnostic(report_dir); });
  guarded(8, criterion_soundness);

  std::printf("%s: %d criterion(s) failed\n", failed_criteria == 0 ? "ACCEPTED" : "REJECTED", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
