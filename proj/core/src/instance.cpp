#include "mecsr/instance.hpp"

#include <algorithm>
#include <sstream>

#include "mecsr/errors.hpp"

namespace mecsr {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::Sum: return "sum";
    case Model::Max: return "max";
    case Model::Min: return "min";
  }
  return "sum";
}

std::optional<Model> parse_model(std::string_view text) {
  if (text == "sum") return Model::Sum;
  if (text == "max") return Model::Max;
  if (text == "min") return Model::Min;
  return std::nullopt;
}

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  if (inst.n < 1) out.push_back({"n", "must be at least 1"});
  if (inst.t < 1) out.push_back({"t", "must be at least 1"});
  if (inst.ell < 1) out.push_back({"ell", "must be at least 1"});
  if (inst.d < 0) out.push_back({"d", "must be non-negative"});
  if (inst.alpha > inst.n) {
    out.push_back({"alpha", "quota " + std::to_string(inst.alpha) + " exceeds voter count " +
                                std::to_string(inst.n)});
  }

  // n*t*ell may not fit; compare by division instead.
  const std::size_t size = inst.sat.size();
  bool shape_ok = true;
  if (inst.n != 0 && inst.t != 0 && inst.ell != 0) {
    shape_ok = size % inst.ell == 0 && (size / inst.ell) % inst.t == 0 &&
               (size / inst.ell) / inst.t == inst.n;
  } else {
    shape_ok = size == 0;
  }
  if (!shape_ok) {
    std::ostringstream msg;
    msg << "expected n*t*ell = " << inst.n << "*" << inst.t << "*" << inst.ell
        << " entries, found " << size;
    out.push_back({"sat", msg.str()});
    return out;
  }

  for (std::size_t idx = 0; idx < size; ++idx) {
    if (inst.sat[idx] >= 0) continue;
    const std::size_t k = idx % inst.ell;
    const std::size_t j = (idx / inst.ell) % inst.t;
    const std::size_t i = idx / inst.ell / inst.t;
    std::ostringstream field;
    field << "sat[" << i << "][" << j << "][" << k << "]";
    out.push_back({field.str(), "negative satisfaction " + std::to_string(inst.sat[idx])});
  }
  return out;
}

void require_valid(const Instance& inst) {
  const auto violations = validate(inst);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid instance:";
  for (const auto& v : violations) msg << " " << v.field << ": " << v.message << ";";
  throw UsageError(msg.str());
}

void require_valid(const Instance& inst, const RuleAssignment& a) {
  if (inst.n == 0 || inst.t == 0 || inst.ell == 0 ||
      inst.sat.size() / inst.ell / inst.t != inst.n || inst.sat.size() % (inst.t * inst.ell) != 0) {
    require_valid(inst);
  }
  if (a.layers.size() != inst.t) {
    throw UsageError("assignment has " + std::to_string(a.layers.size()) +
                     " layers, instance has " + std::to_string(inst.t));
  }
  for (std::size_t j = 0; j < a.layers.size(); ++j) {
    if (a.layers[j] >= inst.ell) {
      throw UsageError("assignment layer " + std::to_string(j) + " uses rule " +
                       std::to_string(a.layers[j]) + " but ell = " + std::to_string(inst.ell));
    }
  }
}

namespace {

Satisfaction aggregate(const Instance& inst, const RuleAssignment& a, std::size_t voter) {
  switch (inst.model) {
    case Model::Sum: {
      Satisfaction acc = 0;
      for (std::size_t j = 0; j < inst.t; ++j) {
        const Satisfaction v = inst.at(voter, j, a.layers[j]);
        if (v > kSatisfactionLimit - acc) {
          throw ArithmeticError("sum-model satisfaction of voter " + std::to_string(voter) +
                                " exceeds 2^62");
        }
        acc += v;
      }
      return acc;
    }
    case Model::Max: {
      Satisfaction acc = 0;
      for (std::size_t j = 0; j < inst.t; ++j) acc = std::max(acc, inst.at(voter, j, a.layers[j]));
      return acc;
    }
    case Model::Min: {
      Satisfaction acc = inst.at(voter, 0, a.layers[0]);
      for (std::size_t j = 1; j < inst.t; ++j) acc = std::min(acc, inst.at(voter, j, a.layers[j]));
      return acc;
    }
  }
  return 0;
}

}  // namespace

Satisfaction evaluate_voter(const Instance& inst, const RuleAssignment& a, std::size_t voter) {
  require_valid(inst, a);
  if (voter >= inst.n) {
    throw UsageError("voter index " + std::to_string(voter) + " out of range for n = " +
                     std::to_string(inst.n));
  }
  return aggregate(inst, a, voter);
}

EvalReport evaluate(const Instance& inst, const RuleAssignment& a) {
  require_valid(inst, a);
  EvalReport report;
  report.voter_sat.reserve(inst.n);
  report.accepted.reserve(inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    const Satisfaction s = aggregate(inst, a, i);
    report.voter_sat.push_back(s);
    report.accepted.push_back(s >= inst.d);
    if (s >= inst.d) ++report.satisfied_count;
  }
  report.feasible = report.satisfied_count >= inst.alpha;
  return report;
}

bool is_dichotomous(const Instance& inst) {
  return std::all_of(inst.sat.begin(), inst.sat.end(),
                     [](Satisfaction v) { return v == 0 || v == 1; });
}

}  // namespace mecsr
