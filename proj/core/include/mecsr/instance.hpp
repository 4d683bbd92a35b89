#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mecsr {

using Satisfaction = std::int64_t;

// Largest aggregated satisfaction evaluate() will report.
inline constexpr Satisfaction kSatisfactionLimit = Satisfaction{1} << 62;

enum class Model { Sum, Max, Min };

std::string_view to_string(Model model);
std::optional<Model> parse_model(std::string_view text);

/// One election-control instance.
///
/// `sat` is stored voter-major: the entry for voter i, layer j, rule k lives at
/// `(i * t + j) * ell + k`. Instances are plain values; use validate() before
/// trusting data that came from outside the process.
struct Instance {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t ell = 0;
  Model model = Model::Sum;
  Satisfaction d = 0;
  std::size_t alpha = 0;
  std::vector<Satisfaction> sat;

  Satisfaction at(std::size_t voter, std::size_t layer, std::size_t rule) const {
    return sat[(voter * t + layer) * ell + rule];
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Rule index per layer. Rules may repeat across layers.
struct RuleAssignment {
  std::vector<std::size_t> layers;

  friend bool operator==(const RuleAssignment&, const RuleAssignment&) = default;
  friend auto operator<=>(const RuleAssignment&, const RuleAssignment&) = default;
};

struct EvalReport {
  std::vector<Satisfaction> voter_sat;
  std::vector<bool> accepted;
  std::size_t satisfied_count = 0;
  bool feasible = false;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct Violation {
  std::string field;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Empty result means every instance invariant holds. Never throws.
std::vector<Violation> validate(const Instance& inst);

// Throws UsageError listing the violations, if any.
void require_valid(const Instance& inst);

// Throws UsageError unless `a` has t entries, each below ell.
void require_valid(const Instance& inst, const RuleAssignment& a);

Satisfaction evaluate_voter(const Instance& inst, const RuleAssignment& a, std::size_t voter);

EvalReport evaluate(const Instance& inst, const RuleAssignment& a);

// True iff every cell is 0 or 1.
bool is_dichotomous(const Instance& inst);

}  // namespace mecsr
