#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mecsr/instance.hpp"

namespace mecsr {

// A strict ranking of candidates, most preferred first.
using Ranking = std::vector<std::size_t>;

/// Ranked-preference election: every voter submits one ranking per layer.
struct Profile {
  std::size_t m = 0;
  std::size_t p = 0;
  std::vector<std::vector<Ranking>> rankings;  // [voter][layer]

  std::size_t n() const { return rankings.size(); }
  std::size_t t() const { return rankings.empty() ? 0 : rankings.front().size(); }
};

enum class RuleKind { Borda, Plurality, Veto, KApproval };

std::string_view to_string(RuleKind kind);
std::optional<RuleKind> parse_rule_kind(std::string_view text);

struct RuleSpec {
  RuleKind kind = RuleKind::Borda;
  std::optional<std::size_t> k;  // KApproval only

  static RuleSpec borda() { return {RuleKind::Borda, std::nullopt}; }
  static RuleSpec plurality() { return {RuleKind::Plurality, std::nullopt}; }
  static RuleSpec veto() { return {RuleKind::Veto, std::nullopt}; }
  static RuleSpec k_approval(std::size_t k) { return {RuleKind::KApproval, k}; }

  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

// Dense satisfaction tensor, same layout as Instance::sat.
struct Tensor {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t ell = 0;
  std::vector<Satisfaction> cells;

  Satisfaction at(std::size_t voter, std::size_t layer, std::size_t rule) const {
    return cells[(voter * t + layer) * ell + rule];
  }
};

// Throws UsageError unless `ranking` is a permutation of [0, m).
void require_permutation(std::span<const std::size_t> ranking, std::size_t m);

// Throws UsageError on a malformed profile (ragged layers, bad p, non-permutations).
void require_valid(const Profile& profile);

// Throws UsageError when k is missing/present inconsistently or outside [1, m].
void require_valid(const RuleSpec& rule, std::size_t m);

/// Score of candidate `c` in `ranking` under `rule`. Positions are 0-based,
/// 0 = most preferred:
///   Borda       m - 1 - rank
///   Plurality   1 iff rank == 0
///   Veto        0 iff rank == m - 1
///   KApproval   1 iff rank < k
Satisfaction score(const RuleSpec& rule, std::span<const std::size_t> ranking, std::size_t c);

/// tensor[i][j][k] = score(rules[k], rankings[i][j], p).
Tensor build_tensor(const Profile& profile, std::span<const RuleSpec> rules);

Instance make_instance(Tensor tensor, Model model, Satisfaction d, std::size_t alpha);

/// Maps every entry to 1 if >= threshold else 0 and resets d to 1.
/// Only defined for max-model instances, where it preserves feasibility.
Instance dichotomize(const Instance& inst, Satisfaction threshold);

}  // namespace mecsr
