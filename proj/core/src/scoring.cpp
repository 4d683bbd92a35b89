#include "mecsr/scoring.hpp"

#include <algorithm>

#include "mecsr/errors.hpp"

namespace mecsr {

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Borda: return "borda";
    case RuleKind::Plurality: return "plurality";
    case RuleKind::Veto: return "veto";
    case RuleKind::KApproval: return "kapproval";
  }
  return "borda";
}

std::optional<RuleKind> parse_rule_kind(std::string_view text) {
  if (text == "borda") return RuleKind::Borda;
  if (text == "plurality") return RuleKind::Plurality;
  if (text == "veto") return RuleKind::Veto;
  if (text == "kapproval") return RuleKind::KApproval;
  return std::nullopt;
}

void require_permutation(std::span<const std::size_t> ranking, std::size_t m) {
  if (ranking.size() != m) {
    throw UsageError("ranking has " + std::to_string(ranking.size()) + " entries, expected " +
                     std::to_string(m));
  }
  std::vector<bool> seen(m, false);
  for (std::size_t c : ranking) {
    if (c >= m) throw UsageError("candidate " + std::to_string(c) + " out of range");
    if (seen[c]) throw UsageError("candidate " + std::to_string(c) + " ranked twice");
    seen[c] = true;
  }
}

void require_valid(const Profile& profile) {
  if (profile.m == 0) throw UsageError("profile needs at least one candidate");
  if (profile.p >= profile.m) throw UsageError("distinguished candidate p out of range");
  if (profile.rankings.empty()) throw UsageError("profile needs at least one voter");
  const std::size_t t = profile.t();
  if (t == 0) throw UsageError("profile needs at least one layer");
  for (std::size_t i = 0; i < profile.rankings.size(); ++i) {
    if (profile.rankings[i].size() != t) {
      throw UsageError("voter " + std::to_string(i) + " has " +
                       std::to_string(profile.rankings[i].size()) + " layers, expected " +
                       std::to_string(t));
    }
    for (const auto& ranking : profile.rankings[i]) require_permutation(ranking, profile.m);
  }
}

void require_valid(const RuleSpec& rule, std::size_t m) {
  if (rule.kind == RuleKind::KApproval) {
    if (!rule.k) throw UsageError("kapproval rule needs k");
    if (*rule.k < 1 || *rule.k > m) {
      throw UsageError("kapproval k = " + std::to_string(*rule.k) + " outside [1, " +
                       std::to_string(m) + "]");
    }
  } else if (rule.k) {
    throw UsageError(std::string(to_string(rule.kind)) + " rule takes no k");
  }
}

Satisfaction score(const RuleSpec& rule, std::span<const std::size_t> ranking, std::size_t c) {
  const std::size_t m = ranking.size();
  require_permutation(ranking, m);
  require_valid(rule, m);
  if (c >= m) throw UsageError("candidate " + std::to_string(c) + " out of range");

  const auto rank = static_cast<std::size_t>(std::find(ranking.begin(), ranking.end(), c) -
                                             ranking.begin());
  switch (rule.kind) {
    case RuleKind::Borda: return static_cast<Satisfaction>(m - 1 - rank);
    case RuleKind::Plurality: return rank == 0 ? 1 : 0;
    case RuleKind::Veto: return rank == m - 1 ? 0 : 1;
    case RuleKind::KApproval: return rank < *rule.k ? 1 : 0;
  }
  return 0;
}

Tensor build_tensor(const Profile& profile, std::span<const RuleSpec> rules) {
  if (rules.empty()) throw UsageError("build_tensor needs at least one rule");
  require_valid(profile);
  for (const auto& rule : rules) require_valid(rule, profile.m);

  Tensor out;
  out.n = profile.n();
  out.t = profile.t();
  out.ell = rules.size();
  out.cells.reserve(out.n * out.t * out.ell);
  for (const auto& voter : profile.rankings) {
    for (const auto& ranking : voter) {
      for (const auto& rule : rules) out.cells.push_back(score(rule, ranking, profile.p));
    }
  }
  return out;
}

Instance make_instance(Tensor tensor, Model model, Satisfaction d, std::size_t alpha) {
  Instance inst;
  inst.n = tensor.n;
  inst.t = tensor.t;
  inst.ell = tensor.ell;
  inst.model = model;
  inst.d = d;
  inst.alpha = alpha;
  inst.sat = std::move(tensor.cells);
  return inst;
}

Instance dichotomize(const Instance& inst, Satisfaction threshold) {
  if (inst.model != Model::Max) {
    throw UsageError("dichotomize preserves feasibility only for the max model");
  }
  require_valid(inst);
  Instance out = inst;
  for (auto& v : out.sat) v = v >= threshold ? 1 : 0;
  out.d = 1;
  return out;
}

}  // namespace mecsr
