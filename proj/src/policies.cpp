#include "gmfb/policies.hpp"

#include <algorithm>
#include <cmath>

#include "gmfb/errors.hpp"

namespace gmfb {

std::string to_string(PolicyVariant v) {
  switch (v) {
    case PolicyVariant::fair_greedy: return "fair_greedy";
    case PolicyVariant::fair_greedy_v2: return "fair_greedy_v2";
    case PolicyVariant::oful: return "oful";
    case PolicyVariant::greedy: return "greedy";
    case PolicyVariant::uniform: return "uniform";
    case PolicyVariant::oracle_cdf: return "oracle_cdf";
    case PolicyVariant::oracle_rewards: return "oracle_rewards";
    case PolicyVariant::gmf_oracle: return "gmf_oracle";
  }
  return "unknown";
}

PolicyVariant policy_variant_from_string(const std::string& s) {
  for (const PolicyVariant v :
       {PolicyVariant::fair_greedy, PolicyVariant::fair_greedy_v2,
        PolicyVariant::oful, PolicyVariant::greedy, PolicyVariant::uniform,
        PolicyVariant::oracle_cdf, PolicyVariant::oracle_rewards,
        PolicyVariant::gmf_oracle}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("unknown policy variant '" + s + "'");
}

void PolicyConfig::validate() const {
  if (!(lambda > 0.0)) throw ConfigError("PolicyConfig: lambda must be > 0");
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw ConfigError("PolicyConfig: rho must be in (0, 1]");
  }
  if (oful_alpha < 0.0) {
    throw ConfigError("PolicyConfig: oful_alpha must be >= 0");
  }
}

ArgmaxChoice argmax_uniform(const std::vector<double>& scores,
                            RngStream& rng) {
  double best = scores[0];
  for (const double s : scores) best = std::max(best, s);
  int ties = 0;
  for (const double s : scores) {
    if (s == best) ++ties;
  }
  std::size_t pick = rng.uniform_index(static_cast<std::size_t>(ties));
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (scores[a] == best) {
      if (pick == 0) return {static_cast<int>(a), ties};
      --pick;
    }
  }
  return {0, ties};  // unreachable
}

// ---------------------------------------------------------------------------
// FairGreedyPolicy
// ---------------------------------------------------------------------------

FairGreedyPolicy::FairGreedyPolicy(int dim, int num_arms, double lambda,
                                   double rho, bool by_group)
    : ridge_(dim, lambda),
      window_(num_arms),
      rho_(rho),
      by_group_(by_group),
      num_arms_(num_arms) {}

PolicyDecision FairGreedyPolicy::select(const RoundContexts& rc,
                                        RngStream& rng) {
  const std::int64_t t = rc.round;
  if (awaiting_update_ || t != next_round_) {
    throw ContractError("FairGreedyPolicy::select: expected round " +
                        std::to_string(next_round_) + ", got " +
                        std::to_string(t));
  }
  if (rc.num_arms() != num_arms_) {
    throw ContractError("FairGreedyPolicy::select: arm count changed");
  }
  if (by_group_ && !rc.has_groups()) {
    throw ContractError("FairGreedyPolicy::select: round carries no group labels");
  }
  const std::int64_t t_tilde = (t - 1) / 2;

  // Move selections of rounds <= t_tilde into the ridge estimate and drop
  // them (and anything older than t_tilde+1) from the rank window.
  while (!pending_.empty() && pending_.front().round <= t_tilde) {
    ridge_.absorb(pending_.front().context, pending_.front().reward);
    pending_.pop_front();
  }
  window_.prune(t);

  const PerturbedEstimate estimate = ridge_.perturbed(t_tilde, rho_, rng);
  const std::vector<RankEstimate> ranks =
      by_group_ ? window_.rank_all_groups(estimate.mu, rc)
                : window_.rank_all_arms(estimate.mu, rc);

  std::vector<double> values(ranks.size());
  for (std::size_t a = 0; a < ranks.size(); ++a) values[a] = ranks[a].value;
  const ArgmaxChoice choice = argmax_uniform(values, rng);

  PolicyDecision decision;
  decision.arm = choice.arm;
  decision.tie_set_size = choice.tie_set_size;
  decision.rank_estimates = std::move(values);
  awaiting_update_ = true;
  return decision;
}

void FairGreedyPolicy::update(const RoundContexts& rc,
                              const PolicyDecision& decision, double reward) {
  if (!awaiting_update_ || rc.round != next_round_) {
    throw ContractError("FairGreedyPolicy::update: no matching select");
  }
  window_.push(rc.round, rc);
  pending_.push_back(Pending{rc.round, rc.contexts[decision.arm], reward});
  awaiting_update_ = false;
  ++next_round_;
}

// ---------------------------------------------------------------------------
// OfulPolicy
// ---------------------------------------------------------------------------

OfulPolicy::OfulPolicy(int dim, double lambda, double alpha)
    : ridge_(dim, lambda), alpha_(alpha) {}

PolicyDecision OfulPolicy::select(const RoundContexts& rc, RngStream& rng) {
  const Eigen::VectorXd mu_hat = ridge_.solve();
  std::vector<double> scores(static_cast<std::size_t>(rc.num_arms()));
  for (int a = 0; a < rc.num_arms(); ++a) {
    const Eigen::VectorXd& x = rc.contexts[a];
    const double width = std::sqrt(x.dot(ridge_.gram_inv() * x));
    scores[a] = mu_hat.dot(x) + alpha_ * width;
  }
  const ArgmaxChoice choice = argmax_uniform(scores, rng);
  return {choice.arm, std::nullopt, choice.tie_set_size};
}

void OfulPolicy::update(const RoundContexts& rc,
                        const PolicyDecision& decision, double reward) {
  ridge_.absorb(rc.contexts[decision.arm], reward);
}

// ---------------------------------------------------------------------------
// GreedyPolicy
// ---------------------------------------------------------------------------

GreedyPolicy::GreedyPolicy(int dim, double lambda)
    : ridge_(std::make_unique<RidgeState>(dim, lambda)) {}

GreedyPolicy::GreedyPolicy(const Eigen::VectorXd& true_mu)
    : true_mu_(true_mu) {}

PolicyDecision GreedyPolicy::select(const RoundContexts& rc, RngStream& rng) {
  const Eigen::VectorXd mu = ridge_ ? ridge_->solve() : true_mu_;
  std::vector<double> scores(static_cast<std::size_t>(rc.num_arms()));
  for (int a = 0; a < rc.num_arms(); ++a) scores[a] = mu.dot(rc.contexts[a]);
  const ArgmaxChoice choice = argmax_uniform(scores, rng);
  return {choice.arm, std::nullopt, choice.tie_set_size};
}

void GreedyPolicy::update(const RoundContexts& rc,
                          const PolicyDecision& decision, double reward) {
  if (ridge_) ridge_->absorb(rc.contexts[decision.arm], reward);
}

// ---------------------------------------------------------------------------
// UniformPolicy
// ---------------------------------------------------------------------------

PolicyDecision UniformPolicy::select(const RoundContexts& rc, RngStream& rng) {
  const int arm = static_cast<int>(
      rng.uniform_index(static_cast<std::size_t>(rc.num_arms())));
  return {arm, std::nullopt, rc.num_arms()};
}

// ---------------------------------------------------------------------------
// OracleCdfPolicy
// ---------------------------------------------------------------------------

OracleCdfPolicy::OracleCdfPolicy(int dim, double lambda,
                                 const TrueRankOracle& oracle)
    : ridge_(dim, lambda), oracle_(oracle) {}

PolicyDecision OracleCdfPolicy::select(const RoundContexts& rc,
                                       RngStream& rng) {
  const Eigen::VectorXd mu_hat = ridge_.solve();
  std::vector<double> ranks(static_cast<std::size_t>(rc.num_arms()));
  for (int a = 0; a < rc.num_arms(); ++a) {
    ranks[a] = oracle_.rank(rc.group_of(a), mu_hat.dot(rc.contexts[a]));
  }
  const ArgmaxChoice choice = argmax_uniform(ranks, rng);
  PolicyDecision decision{choice.arm, std::nullopt, choice.tie_set_size};
  decision.rank_estimates = std::move(ranks);
  return decision;
}

void OracleCdfPolicy::update(const RoundContexts& rc,
                             const PolicyDecision& decision, double reward) {
  ridge_.absorb(rc.contexts[decision.arm], reward);
}

// ---------------------------------------------------------------------------
// OracleRewardsPolicy
// ---------------------------------------------------------------------------

OracleRewardsPolicy::OracleRewardsPolicy(const Eigen::VectorXd& mu_star)
    : mu_star_(mu_star) {}

double OracleRewardsPolicy::history_rank(int group, double projection) const {
  if (group >= static_cast<int>(sorted_by_group_.size())) return 0.0;
  const auto& sorted = sorted_by_group_[group];
  if (sorted.empty()) return 0.0;
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), projection);
  return static_cast<double>(it - sorted.begin()) /
         static_cast<double>(sorted.size());
}

PolicyDecision OracleRewardsPolicy::select(const RoundContexts& rc,
                                           RngStream& rng) {
  std::vector<double> ranks(static_cast<std::size_t>(rc.num_arms()));
  for (int a = 0; a < rc.num_arms(); ++a) {
    ranks[a] = history_rank(rc.group_of(a), mu_star_.dot(rc.contexts[a]));
  }
  const ArgmaxChoice choice = argmax_uniform(ranks, rng);
  PolicyDecision decision{choice.arm, std::nullopt, choice.tie_set_size};
  decision.rank_estimates = std::move(ranks);
  return decision;
}

void OracleRewardsPolicy::update(const RoundContexts& rc,
                                 const PolicyDecision&, double) {
  for (int a = 0; a < rc.num_arms(); ++a) {
    const int group = rc.group_of(a);
    if (group >= static_cast<int>(sorted_by_group_.size())) {
      sorted_by_group_.resize(static_cast<std::size_t>(group) + 1);
    }
    auto& sorted = sorted_by_group_[group];
    const double projection = mu_star_.dot(rc.contexts[a]);
    sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), projection),
                  projection);
  }
}

// ---------------------------------------------------------------------------
// GmfOraclePolicy
// ---------------------------------------------------------------------------

GmfOraclePolicy::GmfOraclePolicy(const Eigen::VectorXd& mu_star,
                                 const TrueRankOracle& oracle)
    : mu_star_(mu_star), oracle_(oracle) {}

PolicyDecision GmfOraclePolicy::select(const RoundContexts& rc,
                                       RngStream& rng) {
  std::vector<double> ranks(static_cast<std::size_t>(rc.num_arms()));
  for (int a = 0; a < rc.num_arms(); ++a) {
    ranks[a] = oracle_.rank(rc.group_of(a), mu_star_.dot(rc.contexts[a]));
  }
  const ArgmaxChoice choice = argmax_uniform(ranks, rng);
  PolicyDecision decision{choice.arm, std::nullopt, choice.tie_set_size};
  decision.rank_estimates = std::move(ranks);
  return decision;
}

// ---------------------------------------------------------------------------
// Factory
// ---------------------------------------------------------------------------

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, int dim,
                                    int num_arms,
                                    const OracleAccess& oracle) {
  config.validate();
  const auto need_ranks = [&]() {
    if (oracle.ranks == nullptr) {
      throw ConfigError("policy '" + to_string(config.variant) +
                        "' requires the true rank oracle");
    }
    return oracle.ranks;
  };
  const auto need_mu = [&]() {
    if (oracle.mu_star == nullptr) {
      throw ConfigError("policy '" + to_string(config.variant) +
                        "' requires the true reward vector");
    }
    return oracle.mu_star;
  };
  switch (config.variant) {
    case PolicyVariant::fair_greedy:
      return std::make_unique<FairGreedyPolicy>(dim, num_arms, config.lambda,
                                                config.rho, /*by_group=*/false);
    case PolicyVariant::fair_greedy_v2:
      return std::make_unique<FairGreedyPolicy>(dim, num_arms, config.lambda,
                                                config.rho, /*by_group=*/true);
    case PolicyVariant::oful:
      return std::make_unique<OfulPolicy>(dim, config.lambda,
                                          config.oful_alpha);
    case PolicyVariant::greedy:
      if (config.use_true_mu) {
        return std::make_unique<GreedyPolicy>(*need_mu());
      }
      return std::make_unique<GreedyPolicy>(dim, config.lambda);
    case PolicyVariant::uniform:
      return std::make_unique<UniformPolicy>();
    case PolicyVariant::oracle_cdf:
      return std::make_unique<OracleCdfPolicy>(dim, config.lambda,
                                               *need_ranks());
    case PolicyVariant::oracle_rewards:
      return std::make_unique<OracleRewardsPolicy>(*need_mu());
    case PolicyVariant::gmf_oracle:
      return std::make_unique<GmfOraclePolicy>(*need_mu(), *need_ranks());
  }
  throw ConfigError("unknown policy variant");
}

}  // namespace gmfb
