#ifndef GMFB_POLICIES_HPP_
#define GMFB_POLICIES_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "gmfb/ecdf.hpp"
#include "gmfb/environments.hpp"
#include "gmfb/linmodel.hpp"
#include "gmfb/rng.hpp"
#include "gmfb/types.hpp"

namespace gmfb {

enum class PolicyVariant {
  fair_greedy,
  fair_greedy_v2,
  oful,
  greedy,
  uniform,
  oracle_cdf,
  oracle_rewards,
  gmf_oracle,
};

std::string to_string(PolicyVariant v);
PolicyVariant policy_variant_from_string(const std::string& s);

struct PolicyConfig {
  PolicyVariant variant = PolicyVariant::fair_greedy;
  double lambda = 0.1;
  double rho = 1.0;
  double oful_alpha = 0.1;
  // Grants greedy the true reward vector, turning it into the policy that
  // maximizes the realized reward each round.
  bool use_true_mu = false;

  void validate() const;  // throws ConfigError
};

// Ground truth handed to oracle policy variants by the environment.
struct OracleAccess {
  const TrueRankOracle* ranks = nullptr;
  const Eigen::VectorXd* mu_star = nullptr;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual PolicyDecision select(const RoundContexts& rc, RngStream& rng) = 0;
  virtual void update(const RoundContexts& rc, const PolicyDecision& decision,
                      double reward) = 0;
};

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, int dim,
                                    int num_arms,
                                    const OracleAccess& oracle = {});

// Uniform draw from the exact-equality argmax set of `scores`. Ties are
// exact floating-point ties; no epsilon tolerance.
struct ArgmaxChoice {
  int arm;
  int tie_set_size;
};
ArgmaxChoice argmax_uniform(const std::vector<double>& scores, RngStream& rng);

// ---------------------------------------------------------------------------
// Greedy relative-rank policy
// ---------------------------------------------------------------------------

// At round t the reward model is a ridge estimate on the selections of rounds
// 1..floor((t-1)/2), perturbed with a fresh Gaussian of scale
// rho/(d*sqrt(t_tilde)); the relative rank of each candidate is the empirical
// CDF of its projected reward over the contexts of rounds t_tilde+1..t-1 (per
// arm, or pooled per group when `by_group`). The arm is drawn uniformly from
// the argmax of the rank estimates.
class FairGreedyPolicy : public Policy {
 public:
  FairGreedyPolicy(int dim, int num_arms, double lambda, double rho,
                   bool by_group);

  PolicyDecision select(const RoundContexts& rc, RngStream& rng) override;
  void update(const RoundContexts& rc, const PolicyDecision& decision,
              double reward) override;

  // Bookkeeping diagnostics.
  std::int64_t ridge_count() const { return ridge_.count(); }
  const EcdfWindow& window() const { return window_; }

 private:
  RidgeState ridge_;
  EcdfWindow window_;
  double rho_;
  bool by_group_;
  int num_arms_;
  // Selected (round, context, reward) not yet old enough for the ridge.
  struct Pending {
    std::int64_t round;
    Eigen::VectorXd context;
    double reward;
  };
  std::deque<Pending> pending_;
  std::int64_t next_round_ = 1;
  bool awaiting_update_ = false;
};

// ---------------------------------------------------------------------------
// Reward-based baselines
// ---------------------------------------------------------------------------

// Optimism baseline: argmax of <mu_hat, x> + alpha * sqrt(x^T V^-1 x) over a
// ridge estimate on the full selection history.
class OfulPolicy : public Policy {
 public:
  OfulPolicy(int dim, double lambda, double alpha);
  PolicyDecision select(const RoundContexts& rc, RngStream& rng) override;
  void update(const RoundContexts& rc, const PolicyDecision& decision,
              double reward) override;

 private:
  RidgeState ridge_;
  double alpha_;
};

// Full-history ridge argmax; with `true_mu` supplied it instead maximizes the
// true reward (the optimal policy for the standard regret).
class GreedyPolicy : public Policy {
 public:
  GreedyPolicy(int dim, double lambda);
  explicit GreedyPolicy(const Eigen::VectorXd& true_mu);
  PolicyDecision select(const RoundContexts& rc, RngStream& rng) override;
  void update(const RoundContexts& rc, const PolicyDecision& decision,
              double reward) override;

 private:
  std::unique_ptr<RidgeState> ridge_;  // null when true_mu_ is set
  Eigen::VectorXd true_mu_;
};

class UniformPolicy : public Policy {
 public:
  PolicyDecision select(const RoundContexts& rc, RngStream& rng) override;
  void update(const RoundContexts&, const PolicyDecision&, double) override {}
};

// ---------------------------------------------------------------------------
// Oracle variants
// ---------------------------------------------------------------------------

// True per-group CDF evaluated at the full-history ridge projection.
class OracleCdfPolicy : public Policy {
 public:
  OracleCdfPolicy(int dim, double lambda, const TrueRankOracle& oracle);
  PolicyDecision select(const RoundContexts& rc, RngStream& rng) override;
  void update(const RoundContexts& rc, const PolicyDecision& decision,
              double reward) override;

 private:
  RidgeState ridge_;
  const TrueRankOracle& oracle_;
};

// True reward vector plus an empirical CDF over all contexts received so far
// (no half-window split). Projections are fixed because mu* never changes, so
// they are kept sorted per group for binary-search evaluation.
class OracleRewardsPolicy : public Policy {
 public:
  explicit OracleRewardsPolicy(const Eigen::VectorXd& mu_star);
  PolicyDecision select(const RoundContexts& rc, RngStream& rng) override;
  void update(const RoundContexts& rc, const PolicyDecision& decision,
              double reward) override;

 private:
  double history_rank(int group, double projection) const;
  Eigen::VectorXd mu_star_;
  std::vector<std::vector<double>> sorted_by_group_;
};

// The comparator policy itself: argmax of the true relative rank.
class GmfOraclePolicy : public Policy {
 public:
  GmfOraclePolicy(const Eigen::VectorXd& mu_star, const TrueRankOracle& oracle);
  PolicyDecision select(const RoundContexts& rc, RngStream& rng) override;
  void update(const RoundContexts&, const PolicyDecision&, double) override {}

 private:
  Eigen::VectorXd mu_star_;
  const TrueRankOracle& oracle_;
};

}  // namespace gmfb

#endif  // GMFB_POLICIES_HPP_
