#ifndef GMFB_ENVIRONMENTS_HPP_
#define GMFB_ENVIRONMENTS_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gmfb/csv.hpp"
#include "gmfb/rng.hpp"
#include "gmfb/types.hpp"

namespace gmfb {

// One generated round: the contexts handed to the policy plus the ground
// truth kept aside for metrics. noisy_rewards[a] is what the agent observes
// if it selects arm a.
struct EnvRound {
  RoundContexts rc;
  std::vector<double> true_rewards;
  std::vector<double> noisy_rewards;
};

class Environment {
 public:
  virtual ~Environment() = default;
  virtual EnvRound next_round() = 0;
  virtual int dim() const = 0;
  virtual int num_arms() const = 0;
  virtual int num_groups() const = 0;
  // True when rounds carry no group labels and group coincides with arm.
  virtual bool fixed_group() const = 0;
  virtual std::string group_label(int group) const = 0;
  virtual const Eigen::VectorXd& mu_star() const = 0;
  // Fresh context from one group's distribution, for oracle construction.
  virtual Eigen::VectorXd sample_group_context(int group,
                                               RngStream& rng) const = 0;
};

// ---------------------------------------------------------------------------
// Synthetic group-structured generator
// ---------------------------------------------------------------------------

// Each arm a (1-based) embeds a uniform-[0,1]^latent_dim latent block at
// coordinates [latent_dim*(a-1)+1, latent_dim*a] and puts bias_scale*a in the
// last coordinate; everything else is zero. Rewards are <mu_star, X> plus
// centered Gaussian noise of scale noise_sigma, shared across arms within a
// round.
struct SyntheticSpec {
  int num_arms = 4;
  int latent_dim = 4;
  double bias_scale = 3.0;
  double noise_sigma = 2.0;
  Eigen::VectorXd mu_star;  // size latent_dim * num_arms + 1

  int dim() const { return latent_dim * num_arms + 1; }
  void validate() const;  // throws ConfigError
};

class SyntheticEnv : public Environment {
 public:
  // Arm latents come from disjoint substreams derived from `seed`, so the
  // reward processes of different arms are independent.
  SyntheticEnv(SyntheticSpec spec, std::uint64_t seed);

  EnvRound next_round() override;
  int dim() const override { return spec_.dim(); }
  int num_arms() const override { return spec_.num_arms; }
  int num_groups() const override { return spec_.num_arms; }
  bool fixed_group() const override { return true; }
  std::string group_label(int group) const override;
  const Eigen::VectorXd& mu_star() const override { return spec_.mu_star; }
  Eigen::VectorXd sample_group_context(int group,
                                       RngStream& rng) const override;
  const SyntheticSpec& spec() const { return spec_; }

 private:
  SyntheticSpec spec_;
  std::vector<RngStream> arm_streams_;
  RngStream noise_stream_;
  std::int64_t round_ = 0;
};

// ---------------------------------------------------------------------------
// Dataset-backed sampler
// ---------------------------------------------------------------------------

// Declares how to read a raw CSV pair into a bandit population.
// noise_sigma = 0 selects the recorded-target-as-noisy-reward mode; a
// positive value adds centered Gaussian noise to the true reward instead.
struct DatasetSpec {
  std::vector<std::string> feature_columns;
  std::string group_column;
  std::string target_column;
  double ridge_lambda = 1e-8;
  std::int64_t min_group_count = 5000;
  double noise_sigma = 0.0;
};

struct ColumnStats {
  double mean = 0.0;
  double stddev = 1.0;
};

// Normalized population ready for sampling: per-group feature rows and
// recorded targets, the normalization that produced them, and the reward
// vector fitted on the normalized sampling split.
struct DatasetBundle {
  DatasetSpec spec;
  std::vector<std::string> group_labels;  // sorted; index = group id
  std::vector<ColumnStats> feature_stats;
  ColumnStats target_stats;
  Eigen::VectorXd fitted_mu;
  std::vector<std::vector<Eigen::VectorXd>> rows_by_group;
  std::vector<std::vector<double>> targets_by_group;

  int dim() const { return static_cast<int>(spec.feature_columns.size()); }
  int num_groups() const { return static_cast<int>(group_labels.size()); }
  std::int64_t total_rows() const;
};

// Normalization statistics come from the reference split only; rows, group
// filtering (groups below spec.min_group_count are dropped) and the ridge fit
// (lambda = spec.ridge_lambda) use the sampling split.
DatasetBundle dataset_prepare(const CsvTable& reference,
                              const CsvTable& sampling,
                              const DatasetSpec& spec);

void save_bundle(const DatasetBundle& bundle, const std::string& path);
DatasetBundle load_bundle(const std::string& path);

enum class DatasetMode {
  fixed_group_per_arm,  // arm a samples from group a; requires K == #groups
  iid_pool,             // K rows i.i.d. from the pooled population
};

class DatasetEnv : public Environment {
 public:
  // The bundle is shared read-only so that parallel replications do not copy
  // the population.
  DatasetEnv(std::shared_ptr<const DatasetBundle> bundle, DatasetMode mode,
             int num_arms, std::uint64_t seed);

  EnvRound next_round() override;
  int dim() const override { return bundle_->dim(); }
  int num_arms() const override { return num_arms_; }
  int num_groups() const override { return bundle_->num_groups(); }
  bool fixed_group() const override {
    return mode_ == DatasetMode::fixed_group_per_arm;
  }
  std::string group_label(int group) const override {
    return bundle_->group_labels[group];
  }
  const Eigen::VectorXd& mu_star() const override { return bundle_->fitted_mu; }
  Eigen::VectorXd sample_group_context(int group,
                                       RngStream& rng) const override;
  const DatasetBundle& bundle() const { return *bundle_; }

 private:
  std::shared_ptr<const DatasetBundle> bundle_;
  DatasetMode mode_;
  int num_arms_;
  std::vector<std::pair<int, std::size_t>> pooled_;  // (group, row) index
  RngStream row_stream_;
  RngStream noise_stream_;
  std::int64_t round_ = 0;
};

// ---------------------------------------------------------------------------
// True relative-rank oracle
// ---------------------------------------------------------------------------

// Ground-truth CDF of each group's reward distribution, approximated by
// sorted projections of samples_per_group draws. Evaluation is
// count(<= query) / N by binary search, so the rank resolution is 1/N.
class TrueRankOracle {
 public:
  static TrueRankOracle build(const Environment& env,
                              std::int64_t samples_per_group, RngStream& rng);

  double rank(int group, double reward) const;
  int num_groups() const { return static_cast<int>(sorted_.size()); }
  std::int64_t samples_per_group() const { return samples_per_group_; }

 private:
  std::vector<std::vector<double>> sorted_;
  std::int64_t samples_per_group_ = 0;
};

}  // namespace gmfb

#endif  // GMFB_ENVIRONMENTS_HPP_
