#include "gmfb/environments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <utility>

#include "gmfb/errors.hpp"

namespace gmfb {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Synthetic
// ---------------------------------------------------------------------------

void SyntheticSpec::validate() const {
  if (num_arms < 1) throw ConfigError("SyntheticSpec: num_arms must be >= 1");
  if (latent_dim < 1) throw ConfigError("SyntheticSpec: latent_dim must be >= 1");
  if (noise_sigma < 0.0) throw ConfigError("SyntheticSpec: noise_sigma must be >= 0");
  if (mu_star.size() != dim()) {
    throw ConfigError("SyntheticSpec: mu_star has size " +
                      std::to_string(mu_star.size()) + ", expected " +
                      std::to_string(dim()));
  }
}

SyntheticEnv::SyntheticEnv(SyntheticSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)),
      noise_stream_(derive_seed(seed, 0, "env-noise")) {
  spec_.validate();
  arm_streams_.reserve(static_cast<std::size_t>(spec_.num_arms));
  for (int a = 0; a < spec_.num_arms; ++a) {
    arm_streams_.emplace_back(
        derive_seed(seed, static_cast<std::uint64_t>(a), "env-arm"));
  }
}

std::string SyntheticEnv::group_label(int group) const {
  return "g" + std::to_string(group + 1);
}

Eigen::VectorXd SyntheticEnv::sample_group_context(int group,
                                                   RngStream& rng) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(dim());
  const int offset = spec_.latent_dim * group;
  for (int j = 0; j < spec_.latent_dim; ++j) {
    x[offset + j] = rng.uniform01();
  }
  x[dim() - 1] = spec_.bias_scale * static_cast<double>(group + 1);
  return x;
}

EnvRound SyntheticEnv::next_round() {
  EnvRound r;
  r.rc.round = ++round_;
  r.rc.contexts.resize(static_cast<std::size_t>(spec_.num_arms));
  r.true_rewards.resize(static_cast<std::size_t>(spec_.num_arms));
  r.noisy_rewards.resize(static_cast<std::size_t>(spec_.num_arms));
  const double noise = spec_.noise_sigma * noise_stream_.gaussian();
  for (int a = 0; a < spec_.num_arms; ++a) {
    Eigen::VectorXd x = sample_group_context(a, arm_streams_[a]);
    r.true_rewards[a] = spec_.mu_star.dot(x);
    r.noisy_rewards[a] = r.true_rewards[a] + noise;
    r.rc.contexts[a] = std::move(x);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dataset preparation
// ---------------------------------------------------------------------------

namespace {

ColumnStats column_stats(const CsvTable& table, std::size_t col) {
  double sum = 0.0;
  const auto n = static_cast<double>(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    sum += parse_double_cell(table.rows[i][col], i + 2, table.columns[col]);
  }
  const double mean = sum / n;
  double sq = 0.0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double v =
        parse_double_cell(table.rows[i][col], i + 2, table.columns[col]);
    sq += (v - mean) * (v - mean);
  }
  return {mean, std::sqrt(sq / n)};
}

}  // namespace

std::int64_t DatasetBundle::total_rows() const {
  std::int64_t n = 0;
  for (const auto& g : rows_by_group) n += static_cast<std::int64_t>(g.size());
  return n;
}

DatasetBundle dataset_prepare(const CsvTable& reference,
                              const CsvTable& sampling,
                              const DatasetSpec& spec) {
  if (spec.feature_columns.empty()) {
    throw ConfigError("dataset_prepare: no feature columns declared");
  }
  if (reference.rows.empty() || sampling.rows.empty()) {
    throw ConfigError("dataset_prepare: empty split");
  }

  std::vector<std::size_t> ref_cols, smp_cols;
  for (const auto& name : spec.feature_columns) {
    ref_cols.push_back(reference.column_index(name));
    smp_cols.push_back(sampling.column_index(name));
  }
  const std::size_t ref_target = reference.column_index(spec.target_column);
  const std::size_t smp_target = sampling.column_index(spec.target_column);
  const std::size_t smp_group = sampling.column_index(spec.group_column);

  DatasetBundle bundle;
  bundle.spec = spec;

  // Normalization statistics from the reference split only.
  for (std::size_t j = 0; j < ref_cols.size(); ++j) {
    const ColumnStats stats = column_stats(reference, ref_cols[j]);
    if (stats.stddev == 0.0) {
      throw ConfigError("dataset_prepare: feature '" +
                        spec.feature_columns[j] +
                        "' has zero variance in the reference split");
    }
    bundle.feature_stats.push_back(stats);
  }
  bundle.target_stats = column_stats(reference, ref_target);
  if (bundle.target_stats.stddev == 0.0) bundle.target_stats.stddev = 1.0;

  // Count sampling rows per group, keep groups at or above the threshold.
  std::map<std::string, std::int64_t> counts;
  for (const auto& row : sampling.rows) ++counts[row[smp_group]];
  for (const auto& [label, count] : counts) {
    if (count >= spec.min_group_count) bundle.group_labels.push_back(label);
  }
  if (bundle.group_labels.empty()) {
    throw ConfigError("dataset_prepare: no group reaches min_group_count = " +
                      std::to_string(spec.min_group_count));
  }
  std::map<std::string, int> group_id;
  for (int g = 0; g < bundle.num_groups(); ++g) {
    group_id[bundle.group_labels[g]] = g;
  }

  // Normalize the retained sampling rows.
  const int d = bundle.dim();
  bundle.rows_by_group.resize(static_cast<std::size_t>(bundle.num_groups()));
  bundle.targets_by_group.resize(static_cast<std::size_t>(bundle.num_groups()));
  for (std::size_t i = 0; i < sampling.rows.size(); ++i) {
    const auto& row = sampling.rows[i];
    const auto it = group_id.find(row[smp_group]);
    if (it == group_id.end()) continue;
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j) {
      const double raw = parse_double_cell(row[smp_cols[j]], i + 2,
                                           spec.feature_columns[j]);
      x[j] = (raw - bundle.feature_stats[j].mean) /
             bundle.feature_stats[j].stddev;
    }
    const double raw_target =
        parse_double_cell(row[smp_target], i + 2, spec.target_column);
    const double y = (raw_target - bundle.target_stats.mean) /
                     bundle.target_stats.stddev;
    bundle.rows_by_group[it->second].push_back(std::move(x));
    bundle.targets_by_group[it->second].push_back(y);
  }

  // Ridge fit of the normalized target on the normalized features.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Identity(d, d) * spec.ridge_lambda;
  Eigen::VectorXd xty = Eigen::VectorXd::Zero(d);
  for (int g = 0; g < bundle.num_groups(); ++g) {
    for (std::size_t i = 0; i < bundle.rows_by_group[g].size(); ++i) {
      const Eigen::VectorXd& x = bundle.rows_by_group[g][i];
      gram.noalias() += x * x.transpose();
      xty.noalias() += bundle.targets_by_group[g][i] * x;
    }
  }
  bundle.fitted_mu = gram.ldlt().solve(xty);
  return bundle;
}

// ---------------------------------------------------------------------------
// Bundle persistence
// ---------------------------------------------------------------------------

void save_bundle(const DatasetBundle& bundle, const std::string& path) {
  json j;
  j["format"] = "gmfb-dataset-bundle-v1";
  j["feature_columns"] = bundle.spec.feature_columns;
  j["group_column"] = bundle.spec.group_column;
  j["target_column"] = bundle.spec.target_column;
  j["ridge_lambda"] = bundle.spec.ridge_lambda;
  j["min_group_count"] = bundle.spec.min_group_count;
  j["noise_sigma"] = bundle.spec.noise_sigma;
  json stats = json::array();
  for (const auto& s : bundle.feature_stats) {
    stats.push_back({{"mean", s.mean}, {"std", s.stddev}});
  }
  j["feature_stats"] = std::move(stats);
  j["target_stats"] = {{"mean", bundle.target_stats.mean},
                       {"std", bundle.target_stats.stddev}};
  j["fitted_mu"] = std::vector<double>(
      bundle.fitted_mu.data(), bundle.fitted_mu.data() + bundle.fitted_mu.size());
  json groups = json::array();
  for (int g = 0; g < bundle.num_groups(); ++g) {
    json jg;
    jg["label"] = bundle.group_labels[g];
    jg["targets"] = bundle.targets_by_group[g];
    json rows = json::array();
    for (const auto& x : bundle.rows_by_group[g]) {
      rows.push_back(std::vector<double>(x.data(), x.data() + x.size()));
    }
    jg["rows"] = std::move(rows);
    groups.push_back(std::move(jg));
  }
  j["groups"] = std::move(groups);

  std::ofstream out(path);
  if (!out) throw ConfigError("save_bundle: cannot write '" + path + "'");
  out << j.dump(1) << "\n";
}

DatasetBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("load_bundle: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("load_bundle: '" + path + "' is not valid JSON: " + e.what());
  }
  if (j.value("format", "") != "gmfb-dataset-bundle-v1") {
    throw ConfigError("load_bundle: '" + path + "' has unknown format");
  }
  DatasetBundle bundle;
  bundle.spec.feature_columns = j.at("feature_columns").get<std::vector<std::string>>();
  bundle.spec.group_column = j.at("group_column").get<std::string>();
  bundle.spec.target_column = j.at("target_column").get<std::string>();
  bundle.spec.ridge_lambda = j.at("ridge_lambda").get<double>();
  bundle.spec.min_group_count = j.at("min_group_count").get<std::int64_t>();
  bundle.spec.noise_sigma = j.at("noise_sigma").get<double>();
  for (const auto& s : j.at("feature_stats")) {
    bundle.feature_stats.push_back({s.at("mean").get<double>(), s.at("std").get<double>()});
  }
  bundle.target_stats = {j.at("target_stats").at("mean").get<double>(),
                         j.at("target_stats").at("std").get<double>()};
  const auto mu = j.at("fitted_mu").get<std::vector<double>>();
  bundle.fitted_mu = Eigen::Map<const Eigen::VectorXd>(mu.data(),
                                                       static_cast<Eigen::Index>(mu.size()));
  for (const auto& jg : j.at("groups")) {
    bundle.group_labels.push_back(jg.at("label").get<std::string>());
    bundle.targets_by_group.push_back(jg.at("targets").get<std::vector<double>>());
    std::vector<Eigen::VectorXd> rows;
    for (const auto& jr : jg.at("rows")) {
      const auto vals = jr.get<std::vector<double>>();
      rows.push_back(Eigen::Map<const Eigen::VectorXd>(
          vals.data(), static_cast<Eigen::Index>(vals.size())));
    }
    bundle.rows_by_group.push_back(std::move(rows));
  }
  return bundle;
}

// ---------------------------------------------------------------------------
// Dataset environment
// ---------------------------------------------------------------------------

DatasetEnv::DatasetEnv(DatasetBundle bundle, DatasetMode mode, int num_arms,
                       std::uint64_t seed)
    : bundle_(std::move(bundle)),
      mode_(mode),
      num_arms_(num_arms),
      row_stream_(derive_seed(seed, 0, "env-rows")),
      noise_stream_(derive_seed(seed, 0, "env-noise")) {
  if (num_arms_ < 1) throw ConfigError("DatasetEnv: num_arms must be >= 1");
  if (mode_ == DatasetMode::fixed_group_per_arm &&
      num_arms_ != bundle_.num_groups()) {
    throw ConfigError("DatasetEnv: fixed_group_per_arm requires num_arms == " +
                      std::to_string(bundle_.num_groups()) + " groups, got " +
                      std::to_string(num_arms_));
  }
  for (int g = 0; g < bundle_.num_groups(); ++g) {
    if (bundle_.rows_by_group[g].empty()) {
      throw ConfigError("DatasetEnv: group '" + bundle_.group_labels[g] +
                        "' has no rows");
    }
    for (std::size_t i = 0; i < bundle_.rows_by_group[g].size(); ++i) {
      pooled_.emplace_back(g, i);
    }
  }
}

Eigen::VectorXd DatasetEnv::sample_group_context(int group,
                                                 RngStream& rng) const {
  const auto& rows = bundle_.rows_by_group[group];
  return rows[rng.uniform_index(rows.size())];
}

EnvRound DatasetEnv::next_round() {
  EnvRound r;
  r.rc.round = ++round_;
  r.rc.contexts.resize(static_cast<std::size_t>(num_arms_));
  r.true_rewards.resize(static_cast<std::size_t>(num_arms_));
  r.noisy_rewards.resize(static_cast<std::size_t>(num_arms_));
  const bool recorded_mode = bundle_.spec.noise_sigma == 0.0;
  if (!fixed_group()) r.rc.groups.resize(static_cast<std::size_t>(num_arms_));

  const double noise =
      recorded_mode ? 0.0 : bundle_.spec.noise_sigma * noise_stream_.gaussian();
  for (int a = 0; a < num_arms_; ++a) {
    int g = a;
    std::size_t idx = 0;
    if (mode_ == DatasetMode::fixed_group_per_arm) {
      idx = row_stream_.uniform_index(bundle_.rows_by_group[g].size());
    } else {
      const auto pick = pooled_[row_stream_.uniform_index(pooled_.size())];
      g = pick.first;
      idx = pick.second;
      r.rc.groups[a] = g;
    }
    const Eigen::VectorXd& x = bundle_.rows_by_group[g][idx];
    r.true_rewards[a] = bundle_.fitted_mu.dot(x);
    r.noisy_rewards[a] = recorded_mode ? bundle_.targets_by_group[g][idx]
                                       : r.true_rewards[a] + noise;
    r.rc.contexts[a] = x;
  }
  return r;
}

// ---------------------------------------------------------------------------
// True rank oracle
// ---------------------------------------------------------------------------

TrueRankOracle TrueRankOracle::build(const Environment& env,
                                     std::int64_t samples_per_group,
                                     RngStream& rng) {
  if (samples_per_group < 1) {
    throw ConfigError("TrueRankOracle: samples_per_group must be >= 1");
  }
  TrueRankOracle oracle;
  oracle.samples_per_group_ = samples_per_group;
  oracle.sorted_.resize(static_cast<std::size_t>(env.num_groups()));
  for (int g = 0; g < env.num_groups(); ++g) {
    auto& projections = oracle.sorted_[g];
    projections.resize(static_cast<std::size_t>(samples_per_group));
    for (auto& p : projections) {
      p = env.mu_star().dot(env.sample_group_context(g, rng));
    }
    std::sort(projections.begin(), projections.end());
  }
  return oracle;
}

double TrueRankOracle::rank(int group, double reward) const {
  const auto& projections = sorted_[group];
  const auto it =
      std::upper_bound(projections.begin(), projections.end(), reward);
  return static_cast<double>(it - projections.begin()) /
         static_cast<double>(projections.size());
}

}  // namespace gmfb
