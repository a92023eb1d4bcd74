#ifndef GMFB_HARNESS_HPP_
#define GMFB_HARNESS_HPP_

#include <cstdint>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gmfb/environments.hpp"
#include "gmfb/metrics.hpp"
#include "gmfb/policies.hpp"

namespace gmfb {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct DatasetEnvConfig {
  // Either a prepared bundle...
  std::string bundle_path;
  // ...or a raw CSV pair plus its reading spec.
  std::string reference_csv;
  std::string sampling_csv;
  DatasetSpec dataset_spec;

  DatasetMode mode = DatasetMode::iid_pool;
  int num_arms = 10;

  bool use_bundle() const { return !bundle_path.empty(); }
};

struct EnvironmentConfig {
  enum class Type { synthetic, dataset };
  Type type = Type::synthetic;
  SyntheticSpec synthetic;
  DatasetEnvConfig dataset;
};

struct PolicySpec {
  std::string name;  // unique within the experiment; also the output file key
  PolicyConfig config;
};

struct ExperimentConfig {
  std::string preset;  // informational echo; empty for hand-written configs
  EnvironmentConfig env;
  std::vector<PolicySpec> policies;
  std::int64_t horizon = 10000;
  int num_seeds = 10;
  std::uint64_t base_seed = 1;
  std::int64_t oracle_samples_per_group = 1'000'000;
  std::string output_dir = "results";
  std::int64_t record_stride = 10;
  bool overwrite = false;
  int threads = 1;

  void validate() const;  // throws ConfigError before any round executes
};

struct PolicyResult {
  std::string name;
  AggregateCurves curves;
  std::vector<RunTrace> traces;  // one per seed, in seed order
};

struct ResultBundle {
  std::vector<PolicyResult> policies;
  std::vector<std::string> group_labels;
  std::vector<std::uint64_t> seeds;
  nlohmann::json config_echo;  // fully resolved; reproduces the run
  double oracle_rank_resolution = 0.0;
  double wall_clock_seconds = 0.0;  // in-memory only, never written to files
};

// Plays every (policy, seed) cell and aggregates. All policies at a given
// seed face the same context and noise stream (common random numbers).
ResultBundle run_experiment(const ExperimentConfig& cfg);

// Plays one replication; exposed for tests and diagnostics.
RunTrace play_rounds(Environment& env, Policy& policy,
                     const TrueRankOracle& oracle, RngStream& policy_rng,
                     std::int64_t horizon);

// Writes curves_<policy>.csv, selection_<policy>.csv and manifest.json into
// `dir`. Refuses to overwrite existing files unless `overwrite`; on failure
// any partially written file of this call is removed.
void emit_outputs(const ResultBundle& bundle, const std::string& dir,
                  bool overwrite);

std::unique_ptr<Environment> make_environment(const EnvironmentConfig& cfg,
                                              std::uint64_t seed);

// Built-in experiment presets. Dataset presets point at the fixture CSVs
// under `data_dir`.
std::vector<std::string> preset_names();
ExperimentConfig make_preset(const std::string& name,
                             const std::string& data_dir = "data");

nlohmann::json config_to_json(const ExperimentConfig& cfg);
// Accepts a full config or `{"preset": "...", <field overrides>}`; overrides
// replace the preset's fields wholesale.
ExperimentConfig config_from_json(const nlohmann::json& j,
                                  const std::string& data_dir = "data");
ExperimentConfig load_config_file(const std::string& path,
                                  const std::string& data_dir = "data");

}  // namespace gmfb

#endif  // GMFB_HARNESS_HPP_
