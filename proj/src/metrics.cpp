#include "gmfb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmfb/errors.hpp"

namespace gmfb {

double fair_instant_regret(std::span<const double> true_ranks, int chosen) {
  double best = true_ranks[0];
  for (const double r : true_ranks) best = std::max(best, r);
  return best - true_ranks[static_cast<std::size_t>(chosen)];
}

double standard_instant_regret(std::span<const double> true_rewards,
                               int chosen) {
  double best = true_rewards[0];
  for (const double r : true_rewards) best = std::max(best, r);
  return best - true_rewards[static_cast<std::size_t>(chosen)];
}

namespace {

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

MeanStd mean_sample_std(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (const double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() < 2) return {mean, 0.0};
  double sq = 0.0;
  for (const double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / (n - 1.0))};
}

}  // namespace

AggregateCurves aggregate(const std::vector<RunTrace>& traces) {
  if (traces.empty()) throw ContractError("aggregate: no traces");
  const std::size_t horizon = traces[0].records.size();
  for (const auto& trace : traces) {
    if (trace.records.size() != horizon) {
      throw ContractError("aggregate: traces disagree on horizon (" +
                          std::to_string(trace.records.size()) + " vs " +
                          std::to_string(horizon) + ")");
    }
  }

  AggregateCurves out;
  out.fair_mean.resize(horizon);
  out.fair_std.resize(horizon);
  out.std_mean.resize(horizon);
  out.std_std.resize(horizon);

  // Cumulative curves per trace, then across-trace statistics per round.
  std::vector<std::vector<double>> fair(traces.size()), std_(traces.size());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    fair[i].resize(horizon);
    std_[i].resize(horizon);
    double cf = 0.0, cs = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
      cf += traces[i].records[t].fair_inst_regret;
      cs += traces[i].records[t].std_inst_regret;
      fair[i][t] = cf;
      std_[i][t] = cs;
    }
  }
  std::vector<double> column(traces.size());
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < traces.size(); ++i) column[i] = fair[i][t];
    const MeanStd mf = mean_sample_std(column);
    out.fair_mean[t] = mf.mean;
    out.fair_std[t] = mf.stddev;
    for (std::size_t i = 0; i < traces.size(); ++i) column[i] = std_[i][t];
    const MeanStd ms = mean_sample_std(column);
    out.std_mean[t] = ms.mean;
    out.std_std[t] = ms.stddev;
  }

  std::size_t num_groups = 0;
  for (const auto& trace : traces) {
    num_groups = std::max(num_groups, trace.received_by_group.size());
  }
  for (std::size_t g = 0; g < num_groups; ++g) {
    std::vector<double> fractions;
    for (const auto& trace : traces) {
      if (g >= trace.received_by_group.size()) continue;
      const auto received = trace.received_by_group[g];
      if (received == 0) continue;  // never offered in this trace: no sample
      fractions.push_back(static_cast<double>(trace.selection_by_group[g]) /
                          static_cast<double>(received));
    }
    if (fractions.empty()) continue;
    const MeanStd stat = mean_sample_std(fractions);
    out.selection.push_back(GroupSelectionStat{
        static_cast<int>(g), stat.mean, stat.stddev,
        static_cast<int>(fractions.size())});
  }
  return out;
}

double dkwm_epsilon(std::int64_t n, double delta) {
  if (n < 1) throw ConfigError("dkwm_epsilon: n must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ConfigError("dkwm_epsilon: delta must be in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace gmfb
