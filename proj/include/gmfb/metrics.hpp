#ifndef GMFB_METRICS_HPP_
#define GMFB_METRICS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gmfb {

// Per-round outcome of one replication.
struct RoundRecord {
  std::int64_t round = 0;
  int chosen_arm = 0;
  int chosen_group = 0;
  double fair_inst_regret = 0.0;  // best_rank - chosen_rank, in [0, 1]
  double std_inst_regret = 0.0;   // best true reward - chosen true reward
  double chosen_rank = 0.0;
  double best_rank = 0.0;
};

struct RunTrace {
  std::vector<RoundRecord> records;
  std::vector<std::int64_t> selection_by_arm;
  std::vector<std::int64_t> selection_by_group;
  std::vector<std::int64_t> received_by_group;  // candidates offered per group
  std::uint64_t context_stream_hash = 0;
};

// Gap between the top relative rank in the pool and the chosen one.
double fair_instant_regret(std::span<const double> true_ranks, int chosen);

// Gap between the best realized reward in the pool and the chosen one.
double standard_instant_regret(std::span<const double> true_rewards,
                               int chosen);

struct GroupSelectionStat {
  int group = 0;
  double fraction_mean = 0.0;
  double fraction_std = 0.0;
  int defined_traces = 0;  // traces in which the group was offered at all
};

// Across-seed mean and sample standard deviation (n-1 denominator) of the
// cumulative regret curves, plus per-group selection fractions
// (selected / received within each trace). Groups never offered in a trace
// contribute no sample; groups never offered at all are omitted.
struct AggregateCurves {
  std::vector<double> fair_mean, fair_std;  // index = round-1
  std::vector<double> std_mean, std_std;
  std::vector<GroupSelectionStat> selection;
};

AggregateCurves aggregate(const std::vector<RunTrace>& traces);

// Half-width of the DKWM confidence band for an ECDF on n samples.
double dkwm_epsilon(std::int64_t n, double delta);

}  // namespace gmfb

#endif  // GMFB_METRICS_HPP_
