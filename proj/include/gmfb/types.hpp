#ifndef GMFB_TYPES_HPP_
#define GMFB_TYPES_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace gmfb {

// The K candidate feature vectors delivered at one round. `groups` holds the
// sensitive group of each candidate; it is empty in fixed-group mode, where
// group coincides with arm index.
struct RoundContexts {
  std::int64_t round = 0;
  std::vector<Eigen::VectorXd> contexts;
  std::vector<int> groups;

  int num_arms() const { return static_cast<int>(contexts.size()); }
  bool has_groups() const { return !groups.empty(); }
  // Group of candidate a, falling back to the arm index in fixed-group mode.
  int group_of(int arm) const { return has_groups() ? groups[arm] : arm; }
};

// Outcome of one policy selection. rank_estimates is populated by rank-based
// policies only; reward-based policies (greedy, OFUL, uniform) leave it empty.
struct PolicyDecision {
  int arm = 0;
  std::optional<std::vector<double>> rank_estimates;
  int tie_set_size = 1;
};

}  // namespace gmfb

#endif  // GMFB_TYPES_HPP_
