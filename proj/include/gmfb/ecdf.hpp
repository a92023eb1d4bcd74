#ifndef GMFB_ECDF_HPP_
#define GMFB_ECDF_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <deque>
#include <vector>

#include "gmfb/types.hpp"

namespace gmfb {

// Empirical CDF value: value * sample_count is the integer count of stored
// projections not exceeding the query projection.
struct RankEstimate {
  double value = 0.0;
  std::int64_t sample_count = 0;
};

// Sliding store of the contexts received in rounds t_tilde+1 .. t-1,
// partitioned by arm. Raw contexts are kept (not projections) because the
// reward estimate changes every round; projections are recomputed on demand.
class EcdfWindow {
 public:
  explicit EcdfWindow(int num_arms);

  // Append all K contexts of a round. Rounds must arrive strictly increasing.
  void push(std::int64_t round, const RoundContexts& rc);

  // Retain exactly the entries with round index in [floor((t-1)/2)+1, t-1].
  void prune(std::int64_t t);

  // Fraction of stored arm-a projections <mu, X> that are <= <mu, query>.
  // Empty sample -> value 0 by convention.
  RankEstimate rank_per_arm(const Eigen::VectorXd& mu, int arm,
                            const Eigen::VectorXd& query) const;

  // Same, pooling entries of one group across all arms. Requires entries
  // pushed with group labels.
  RankEstimate rank_per_group(const Eigen::VectorXd& mu, int group,
                              const Eigen::VectorXd& query) const;

  // Batch forms used by the policies: projections of the stored contexts are
  // computed once and reused for all K queries. Results are identical to the
  // per-query calls above.
  std::vector<RankEstimate> rank_all_arms(const Eigen::VectorXd& mu,
                                          const RoundContexts& rc) const;
  std::vector<RankEstimate> rank_all_groups(const Eigen::VectorXd& mu,
                                            const RoundContexts& rc) const;

  int num_arms() const { return static_cast<int>(arms_.size()); }
  std::int64_t size() const;
  std::int64_t arm_count(int arm) const {
    return static_cast<std::int64_t>(arms_[arm].size());
  }
  std::int64_t group_count(int group) const;
  std::int64_t low_watermark() const;  // smallest retained round, 0 if empty

 private:
  struct Entry {
    std::int64_t round;
    int group;  // -1 when the round carried no group labels
    Eigen::VectorXd context;
  };

  std::vector<std::deque<Entry>> arms_;
  std::int64_t last_round_ = 0;
  bool has_groups_ = false;
};

}  // namespace gmfb

#endif  // GMFB_ECDF_HPP_
