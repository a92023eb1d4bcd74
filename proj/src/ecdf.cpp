#include "gmfb/ecdf.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "gmfb/errors.hpp"

namespace gmfb {

EcdfWindow::EcdfWindow(int num_arms) {
  if (num_arms < 1) throw ConfigError("EcdfWindow: num_arms must be >= 1");
  arms_.resize(static_cast<std::size_t>(num_arms));
}

void EcdfWindow::push(std::int64_t round, const RoundContexts& rc) {
  if (round <= last_round_) {
    throw ContractError("EcdfWindow::push: round " + std::to_string(round) +
                        " not after " + std::to_string(last_round_));
  }
  if (rc.num_arms() != num_arms()) {
    throw ContractError("EcdfWindow::push: expected " +
                        std::to_string(num_arms()) + " contexts, got " +
                        std::to_string(rc.num_arms()));
  }
  for (int a = 0; a < rc.num_arms(); ++a) {
    arms_[a].push_back(Entry{round, rc.has_groups() ? rc.groups[a] : -1,
                             rc.contexts[a]});
  }
  if (rc.has_groups()) has_groups_ = true;
  last_round_ = round;
}

void EcdfWindow::prune(std::int64_t t) {
  const std::int64_t t_tilde = (t - 1) / 2;
  for (auto& dq : arms_) {
    while (!dq.empty() && dq.front().round <= t_tilde) dq.pop_front();
    while (!dq.empty() && dq.back().round >= t) dq.pop_back();
  }
}

std::int64_t EcdfWindow::size() const {
  std::int64_t n = 0;
  for (const auto& dq : arms_) n += static_cast<std::int64_t>(dq.size());
  return n;
}

std::int64_t EcdfWindow::group_count(int group) const {
  std::int64_t n = 0;
  for (const auto& dq : arms_) {
    for (const auto& e : dq) {
      if (e.group == group) ++n;
    }
  }
  return n;
}

std::int64_t EcdfWindow::low_watermark() const {
  std::int64_t low = std::numeric_limits<std::int64_t>::max();
  for (const auto& dq : arms_) {
    if (!dq.empty()) low = std::min(low, dq.front().round);
  }
  return low == std::numeric_limits<std::int64_t>::max() ? 0 : low;
}

RankEstimate EcdfWindow::rank_per_arm(const Eigen::VectorXd& mu, int arm,
                                      const Eigen::VectorXd& query) const {
  const double q = mu.dot(query);
  std::int64_t n = 0;
  std::int64_t count = 0;
  for (const auto& e : arms_[arm]) {
    ++n;
    if (mu.dot(e.context) <= q) ++count;
  }
  if (n == 0) return {0.0, 0};
  return {static_cast<double>(count) / static_cast<double>(n), n};
}

RankEstimate EcdfWindow::rank_per_group(const Eigen::VectorXd& mu, int group,
                                        const Eigen::VectorXd& query) const {
  if (!has_groups_ && size() > 0) {
    throw ContractError("EcdfWindow::rank_per_group: entries carry no group labels");
  }
  const double q = mu.dot(query);
  std::int64_t n = 0;
  std::int64_t count = 0;
  for (const auto& dq : arms_) {
    for (const auto& e : dq) {
      if (e.group != group) continue;
      ++n;
      if (mu.dot(e.context) <= q) ++count;
    }
  }
  if (n == 0) return {0.0, 0};
  return {static_cast<double>(count) / static_cast<double>(n), n};
}

std::vector<RankEstimate> EcdfWindow::rank_all_arms(
    const Eigen::VectorXd& mu, const RoundContexts& rc) const {
  std::vector<RankEstimate> out(static_cast<std::size_t>(rc.num_arms()));
  for (int a = 0; a < rc.num_arms(); ++a) {
    const double q = mu.dot(rc.contexts[a]);
    std::int64_t n = 0;
    std::int64_t count = 0;
    for (const auto& e : arms_[a]) {
      ++n;
      if (mu.dot(e.context) <= q) ++count;
    }
    out[a] = n == 0 ? RankEstimate{0.0, 0}
                    : RankEstimate{static_cast<double>(count) /
                                       static_cast<double>(n),
                                   n};
  }
  return out;
}

std::vector<RankEstimate> EcdfWindow::rank_all_groups(
    const Eigen::VectorXd& mu, const RoundContexts& rc) const {
  if (!rc.has_groups()) {
    throw ContractError("EcdfWindow::rank_all_groups: round carries no group labels");
  }
  if (!has_groups_ && size() > 0) {
    throw ContractError("EcdfWindow::rank_all_groups: entries carry no group labels");
  }
  // One pass over the window; per-group tallies against all K queries.
  std::vector<double> q(static_cast<std::size_t>(rc.num_arms()));
  for (int a = 0; a < rc.num_arms(); ++a) q[a] = mu.dot(rc.contexts[a]);

  std::vector<std::int64_t> n(q.size(), 0);
  std::vector<std::int64_t> count(q.size(), 0);
  for (const auto& dq : arms_) {
    for (const auto& e : dq) {
      const double proj = mu.dot(e.context);
      for (int a = 0; a < rc.num_arms(); ++a) {
        if (e.group != rc.groups[a]) continue;
        ++n[a];
        if (proj <= q[a]) ++count[a];
      }
    }
  }
  std::vector<RankEstimate> out(q.size());
  for (std::size_t a = 0; a < q.size(); ++a) {
    out[a] = n[a] == 0 ? RankEstimate{0.0, 0}
                       : RankEstimate{static_cast<double>(count[a]) /
                                          static_cast<double>(n[a]),
                                      n[a]};
  }
  return out;
}

}  // namespace gmfb
