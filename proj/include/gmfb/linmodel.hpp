#ifndef GMFB_LINMODEL_HPP_
#define GMFB_LINMODEL_HPP_

#include <Eigen/Dense>
#include <cstdint>

#include "gmfb/rng.hpp"

namespace gmfb {

// A possibly noise-perturbed estimate of the reward vector.
struct PerturbedEstimate {
  Eigen::VectorXd mu;          // base + noise_scale * g
  Eigen::VectorXd base;        // unperturbed ridge solution V^-1 b
  double noise_scale = 0.0;    // rho / (d * sqrt(t_tilde)); 0 when t_tilde = 0
};

// Regularized least-squares state for the linear reward model.
//
// Maintains V = X^T X + lambda*I, its inverse, and b = X^T r. The inverse is
// updated with the Sherman-Morrison rank-one formula on every absorb and
// recomputed from scratch by a symmetric solve every `refactor_every` absorbs,
// which keeps V * V^-1 within 1e-8 of the identity over long runs.
class RidgeState {
 public:
  RidgeState(int dim, double lambda, std::int64_t refactor_every = 512);

  // Absorb one (context, reward) sample.
  void absorb(const Eigen::VectorXd& x, double reward);

  // Unperturbed ridge solution V^-1 b.
  Eigen::VectorXd solve() const { return gram_inv_ * response_; }

  // Gaussian-perturbed estimate with scale rho / (dim * sqrt(t_tilde)).
  // When t_tilde = 0 the estimate is the zero vector with zero noise.
  PerturbedEstimate perturbed(std::int64_t t_tilde, double rho,
                              RngStream& rng) const;

  int dim() const { return static_cast<int>(gram_.rows()); }
  double lambda() const { return lambda_; }
  std::int64_t count() const { return count_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::MatrixXd& gram_inv() const { return gram_inv_; }
  const Eigen::VectorXd& response() const { return response_; }

 private:
  void refactorize();

  Eigen::MatrixXd gram_;
  Eigen::MatrixXd gram_inv_;
  Eigen::VectorXd response_;
  double lambda_ = 0.0;
  std::int64_t count_ = 0;
  std::int64_t refactor_every_ = 512;
};

}  // namespace gmfb

#endif  // GMFB_LINMODEL_HPP_
