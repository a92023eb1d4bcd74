#include "gmfb/linmodel.hpp"

#include <cmath>
#include <string>

#include "gmfb/errors.hpp"

namespace gmfb {

RidgeState::RidgeState(int dim, double lambda, std::int64_t refactor_every)
    : lambda_(lambda), refactor_every_(refactor_every) {
  if (dim < 1) throw ConfigError("RidgeState: dim must be >= 1");
  if (!(lambda > 0.0)) throw ConfigError("RidgeState: lambda must be > 0");
  if (refactor_every < 1) throw ConfigError("RidgeState: refactor_every must be >= 1");
  gram_ = Eigen::MatrixXd::Identity(dim, dim) * lambda;
  gram_inv_ = Eigen::MatrixXd::Identity(dim, dim) / lambda;
  response_ = Eigen::VectorXd::Zero(dim);
}

void RidgeState::absorb(const Eigen::VectorXd& x, double reward) {
  if (x.size() != gram_.rows()) {
    throw ContractError("RidgeState::absorb: context has dimension " +
                        std::to_string(x.size()) + ", expected " +
                        std::to_string(gram_.rows()));
  }
  gram_.noalias() += x * x.transpose();
  response_.noalias() += reward * x;

  // Sherman-Morrison: (V + x x^T)^-1 = V^-1 - (V^-1 x)(V^-1 x)^T / (1 + x^T V^-1 x)
  const Eigen::VectorXd vx = gram_inv_ * x;
  const double denom = 1.0 + x.dot(vx);
  gram_inv_.noalias() -= (vx * vx.transpose()) / denom;

  ++count_;
  if (count_ % refactor_every_ == 0) refactorize();
}

void RidgeState::refactorize() {
  const auto dim = gram_.rows();
  gram_inv_ = gram_.llt().solve(Eigen::MatrixXd::Identity(dim, dim));
  // Restore exact symmetry lost to the solve.
  gram_inv_ = ((gram_inv_ + gram_inv_.transpose()) * 0.5).eval();
}

PerturbedEstimate RidgeState::perturbed(std::int64_t t_tilde, double rho,
                                        RngStream& rng) const {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw ConfigError("RidgeState::perturbed: rho must be in (0, 1]");
  }
  PerturbedEstimate out;
  if (t_tilde <= 0) {
    out.mu = Eigen::VectorXd::Zero(dim());
    out.base = Eigen::VectorXd::Zero(dim());
    out.noise_scale = 0.0;
    return out;
  }
  out.base = solve();
  out.noise_scale = rho / (static_cast<double>(dim()) *
                           std::sqrt(static_cast<double>(t_tilde)));
  Eigen::VectorXd g(dim());
  for (int i = 0; i < dim(); ++i) g[i] = rng.gaussian();
  out.mu = out.base + out.noise_scale * g;
  return out;
}

}  // namespace gmfb
