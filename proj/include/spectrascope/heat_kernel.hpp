#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spectrascope/dirichlet.hpp"

namespace spectrascope {

/// p_t(x, y) on a finite vertex set from the eigendecomposition of M. Built
/// from a whole graph it is the conservative kernel; built from a Dirichlet
/// operator it is the kernel of the walk killed on leaving the set.
class ExactHeatKernel {
 public:
  explicit ExactHeatKernel(const DirichletOperator& op);
  ExactHeatKernel(const WeightedGraph& graph, ThetaKind theta);

  std::size_t size() const noexcept { return theta_.size(); }
  /// Matrix of p_t(x, y) (dense indices).
  Eigen::MatrixXd kernel(double t) const;
  double operator()(double t, std::size_t x, std::size_t y) const;
  /// ||P_t|| on L^2(theta), computed from the kernel matrix.
  double semigroup_norm(double t) const;
  /// Smallest eigenvalue of M.
  double lambda_min() const { return values_[0]; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }

 private:
  void init(const DirichletOperator& op);

  std::vector<double> theta_;
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

/// Matrix of p_t(x, y) on a finite graph.
Eigen::MatrixXd heat_kernel_exact(const WeightedGraph& graph, ThetaKind theta, double t);

struct DecayFit {
  double lambda = 0.0;  ///< minus the slope of log p_t against t on the tail window
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t points = 0;
  double residual = 0.0;
};

/// Fits log p against t over the samples with t >= t_min + (1 - window) (t_max - t_min).
/// Throws std::invalid_argument with fewer than 3 points or a non-positive value in the window.
DecayFit lambda0_from_decay(std::span<const double> t, std::span<const double> p, double window = 0.5);

}  // namespace spectrascope
