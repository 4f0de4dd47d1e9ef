#include "spectrascope/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spectrascope {

ExactHeatKernel::ExactHeatKernel(const DirichletOperator& op) { init(op); }

ExactHeatKernel::ExactHeatKernel(const WeightedGraph& graph, ThetaKind theta) {
  init(DirichletOperator::from_graph(graph, theta));
}

void ExactHeatKernel::init(const DirichletOperator& op) {
  if (op.size() == 0) throw std::invalid_argument("ExactHeatKernel: empty vertex set");
  theta_.assign(op.theta().begin(), op.theta().end());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
  if (es.info() != Eigen::Success) throw std::runtime_error("ExactHeatKernel: eigensolver failed");
  values_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Eigen::MatrixXd ExactHeatKernel::kernel(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("heat kernel needs t >= 0");
  const Eigen::VectorXd decay = (-t * values_.array()).exp();
  Eigen::MatrixXd s = vectors_ * decay.asDiagonal() * vectors_.transpose();
  const auto n = static_cast<Eigen::Index>(size());
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) s(x, y) /= std::sqrt(theta_[x] * theta_[y]);
  }
  return s;
}

double ExactHeatKernel::operator()(double t, std::size_t x, std::size_t y) const {
  if (!(t >= 0.0)) throw std::invalid_argument("heat kernel needs t >= 0");
  const auto xi = static_cast<Eigen::Index>(x), yi = static_cast<Eigen::Index>(y);
  double s = 0.0;
  for (Eigen::Index k = 0; k < values_.size(); ++k) s += std::exp(-t * values_[k]) * vectors_(xi, k) * vectors_(yi, k);
  return s / std::sqrt(theta_.at(x) * theta_.at(y));
}

double ExactHeatKernel::semigroup_norm(double t) const {
  Eigen::MatrixXd s = kernel(t);
  const auto n = static_cast<Eigen::Index>(size());
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) s(x, y) *= std::sqrt(theta_[x] * theta_[y]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd heat_kernel_exact(const WeightedGraph& graph, ThetaKind theta, double t) {
  return ExactHeatKernel(graph, theta).kernel(t);
}

DecayFit lambda0_from_decay(std::span<const double> t, std::span<const double> p, double window) {
  if (t.size() != p.size()) throw std::invalid_argument("lambda0_from_decay: size mismatch");
  if (t.empty()) throw std::invalid_argument("lambda0_from_decay: no samples");
  if (!(window > 0.0 && window <= 1.0)) throw std::invalid_argument("lambda0_from_decay: window must lie in (0, 1]");
  const double lo = t.front() + (1.0 - window) * (t.back() - t.front());
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < lo) continue;
    if (!(p[i] > 0.0)) throw std::invalid_argument("lambda0_from_decay: non-positive kernel value in the window");
    xs.push_back(t[i]);
    ys.push_back(std::log(p[i]));
  }
  if (xs.size() < 3) throw std::invalid_argument("lambda0_from_decay: need at least 3 points in the window");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  DecayFit fit;
  const double slope = sxy / sxx;
  fit.lambda = -slope;
  fit.t_min = xs.front();
  fit.t_max = xs.back();
  fit.points = xs.size();
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (my + slope * (xs[i] - mx));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace spectrascope
