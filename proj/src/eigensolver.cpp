#include "spectrascope/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <Eigen/SparseCholesky>

namespace spectrascope {

std::string to_string(EigenMethod m) {
  switch (m) {
    case EigenMethod::Auto:
      return "auto";
    case EigenMethod::Dense:
      return "dense";
    case EigenMethod::Sturm:
      return "sturm";
    case EigenMethod::Lanczos:
      return "lanczos";
  }
  return "unknown";
}

EigenMethod parse_eigen_method(const std::string& text) {
  if (text == "auto") return EigenMethod::Auto;
  if (text == "dense") return EigenMethod::Dense;
  if (text == "sturm") return EigenMethod::Sturm;
  if (text == "lanczos") return EigenMethod::Lanczos;
  throw std::invalid_argument("unknown eigen method '" + text + "'");
}

namespace {

constexpr double kTinyPivot = 1e-300;

double pivot_guard(double d) { return d == 0.0 ? kTinyPivot : d; }

void finish(const DirichletOperator& op, SpectralEstimate& est, Eigen::VectorXd v, bool keep_vector) {
  v.normalize();
  est.residual = (op.apply(v) - est.lambda * v).norm();
  if (keep_vector) est.vector.assign(v.data(), v.data() + v.size());
}

Eigen::VectorXd sqrt_theta(const DirichletOperator& op) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(op.size()));
  for (std::size_t i = 0; i < op.size(); ++i) v[static_cast<Eigen::Index>(i)] = std::sqrt(op.theta()[i]);
  return v;
}

// Kernel of M when nothing leaks out: M (theta^{1/2}) = 0.
SpectralEstimate null_state(const DirichletOperator& op, EigenMethod method, bool keep_vector) {
  SpectralEstimate est;
  est.method = method;
  est.n = op.size();
  est.lambda = 0.0;
  est.trace = {0.0};
  finish(op, est, sqrt_theta(op), keep_vector);
  return est;
}

SpectralEstimate dense_smallest(const DirichletOperator& op, bool keep_vector) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
  if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed", 0.0, 0.0);
  SpectralEstimate est;
  est.method = EigenMethod::Dense;
  est.n = op.size();
  est.lambda = es.eigenvalues()[0];
  est.bracket_lo = est.bracket_hi = est.lambda;
  est.trace = {est.lambda};
  finish(op, est, es.eigenvectors().col(0), keep_vector);
  return est;
}

// Inverse iteration on (Q - sigma Theta) u = Theta u_prev along the path.
Eigen::VectorXd path_inverse_iteration(const DirichletOperator::PathForm& p, double sigma) {
  const std::size_t n = p.order.size();
  std::vector<double> u(n, 1.0), d(n), z(n);
  for (int it = 0; it < 3; ++it) {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w_next = i + 1 < n ? p.edge[i] : 0.0;
      if (i == 0) {
        e = p.boundary[0] - sigma * p.theta[0];
      } else {
        const double w = p.edge[i - 1];
        e = p.boundary[i] + w * e / d[i - 1] - sigma * p.theta[i];
      }
      d[i] = pivot_guard(w_next + e);
    }
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = p.theta[i] * u[i];
      if (i > 0) z[i] += p.edge[i - 1] / d[i - 1] * z[i - 1];
    }
    for (std::size_t i = 0; i < n; ++i) z[i] /= d[i];
    for (std::size_t k = n; k-- > 0;) {
      u[k] = z[k];
      if (k + 1 < n) u[k] += p.edge[k] / d[k] * u[k + 1];
    }
    double scale = 0.0;
    for (const double x : u) scale = std::max(scale, std::abs(x));
    if (!(scale > 0.0) || !std::isfinite(scale)) break;
    for (double& x : u) x /= scale;
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    v[static_cast<Eigen::Index>(p.order[i])] = std::sqrt(p.theta[i]) * u[i];
  }
  return v;
}

SpectralEstimate sturm_smallest(const DirichletOperator& op, double tol, bool keep_vector) {
  const auto* p = op.path();
  if (!p) throw std::invalid_argument("Sturm bisection needs a path operator");
  double theta_sum = 0.0, boundary_sum = 0.0;
  for (std::size_t i = 0; i < p->theta.size(); ++i) {
    theta_sum += p->theta[i];
    boundary_sum += p->boundary[i];
  }
  double lo = 0.0;
  double hi = std::min(op.gershgorin_upper(), boundary_sum / theta_sum);
  hi = hi * (1.0 + 1e-12) + std::numeric_limits<double>::min();
  while (sturm_count(*p, hi) == 0) hi *= 2.0;

  SpectralEstimate est;
  est.method = EigenMethod::Sturm;
  est.n = op.size();
  const double floor = 4.0 * std::numeric_limits<double>::epsilon();
  while (hi - lo > tol && hi - lo > floor * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (sturm_count(*p, mid) == 0 ? lo : hi) = mid;
    est.trace.push_back(0.5 * (lo + hi));
    ++est.iterations;
  }
  est.bracket_lo = lo;
  est.bracket_hi = hi;
  est.lambda = 0.5 * (lo + hi);
  finish(op, est, path_inverse_iteration(*p, lo), keep_vector);
  return est;
}

using Apply = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct Ritz {
  double value = 0.0;
  Eigen::VectorXd vector;
  std::size_t applies = 0;
};

// One Lanczos cycle with full reorthogonalisation; returns the largest Ritz pair.
Ritz lanczos_cycle(const Apply& apply, const Eigen::VectorXd& start, Eigen::Index m) {
  const Eigen::Index n = start.size();
  Eigen::MatrixXd v(n, m + 1);
  Eigen::VectorXd alpha(m), beta(m);
  v.col(0) = start.normalized();
  Eigen::VectorXd w(n);
  Ritz out;
  Eigen::Index k = 0;
  for (; k < m; ++k) {
    apply(v.col(k), w);
    ++out.applies;
    alpha[k] = v.col(k).dot(w);
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd c = v.leftCols(k + 1).transpose() * w;
      w.noalias() -= v.leftCols(k + 1) * c;
    }
    beta[k] = w.norm();
    if (beta[k] <= 1e-13 * std::abs(alpha[k]) || beta[k] == 0.0) {
      ++k;
      break;
    }
    v.col(k + 1) = w / beta[k];
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  out.value = es.eigenvalues()[k - 1];
  out.vector = v.leftCols(k) * es.eigenvectors().col(k - 1);
  out.vector.normalize();
  return out;
}

constexpr Eigen::Index kLanczosVectors = 40;

// Restarted Lanczos on `apply`, judged by the Rayleigh quotient and residual of M.
SpectralEstimate restarted_lanczos(const DirichletOperator& op, const Apply& apply, Eigen::VectorXd start,
                                   double tol, bool keep_vector, std::size_t& applies) {
  const auto n = static_cast<Eigen::Index>(op.size());
  const std::size_t budget = std::max<std::size_t>(10 * op.size(), 200);
  const Eigen::Index m = std::min(n, kLanczosVectors);
  SpectralEstimate est;
  est.method = EigenMethod::Lanczos;
  est.n = op.size();
  double best_res = std::numeric_limits<double>::infinity();
  double best_lambda = 0.0;
  while (true) {
    auto ritz = lanczos_cycle(apply, start, m);
    applies += ritz.applies;
    const Eigen::VectorXd my = op.apply(ritz.vector);
    ++applies;
    const double rq = ritz.vector.dot(my);
    const double res = (my - rq * ritz.vector).norm();
    est.trace.push_back(rq);
    ++est.iterations;
    if (res < best_res) {
      best_res = res;
      best_lambda = rq;
    }
    if (res <= tol || m == n) {
      est.lambda = rq;
      est.bracket_lo = est.bracket_hi = rq;
      finish(op, est, ritz.vector, keep_vector);
      return est;
    }
    if (applies >= budget) {
      throw SolverError("Lanczos did not converge within " + std::to_string(budget) + " operator applications",
                        best_lambda, best_res);
    }
    start = ritz.vector;
  }
}

SpectralEstimate lanczos_smallest(const DirichletOperator& op, double tol, bool keep_vector) {
  if (!op.has_boundary()) return null_state(op, EigenMethod::Lanczos, keep_vector);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(op.sparse());
  if (ldlt.info() != Eigen::Success) throw SolverError("sparse LDL^T factorisation failed", 0.0, 0.0);
  std::size_t applies = 0;
  const Apply inverse = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = ldlt.solve(x); };
  return restarted_lanczos(op, inverse, sqrt_theta(op), tol, keep_vector, applies);
}

}  // namespace

std::size_t sturm_count(const DirichletOperator::PathForm& p, double lambda) {
  const std::size_t n = p.order.size();
  std::size_t negatives = 0;
  double e = 0.0, d_prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      e = p.boundary[0] - lambda * p.theta[0];
    } else {
      const double w = p.edge[i - 1];
      e = p.boundary[i] + w * e / d_prev - lambda * p.theta[i];
    }
    const double d = pivot_guard((i + 1 < n ? p.edge[i] : 0.0) + e);
    if (d < 0.0) ++negatives;
    d_prev = d;
  }
  return negatives;
}

SpectralEstimate smallest_eigenvalue(const DirichletOperator& op, double tol, EigenMethod method, bool keep_vector) {
  if (op.size() == 0) throw std::invalid_argument("smallest_eigenvalue: empty operator");
  if (!(tol > 0.0)) throw std::invalid_argument("smallest_eigenvalue: tol must be positive");
  if (method == EigenMethod::Auto) {
    switch (op.structure()) {
      case Structure::Tridiagonal:
        method = EigenMethod::Sturm;
        break;
      case Structure::Dense:
        method = EigenMethod::Dense;
        break;
      case Structure::GeneralSparse:
        method = EigenMethod::Lanczos;
        break;
    }
  }
  switch (method) {
    case EigenMethod::Dense:
      return dense_smallest(op, keep_vector);
    case EigenMethod::Sturm:
      if (!op.has_boundary()) return null_state(op, EigenMethod::Sturm, keep_vector);
      return sturm_smallest(op, tol, keep_vector);
    case EigenMethod::Lanczos:
      return lanczos_smallest(op, tol, keep_vector);
    case EigenMethod::Auto:
      break;
  }
  throw std::logic_error("unreachable");
}

SpectralEstimate largest_eigenvalue(const DirichletOperator& op, double tol) {
  if (op.size() == 0) throw std::invalid_argument("largest_eigenvalue: empty operator");
  if (op.size() <= kDenseLimit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.dense());
    SpectralEstimate est;
    est.method = EigenMethod::Dense;
    est.n = op.size();
    const auto last = es.eigenvalues().size() - 1;
    est.lambda = es.eigenvalues()[last];
    est.bracket_lo = est.bracket_hi = est.lambda;
    est.trace = {est.lambda};
    finish(op, est, es.eigenvectors().col(last), false);
    return est;
  }
  std::size_t applies = 0;
  const Apply forward = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = op.apply(x); };
  Eigen::VectorXd start(static_cast<Eigen::Index>(op.size()));
  for (Eigen::Index i = 0; i < start.size(); ++i) start[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + 1e-3 * (i % 7));
  return restarted_lanczos(op, forward, start, tol, false, applies);
}

}  // namespace spectrascope
