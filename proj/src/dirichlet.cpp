#include "spectrascope/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spectrascope {

std::string to_string(Structure s) {
  switch (s) {
    case Structure::Dense:
      return "dense";
    case Structure::Tridiagonal:
      return "tridiagonal";
    case Structure::GeneralSparse:
      return "sparse";
  }
  return "unknown";
}

DirichletOperator DirichletOperator::from_truncation(const Truncation& t, ThetaKind kind) {
  return from_parts(t.graph, t.boundary_degree, theta_values(t, kind));
}

DirichletOperator DirichletOperator::from_graph(const WeightedGraph& g, ThetaKind kind) {
  return from_parts(g, std::vector<double>(g.size(), 0.0), theta_values(g, kind));
}

DirichletOperator DirichletOperator::from_parts(const WeightedGraph& interior, std::vector<double> boundary,
                                                std::vector<double> theta) {
  if (boundary.size() != interior.size() || theta.size() != interior.size()) {
    throw std::invalid_argument("DirichletOperator: size mismatch");
  }
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] > 0.0) || !std::isfinite(theta[i])) throw std::invalid_argument("theta must be positive");
    if (!(boundary[i] >= 0.0)) throw std::invalid_argument("boundary weight must be non-negative");
  }
  DirichletOperator op;
  op.interior_ = interior;
  op.boundary_ = std::move(boundary);
  op.theta_ = std::move(theta);
  op.finalize();
  return op;
}

void DirichletOperator::finalize() {
  const auto n = size();
  inv_sqrt_theta_.resize(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt_theta_[i] = 1.0 / std::sqrt(theta_[i]);
  has_boundary_ = std::any_of(boundary_.begin(), boundary_.end(), [](double b) { return b > 0.0; });

  bool is_path = n > 0 && interior_.edge_count() + 1 == n;
  for (std::size_t i = 0; is_path && i < n; ++i) is_path = interior_.adjacent(i).size() <= 2;
  is_path = is_path && interior_.is_connected();
  if (is_path) {
    PathForm p;
    std::size_t start = 0;
    while (interior_.adjacent(start).size() > 1) ++start;
    std::size_t prev = n, cur = start;
    for (std::size_t k = 0; k < n; ++k) {
      p.order.push_back(cur);
      p.boundary.push_back(boundary_[cur]);
      p.theta.push_back(theta_[cur]);
      std::size_t next = n;
      for (const auto& a : interior_.adjacent(cur)) {
        if (a.index != prev) {
          next = a.index;
          p.edge.push_back(a.weight);
        }
      }
      prev = cur;
      cur = next;
    }
    path_ = std::move(p);
    structure_ = Structure::Tridiagonal;
  } else {
    structure_ = n <= kDenseLimit ? Structure::Dense : Structure::GeneralSparse;
  }
}

void DirichletOperator::apply(std::span<const double> v, std::span<double> out) const {
  const auto n = size();
  if (v.size() != n || out.size() != n) throw std::invalid_argument("DirichletOperator::apply: size mismatch");
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = v[i] * inv_sqrt_theta_[i];
    out[i] = boundary_[i] * u[i];
  }
  for (const auto& e : interior_.edges()) {
    const double d = e.weight * (u[e.u] - u[e.v]);
    out[e.u] += d;
    out[e.v] -= d;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] *= inv_sqrt_theta_[i];
}

Eigen::VectorXd DirichletOperator::apply(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out(v.size());
  apply(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())),
        std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

Eigen::MatrixXd DirichletOperator::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = boundary_[i] * inv_sqrt_theta_[i] * inv_sqrt_theta_[i];
  for (const auto& e : interior_.edges()) {
    const double s = inv_sqrt_theta_[e.u] * inv_sqrt_theta_[e.v];
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    m(u, u) += e.weight * inv_sqrt_theta_[e.u] * inv_sqrt_theta_[e.u];
    m(v, v) += e.weight * inv_sqrt_theta_[e.v] * inv_sqrt_theta_[e.v];
    m(u, v) -= e.weight * s;
    m(v, u) -= e.weight * s;
  }
  return m;
}

Eigen::SparseMatrix<double> DirichletOperator::sparse() const {
  const auto n = static_cast<Eigen::Index>(size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(size() + 4 * interior_.edge_count());
  for (Eigen::Index i = 0; i < n; ++i) trips.emplace_back(i, i, boundary_[i] * inv_sqrt_theta_[i] * inv_sqrt_theta_[i]);
  for (const auto& e : interior_.edges()) {
    const double s = inv_sqrt_theta_[e.u] * inv_sqrt_theta_[e.v];
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    trips.emplace_back(u, u, e.weight * inv_sqrt_theta_[e.u] * inv_sqrt_theta_[e.u]);
    trips.emplace_back(v, v, e.weight * inv_sqrt_theta_[e.v] * inv_sqrt_theta_[e.v]);
    trips.emplace_back(u, v, -e.weight * s);
    trips.emplace_back(v, u, -e.weight * s);
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

double DirichletOperator::gershgorin_upper() const {
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double row = (interior_.degree(i) + boundary_[i]) * inv_sqrt_theta_[i] * inv_sqrt_theta_[i];
    for (const auto& a : interior_.adjacent(i)) row += a.weight * inv_sqrt_theta_[i] * inv_sqrt_theta_[a.index];
    best = std::max(best, row);
  }
  return best;
}

double DirichletOperator::rayleigh_quotient(const Eigen::VectorXd& v) const {
  const double nn = v.squaredNorm();
  if (!(nn > 0.0)) throw std::invalid_argument("rayleigh_quotient: zero vector");
  return v.dot(apply(v)) / nn;
}

double dirichlet_form(const WeightedGraph& graph, std::span<const double> f, std::span<const double> g) {
  if (f.size() != graph.size() || g.size() != graph.size()) throw std::invalid_argument("dirichlet_form: size mismatch");
  double s = 0.0;
  for (const auto& e : graph.edges()) s += e.weight * (f[e.v] - f[e.u]) * (g[e.v] - g[e.u]);
  return s;
}

double dirichlet_form(const Truncation& t, std::span<const double> f, std::span<const double> g) {
  double s = dirichlet_form(t.graph, f, g);
  for (std::size_t i = 0; i < t.size(); ++i) s += t.boundary_degree[i] * f[i] * g[i];
  return s;
}

double inner_product(std::span<const double> theta, std::span<const double> f, std::span<const double> g) {
  if (f.size() != theta.size() || g.size() != theta.size()) throw std::invalid_argument("inner_product: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) s += theta[i] * f[i] * g[i];
  return s;
}

namespace {

std::vector<double> generator(const WeightedGraph& g, std::span<const double> boundary,
                              const std::vector<double>& theta, std::span<const double> f) {
  if (f.size() != g.size()) throw std::invalid_argument("apply_generator: size mismatch");
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double s = boundary.empty() ? 0.0 : -boundary[i] * f[i];
    for (const auto& a : g.adjacent(i)) s += a.weight * (f[a.index] - f[i]);
    out[i] = s / theta[i];
  }
  return out;
}

}  // namespace

std::vector<double> apply_generator(const WeightedGraph& graph, ThetaKind kind, std::span<const double> f) {
  return generator(graph, {}, theta_values(graph, kind), f);
}

std::vector<double> apply_generator(const Truncation& t, ThetaKind kind, std::span<const double> f) {
  return generator(t.graph, t.boundary_degree, theta_values(t, kind), f);
}

}  // namespace spectrascope
