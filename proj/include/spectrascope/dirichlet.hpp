#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "spectrascope/graph.hpp"
#include "spectrascope/truncation.hpp"

namespace spectrascope {

enum class Structure { Dense, Tridiagonal, GeneralSparse };

std::string to_string(Structure s);

/// Symmetrized Dirichlet Laplacian M = D_theta^{-1/2} Q D_theta^{-1/2} with
/// Q_xx = pi_x (boundary edges included) and Q_xy = -pi_xy on interior edges.
/// M has the same spectrum as -L_theta restricted to the vertex set.
class DirichletOperator {
 public:
  /// The graph as an interior path: vertex order, the weight between
  /// consecutive vertices, boundary weights and theta in path order.
  struct PathForm {
    std::vector<std::size_t> order;
    std::vector<double> edge;
    std::vector<double> boundary;
    std::vector<double> theta;
  };

  static DirichletOperator from_truncation(const Truncation& t, ThetaKind kind);
  /// Whole finite graph, no boundary.
  static DirichletOperator from_graph(const WeightedGraph& g, ThetaKind kind);
  static DirichletOperator from_parts(const WeightedGraph& interior, std::vector<double> boundary,
                                      std::vector<double> theta);

  std::size_t size() const noexcept { return theta_.size(); }
  Structure structure() const noexcept { return structure_; }
  bool has_boundary() const noexcept { return has_boundary_; }
  std::span<const double> theta() const noexcept { return theta_; }
  std::span<const double> boundary() const noexcept { return boundary_; }
  const WeightedGraph& interior() const noexcept { return interior_; }
  const PathForm* path() const noexcept { return path_ ? &*path_ : nullptr; }

  /// out = M v.
  void apply(std::span<const double> v, std::span<double> out) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

  Eigen::MatrixXd dense() const;
  Eigen::SparseMatrix<double> sparse() const;

  /// Upper bound on the spectrum (Gershgorin).
  double gershgorin_upper() const;
  double rayleigh_quotient(const Eigen::VectorXd& v) const;

 private:
  DirichletOperator() = default;
  void finalize();

  WeightedGraph interior_;
  std::vector<double> boundary_;
  std::vector<double> theta_;
  std::vector<double> inv_sqrt_theta_;
  Structure structure_ = Structure::Dense;
  bool has_boundary_ = false;
  std::optional<PathForm> path_;
};

/// Largest dimension handled by the dense symmetric solver.
inline constexpr std::size_t kDenseLimit = 2000;

/// E(f, g) = 1/2 sum_{x,y} pi_xy (f(y) - f(x)) (g(y) - g(x)).
double dirichlet_form(const WeightedGraph& graph, std::span<const double> f, std::span<const double> g);

/// E(f, g) for f, g extended by zero outside the truncation (boundary edges
/// contribute pi_xy f(x) g(x)).
double dirichlet_form(const Truncation& t, std::span<const double> f, std::span<const double> g);

/// <f, g>_theta.
double inner_product(std::span<const double> theta, std::span<const double> f, std::span<const double> g);

/// (L_theta f)(x) = (1/theta_x) sum_y pi_xy (f(y) - f(x)).
std::vector<double> apply_generator(const WeightedGraph& graph, ThetaKind kind, std::span<const double> f);

/// Generator with the Dirichlet convention: f vanishes outside the
/// truncation, so boundary edges contribute -pi_xy f(x) / theta_x.
std::vector<double> apply_generator(const Truncation& t, ThetaKind kind, std::span<const double> f);

}  // namespace spectrascope
