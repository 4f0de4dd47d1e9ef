#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectrascope/metric.hpp"

namespace spectrascope {

/// mu^2 / 8. Throws std::domain_error for infinite or negative mu.
double growth_bound_general(double mu);

/// (1/m^2) (1 - e^{M mu / 2})^2 / (1 + e^{M mu}) for 0 < m <= M.
double growth_bound_bounded(double mu, double m, double M);

/// 1/m^2, the bound available when mu is infinite.
double degenerate_bound(double m);

/// (1 - e^t)^2 / (1 + e^{2t}).
double scalar_I(double t);

struct SpectrumFlags {
  bool ess_spectrum_zero = false;
  bool ess_spectrum_nonempty = false;
};

SpectrumFlags spectrum_flags(double mu);

struct BoundInput {
  double mu = 0.0;  ///< may be +inf
  std::optional<double> m;
  std::optional<double> M;
  std::string provenance;
};

struct BoundReport {
  double mu = 0.0;
  std::optional<double> m;
  std::optional<double> M;
  std::optional<double> general_bound;
  std::optional<double> bounded_metric_bound;
  std::optional<double> degenerate_bound;
  SpectrumFlags flags;
  std::string provenance;
  std::string note;

  /// Smallest applicable bound, if any.
  std::optional<double> best() const;
};

BoundReport bound_report(const BoundInput& in);

/// Uses the observed edge-cost range [min, max] of an audit as (m, M).
BoundInput bound_input_from_audit(double mu, const AdaptednessReport& audit, std::string provenance);

struct ScalarCheck {
  std::size_t points = 0;
  bool monotone = true;
  bool dominated = true;
  double worst_ratio = 0.0;  ///< max I(t) / (t^2/2) over t > 0
  std::string first_violation;
  bool pass() const { return monotone && dominated; }
};

/// I(t) non-decreasing along the sorted grid and I(t) <= t^2/2 at every point.
ScalarCheck scalar_I_check(std::span<const double> t_grid);

/// f_j = exp(h_j) with h_j(rho) = alpha rho for rho <= j and 2 alpha j - alpha rho beyond.
struct TentFunction {
  double alpha = 1.0;
  int j = 1;
  double log_value(double rho) const;
  double value(double rho) const;
};

struct TentCase {
  VertexId x{};
  VertexId y{};
  double rho_x = 0.0;
  double rho_y = 0.0;
  double cost = 0.0;
  double alpha = 0.0;
  int j = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool same_side = false;
  bool equality = false;
};

struct TentCheck {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t equality_witnesses = 0;
  std::vector<TentCase> counterexamples;  ///< first few violations
  std::optional<TentCase> witness;        ///< first equality case
  bool pass() const { return violations == 0; }
};

/// Checks (f(y) - f(x))^2 <= I(alpha rho(x,y)) (f(x)^2 + f(y)^2) on the given
/// edges, with rho_{x0} read from `distances` (a ball containing both ends).
TentCheck tent_inequality_check(const GraphFamily& family, const MetricSpec& spec, const MetricBall& distances,
                                double alpha, int j, std::span<const std::pair<VertexId, VertexId>> edges);

/// Seeded draws: alpha uniform in (0, 3], j uniform in {1..20}, an edge drawn
/// uniformly from a vertex of the ball and one of its neighbours in the ball.
TentCheck tent_random_check(const GraphFamily& family, const MetricSpec& spec, const MetricBall& distances,
                            std::size_t draws, std::uint64_t seed);

struct DFControlCheck {
  bool precondition_ok = true;   ///< pointwise hypothesis and adaptedness hold
  std::string precondition_detail;
  double energy = 0.0;           ///< E(f, f)
  double bound = 0.0;            ///< C ||f||^2_theta
  bool lemma_holds = true;
  bool pass() const { return precondition_ok && lemma_holds; }
};

/// E(f, f) <= C ||f||^2_theta given (f(y)-f(x))^2 <= C rho^2 (f(x)^2+f(y)^2) on every edge.
DFControlCheck dirichlet_form_control_check(const WeightedGraph& graph, std::span<const double> f, double C,
                                            const MetricSpec& spec, ThetaKind theta);

/// Smallest C for which the pointwise hypothesis holds on every edge.
double pointwise_constant(const WeightedGraph& graph, std::span<const double> f, const MetricSpec& spec);

/// (T_alpha f)(n) = sum_{j >= n} f(j) / ((j+1) log_+^{alpha/2}(j+1)) for f supported on [0, f.size()).
std::vector<double> hardy_apply(double alpha, std::span<const double> f);

struct HardyReport {
  double alpha = 0.0;
  std::size_t k = 0;
  std::size_t n_max = 0;
  double factor = 3.0;          ///< 3 / log_+^{alpha/2}(k+1)
  double max_ratio_T = 0.0;     ///< max (T u)(n) / (factor u(n))
  double max_ratio_Tstar = 0.0;
  std::size_t violations = 0;
  bool pass() const { return violations == 0; }
};

/// Schur test on Gamma_k = {k, k+1, ...} with u(n) = (n+1)^{-1/2}, checked for
/// k <= n <= n_max. The infinite tail of T u is bounded by integral comparison.
HardyReport hardy_schur_check(double alpha, std::size_t n_max, std::size_t k);

struct ConsistencyInput {
  double lambda0 = 0.0;
  double lambda0_residual = 0.0;
  double lambda_ess = 0.0;
  double lambda_ess_residual = 0.0;
  bool ess_upper_biased = true;
  double ess_drift = 0.0;        ///< change of the ess estimate between the two largest outer radii
  double abs_tol = 1e-8;
  double bias_allowance = 0.25;  ///< relative slack granted to an upper-biased ess estimate
};

struct ConsistencyReport {
  bool lambda0_below_ess = true;
  bool ess_below_bound = true;
  std::optional<double> bound;
  double tol = 0.0;
  std::vector<std::string> findings;
  bool ok() const { return lambda0_below_ess && ess_below_bound; }
};

ConsistencyReport consistency_report(const ConsistencyInput& in, const BoundReport& bounds);

}  // namespace spectrascope
