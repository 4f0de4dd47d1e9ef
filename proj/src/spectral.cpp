#include "spectrascope/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace spectrascope {

DimensionCapExceeded::DimensionCapExceeded(std::size_t n_, std::size_t cap_, Structure s)
    : std::runtime_error(to_string(s) + " operator of dimension " + std::to_string(n_) + " exceeds cap " +
                         std::to_string(cap_)),
      n(n_),
      cap(cap_) {}

SpectralEstimate dirichlet_eigenvalue(const Truncation& t, ThetaKind theta, double tol, const SolverCaps& caps,
                                      EigenMethod method) {
  const auto op = DirichletOperator::from_truncation(t, theta);
  if (op.structure() == Structure::Tridiagonal && op.size() > caps.tridiagonal) {
    throw DimensionCapExceeded(op.size(), caps.tridiagonal, op.structure());
  }
  if (op.structure() == Structure::GeneralSparse && op.size() > caps.sparse) {
    throw DimensionCapExceeded(op.size(), caps.sparse, op.structure());
  }
  return smallest_eigenvalue(op, tol, method);
}

Exhaustion lambda0_exhaustion(const GraphFamily& family, ThetaKind theta, const MetricSpec& spec, VertexId x0,
                              std::span<const double> radii, std::size_t cap, double tol, const SolverCaps& caps) {
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw std::invalid_argument("lambda0_exhaustion: radii must be increasing");
  }
  Exhaustion ex;
  ex.family = family.descriptor();
  ex.metric = spec.descriptor();
  ex.theta = theta;
  ex.tol = tol;
  if (radii.empty()) return ex;
  const auto outer = ball(family, spec, x0, radii.back(), cap);
  for (const double r : radii) {
    const auto t = truncate_if(
        family, outer, [r](VertexId, double d) { return d <= r; }, family.descriptor() + " ball r=" + std::to_string(r));
    ExhaustionStep step;
    step.radius = r;
    step.vertices = t.size();
    step.estimate = dirichlet_eigenvalue(t, theta, tol, caps);
    if (!ex.steps.empty() && step.estimate.lambda > ex.steps.back().estimate.lambda + 10.0 * tol) ex.monotone = false;
    ex.steps.push_back(std::move(step));
  }
  return ex;
}

AnnulusTable lambda_ess_annuli(const GraphFamily& family, ThetaKind theta, const MetricSpec& spec, VertexId x0,
                               std::span<const double> k_grid, std::span<const double> outer_radii,
                               std::size_t cap, double tol, const SolverCaps& caps) {
  for (std::size_t i = 1; i < k_grid.size(); ++i) {
    if (!(k_grid[i] > k_grid[i - 1])) throw std::invalid_argument("lambda_ess_annuli: k_grid must be increasing");
  }
  for (std::size_t i = 1; i < outer_radii.size(); ++i) {
    if (!(outer_radii[i] > outer_radii[i - 1])) {
      throw std::invalid_argument("lambda_ess_annuli: outer radii must be increasing");
    }
  }
  if (k_grid.empty() || outer_radii.empty()) throw std::invalid_argument("lambda_ess_annuli: empty grid");
  if (!(k_grid.back() < outer_radii.front())) {
    throw std::invalid_argument("lambda_ess_annuli: every k must lie below every outer radius");
  }
  AnnulusTable table;
  table.family = family.descriptor();
  table.metric = spec.descriptor();
  table.theta = theta;
  table.tol = tol;

  const auto largest = ball(family, spec, x0, outer_radii.back(), cap);
  for (const double outer : outer_radii) {
    double prev = -1.0;
    for (const double k : k_grid) {
      const auto t = truncate_if(
          family, largest, [k, outer](VertexId, double d) { return d >= k && d <= outer; },
          family.descriptor() + " annulus k=" + std::to_string(k) + " R=" + std::to_string(outer));
      if (t.size() == 0) throw std::invalid_argument("lambda_ess_annuli: empty annulus");
      AnnulusRow row;
      row.inner = k;
      row.outer = outer;
      row.vertices = t.size();
      row.estimate = dirichlet_eigenvalue(t, theta, tol, caps);
      if (row.estimate.lambda + 10.0 * tol < prev) table.monotone = false;
      prev = row.estimate.lambda;
      table.rows.push_back(std::move(row));
    }
  }

  const std::size_t nk = k_grid.size();
  const std::size_t last = table.rows.size() - nk;
  table.estimate = table.rows[last].estimate.lambda;
  table.estimate_inner = k_grid.front();
  if (outer_radii.size() >= 2) {
    const std::size_t prev_block = last - nk;
    for (std::size_t i = nk; i-- > 0;) {
      const double a = table.rows[last + i].estimate.lambda;
      const double b = table.rows[prev_block + i].estimate.lambda;
      if (std::abs(a - b) <= kAnnulusStabilisation * std::max(std::abs(a), std::abs(b)) + 10.0 * tol) {
        table.estimate = a;
        table.estimate_inner = k_grid[i];
        table.stabilised = true;
        break;
      }
    }
  }
  return table;
}

NormBracket norm_bracket_check(const WeightedGraph& graph, ThetaKind theta, double rel_tol) {
  NormBracket nb;
  nb.a = operator_norm_A(graph, theta);
  const auto op = DirichletOperator::from_graph(graph, theta);
  nb.norm = largest_eigenvalue(op, 1e-10 * std::max(1.0, nb.a)).lambda;
  const double slack = rel_tol * std::max(1.0, nb.a);
  nb.pass = nb.norm >= nb.a - slack && nb.norm <= 2.0 * nb.a + slack;
  if (theta == ThetaKind::Pi && graph.edge_count() > 0) {
    nb.pi_bracket_pass = nb.norm >= 1.0 - rel_tol && nb.norm <= 2.0 + rel_tol;
  }
  return nb;
}

}  // namespace spectrascope
