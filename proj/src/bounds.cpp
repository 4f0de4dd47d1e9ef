#include "spectrascope/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "spectrascope/dirichlet.hpp"
#include "spectrascope/format.hpp"

namespace spectrascope {

double scalar_I(double t) {
  if (std::isinf(t) && t > 0) return 1.0;
  if (t > 1.0) {
    const double q = -std::expm1(-t);
    return q * q / (1.0 + std::exp(-2.0 * t));
  }
  const double q = std::expm1(t);
  return q * q / (1.0 + std::exp(2.0 * t));
}

double growth_bound_general(double mu) {
  if (std::isinf(mu)) throw std::domain_error("infinite mu: use degenerate_bound");
  if (!(mu >= 0.0)) throw std::domain_error("mu must be non-negative");
  return mu * mu / 8.0;
}

double growth_bound_bounded(double mu, double m, double M) {
  if (!(m > 0.0) || !(M >= m) || !std::isfinite(M)) throw std::invalid_argument("need 0 < m <= M < inf");
  if (std::isinf(mu)) throw std::domain_error("infinite mu: use degenerate_bound");
  if (!(mu >= 0.0)) throw std::domain_error("mu must be non-negative");
  return scalar_I(0.5 * M * mu) / (m * m);
}

double degenerate_bound(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("m must be positive");
  return 1.0 / (m * m);
}

SpectrumFlags spectrum_flags(double mu) {
  SpectrumFlags f;
  f.ess_spectrum_zero = mu == 0.0;
  f.ess_spectrum_nonempty = std::isfinite(mu);
  return f;
}

std::optional<double> BoundReport::best() const {
  std::optional<double> b;
  for (const auto& v : {general_bound, bounded_metric_bound, degenerate_bound}) {
    if (v && (!b || *v < *b)) b = v;
  }
  return b;
}

BoundReport bound_report(const BoundInput& in) {
  if (!(in.mu >= 0.0)) throw std::domain_error("mu must be non-negative");
  if (in.m && in.M && *in.m > *in.M) throw std::invalid_argument("m must not exceed M");
  BoundReport r;
  r.mu = in.mu;
  r.m = in.m;
  r.M = in.M;
  r.provenance = in.provenance;
  r.flags = spectrum_flags(in.mu);
  if (std::isfinite(in.mu)) {
    r.general_bound = growth_bound_general(in.mu);
    if (in.m && in.M) r.bounded_metric_bound = growth_bound_bounded(in.mu, *in.m, *in.M);
  } else if (in.m) {
    r.degenerate_bound = degenerate_bound(*in.m);
  } else {
    r.note = "no bound applicable";
  }
  return r;
}

BoundInput bound_input_from_audit(double mu, const AdaptednessReport& audit, std::string provenance) {
  BoundInput in;
  in.mu = mu;
  if (std::isfinite(audit.min_edge_cost) && audit.min_edge_cost > 0.0) {
    in.m = audit.min_edge_cost;
    in.M = audit.max_edge_cost;
  }
  in.provenance = std::move(provenance);
  return in;
}

ScalarCheck scalar_I_check(std::span<const double> t_grid) {
  std::vector<double> grid(t_grid.begin(), t_grid.end());
  std::sort(grid.begin(), grid.end());
  ScalarCheck c;
  c.points = grid.size();
  double prev = -1.0;
  for (const double t : grid) {
    if (!(t >= 0.0)) throw std::invalid_argument("scalar_I_check: grid must be non-negative");
    const double v = scalar_I(t);
    const double cap = 0.5 * t * t;
    if (v < prev) {
      c.monotone = false;
      if (c.first_violation.empty()) c.first_violation = "decrease at t=" + format_double(t);
    }
    if (v > cap * (1.0 + 1e-14)) {
      c.dominated = false;
      if (c.first_violation.empty()) c.first_violation = "I(t) > t^2/2 at t=" + format_double(t);
    }
    if (t > 0.0) c.worst_ratio = std::max(c.worst_ratio, v / cap);
    prev = v;
  }
  return c;
}

double TentFunction::log_value(double rho) const {
  return rho <= j ? alpha * rho : 2.0 * alpha * j - alpha * rho;
}

double TentFunction::value(double rho) const { return std::exp(log_value(rho)); }

namespace {

TentCase evaluate_tent(const TentFunction& tent, VertexId x, VertexId y, double rx, double ry, double cost) {
  TentCase c;
  c.x = x;
  c.y = y;
  c.rho_x = rx;
  c.rho_y = ry;
  c.cost = cost;
  c.alpha = tent.alpha;
  c.j = tent.j;
  const double hx = tent.log_value(rx), hy = tent.log_value(ry);
  const double top = std::max(hx, hy);
  const double fx = std::exp(hx - top), fy = std::exp(hy - top);
  const double diff = hx < hy ? fx * std::expm1(hy - hx) : fy * std::expm1(hx - hy);
  c.lhs = diff * diff;
  // Distances are sums of edge costs, so allow for their accumulated rounding.
  const double slack = 16.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, rx, ry});
  c.rhs = scalar_I(tent.alpha * (cost + slack)) * (fx * fx + fy * fy);
  const double jj = tent.j;
  c.same_side = (rx <= jj && ry <= jj) || (rx >= jj && ry >= jj);
  const double drho = std::abs(ry - rx);
  c.equality = c.same_side && std::abs(cost - drho) <= 1e-12 * std::max(1.0, cost) && c.rhs > 0.0 &&
               std::abs(c.lhs - c.rhs) <= 1e-9 * c.rhs;
  return c;
}

void record(TentCheck& check, const TentCase& c) {
  ++check.checked;
  if (c.lhs > c.rhs * (1.0 + 1e-12) + 1e-300) {
    ++check.violations;
    if (check.counterexamples.size() < 16) check.counterexamples.push_back(c);
  }
  if (c.equality) {
    ++check.equality_witnesses;
    if (!check.witness) check.witness = c;
  }
}

}  // namespace

TentCheck tent_inequality_check(const GraphFamily& family, const MetricSpec& spec, const MetricBall& distances,
                                double alpha, int j, std::span<const std::pair<VertexId, VertexId>> edges) {
  if (!(alpha > 0.0) || j < 1) throw std::invalid_argument("tent functions need alpha > 0 and j >= 1");
  const TentFunction tent{alpha, j};
  TentCheck check;
  for (const auto& [x, y] : edges) {
    const auto rx = distances.distance(x), ry = distances.distance(y);
    if (!rx || !ry) throw std::invalid_argument("tent_inequality_check: edge endpoint outside the ball");
    const double cost = x == y ? 0.0 : edge_cost(spec, family, x, y);
    record(check, evaluate_tent(tent, x, y, *rx, *ry, cost));
  }
  return check;
}

TentCheck tent_random_check(const GraphFamily& family, const MetricSpec& spec, const MetricBall& distances,
                            std::size_t draws, std::uint64_t seed) {
  if (distances.size() < 2) throw std::invalid_argument("tent_random_check: ball too small");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> alpha_dist(0.0, 3.0);
  std::uniform_int_distribution<int> j_dist(1, 20);
  std::uniform_int_distribution<std::size_t> vertex_dist(0, distances.size() - 1);
  TentCheck check;
  std::vector<Neighbor> inside;
  while (check.checked < draws) {
    double alpha = 0.0;
    while (!(alpha > 0.0)) alpha = 3.0 - alpha_dist(rng);
    const int j = j_dist(rng);
    const auto& e = distances.entries[vertex_dist(rng)];
    inside.clear();
    for (const auto& n : family.neighbors(e.id)) {
      if (distances.contains(n.id)) inside.push_back(n);
    }
    if (inside.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, inside.size() - 1);
    const auto& n = inside[pick(rng)];
    const double cost = edge_cost(spec, family, e.id, n.id, n.weight);
    record(check, evaluate_tent(TentFunction{alpha, j}, e.id, n.id, e.distance, *distances.distance(n.id), cost));
  }
  return check;
}

namespace {

std::vector<double> edge_costs(const WeightedGraph& graph, const MetricSpec& spec, const GraphFamily& fam) {
  std::vector<double> costs;
  costs.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) costs.push_back(edge_cost(spec, fam, graph.id(e.u), graph.id(e.v), e.weight));
  return costs;
}

}  // namespace

double pointwise_constant(const WeightedGraph& graph, std::span<const double> f, const MetricSpec& spec) {
  if (f.size() != graph.size()) throw std::invalid_argument("pointwise_constant: size mismatch");
  const auto fam = finite_family(graph);
  const auto costs = edge_costs(graph, spec, *fam);
  double c = 0.0;
  const auto edges = graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double a = f[edges[i].u], b = f[edges[i].v];
    const double den = costs[i] * costs[i] * (a * a + b * b);
    if (den > 0.0) c = std::max(c, (b - a) * (b - a) / den);
  }
  return c;
}

DFControlCheck dirichlet_form_control_check(const WeightedGraph& graph, std::span<const double> f, double C,
                                            const MetricSpec& spec, ThetaKind theta) {
  if (f.size() != graph.size()) throw std::invalid_argument("dirichlet_form_control_check: size mismatch");
  DFControlCheck out;
  const auto fam = finite_family(graph);
  std::vector<VertexId> ids;
  for (std::size_t i = 0; i < graph.size(); ++i) ids.push_back(graph.id(i));
  const auto audit = verify_adaptedness(*fam, spec, theta, ids);
  if (!audit.pass) {
    out.precondition_ok = false;
    out.precondition_detail = "metric not adapted: max slack " + format_double(audit.max_slack);
  }
  const auto costs = edge_costs(graph, spec, *fam);
  const auto edges = graph.edges();
  for (std::size_t i = 0; i < edges.size() && out.precondition_ok; ++i) {
    const double a = f[edges[i].u], b = f[edges[i].v];
    const double lhs = (b - a) * (b - a);
    const double rhs = C * costs[i] * costs[i] * (a * a + b * b);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) {
      out.precondition_ok = false;
      std::ostringstream msg;
      msg << "pointwise hypothesis fails on edge (" << raw(graph.id(edges[i].u)) << ", " << raw(graph.id(edges[i].v))
          << ")";
      out.precondition_detail = msg.str();
    }
  }
  const auto th = theta_values(graph, theta);
  out.energy = dirichlet_form(graph, f, f);
  out.bound = C * inner_product(th, f, f);
  out.lemma_holds = out.energy <= out.bound * (1.0 + 1e-12) + 1e-300;
  return out;
}

std::vector<double> hardy_apply(double alpha, std::span<const double> f) {
  std::vector<double> out(f.size(), 0.0);
  double s = 0.0;
  for (std::size_t n = f.size(); n-- > 0;) {
    const double j1 = static_cast<double>(n) + 1.0;
    s += f[n] / (j1 * std::pow(log_plus(j1), alpha / 2.0));
    out[n] = s;
  }
  return out;
}

HardyReport hardy_schur_check(double alpha, std::size_t n_max, std::size_t k) {
  if (!(alpha >= 0.0 && alpha < 2.0)) throw std::invalid_argument("hardy_schur_check: alpha must lie in [0, 2)");
  if (n_max < 10) throw std::invalid_argument("hardy_schur_check: n_max must be at least 10");
  if (k > n_max) throw std::invalid_argument("hardy_schur_check: k exceeds n_max");
  HardyReport r;
  r.alpha = alpha;
  r.k = k;
  r.n_max = n_max;
  r.factor = 3.0 / std::pow(log_plus(static_cast<double>(k) + 1.0), alpha / 2.0);
  const auto weight = [alpha](double j1) { return 1.0 / (j1 * std::pow(log_plus(j1), alpha / 2.0)); };
  const auto u = [](double j1) { return 1.0 / std::sqrt(j1); };

  // Tail sum_{j > n_max} u(j) w(j) <= w-factor * (m^{-3/2} + 2 m^{-1/2}), m = n_max + 2.
  const double m = static_cast<double>(n_max) + 2.0;
  const double tail = std::pow(log_plus(m), -alpha / 2.0) * (std::pow(m, -1.5) + 2.0 / std::sqrt(m));

  std::vector<double> tu(n_max + 1 - k);
  double s = tail;
  for (std::size_t n = n_max + 1; n-- > k;) {
    const double j1 = static_cast<double>(n) + 1.0;
    s += u(j1) * weight(j1);
    tu[n - k] = s;
  }
  double prefix = 0.0;
  for (std::size_t n = k; n <= n_max; ++n) {
    const double j1 = static_cast<double>(n) + 1.0;
    prefix += u(j1);
    const double bound = r.factor * u(j1);
    const double t_ratio = tu[n - k] / bound;
    const double ts_ratio = prefix * weight(j1) / bound;
    r.max_ratio_T = std::max(r.max_ratio_T, t_ratio);
    r.max_ratio_Tstar = std::max(r.max_ratio_Tstar, ts_ratio);
    if (t_ratio > 1.0 || ts_ratio > 1.0) ++r.violations;
  }
  return r;
}

ConsistencyReport consistency_report(const ConsistencyInput& in, const BoundReport& bounds) {
  ConsistencyReport r;
  r.tol = in.abs_tol + 10.0 * (in.lambda0_residual + in.lambda_ess_residual);
  r.bound = bounds.best();
  if (in.lambda0 > in.lambda_ess + r.tol) {
    r.lambda0_below_ess = false;
    r.findings.push_back("lambda0 estimate " + format_double(in.lambda0) + " exceeds lambda_ess estimate " +
                         format_double(in.lambda_ess));
  }
  if (r.bound) {
    double slack = r.tol;
    if (in.ess_upper_biased) slack += in.bias_allowance * *r.bound + std::abs(in.ess_drift);
    if (in.lambda_ess > *r.bound + slack) {
      r.ess_below_bound = false;
      r.findings.push_back("lambda_ess estimate " + format_double(in.lambda_ess) + " exceeds bound " +
                           format_double(*r.bound) + " by more than " + format_double(slack));
    } else if (in.lambda_ess > *r.bound + r.tol) {
      r.findings.push_back("lambda_ess estimate " + format_double(in.lambda_ess) + " above bound " +
                           format_double(*r.bound) + " within the finite-radius bias allowance");
    }
  } else {
    r.findings.push_back("no bound applicable");
  }
  return r;
}

}  // namespace spectrascope
