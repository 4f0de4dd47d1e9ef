#include "spectrascope/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "spectrascope/format.hpp"
#include "spectrascope/graph_io.hpp"

namespace spectrascope {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kAuditLimit = 100'000;
constexpr std::size_t kProfileSamples = 64;
constexpr std::size_t kExhaustionSteps = 8;
// Vertex-count ratio between the two outer radii of the annulus table.
constexpr std::size_t kOuterScaleRatio = 4;

std::string argument(const std::string& args, const std::string& key, const std::string& descriptor) {
  const std::string prefix = key + "=";
  if (args.rfind(prefix, 0) != 0 || args.size() == prefix.size()) {
    throw UsageError("family '" + descriptor + "': expected " + key + "=<value>");
  }
  return args.substr(prefix.size());
}

double number_argument(const std::string& args, const std::string& key, const std::string& descriptor) {
  const auto text = argument(args, key, descriptor);
  try {
    return parse_double(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("family '" + descriptor + "': '" + text + "' is not a number");
  }
}

// Up to `max_count` entries of the sorted distinct values, evenly spaced, always keeping the last.
std::vector<double> thin(const std::vector<double>& values, std::size_t max_count) {
  if (values.size() <= max_count) return values;
  std::vector<double> out;
  const double step = static_cast<double>(values.size() - 1) / static_cast<double>(max_count - 1);
  for (std::size_t i = 0; i < max_count; ++i) {
    const auto idx = static_cast<std::size_t>(std::llround(step * static_cast<double>(i)));
    if (out.empty() || values[idx] > out.back()) out.push_back(values[idx]);
  }
  return out;
}

std::vector<double> distinct_distances(const MetricBall& b) {
  std::vector<double> d;
  for (const auto& e : b.entries) {
    if (d.empty() || e.distance > d.back()) d.push_back(e.distance);
  }
  return d;
}

double mu_for_bounds(const GrowthClassification& g) {
  switch (g.kind) {
    case GrowthKind::Subexponential: return 0.0;
    case GrowthKind::Superexponential: return kInf;
    default: return g.mu.infinite ? kInf : std::max(0.0, g.mu.mu_hat);
  }
}

bool is_path_like(const GraphFamily& family, const MetricBall& b, std::size_t limit) {
  std::size_t seen = 0;
  for (const auto& e : b.entries) {
    if (family.neighbor_count(e.id) > 2) return false;
    if (++seen >= limit) break;
  }
  return true;
}

Json audit_json(const AdaptednessReport& a, std::size_t vertices) {
  Json j;
  j["pass"] = a.pass;
  j["vertices"] = vertices;
  j["max_slack"] = number(a.max_slack);
  j["min_edge_cost"] = number(a.min_edge_cost);
  j["max_edge_cost"] = number(a.max_edge_cost);
  return j;
}

Json lambda_ess_json(const AnalyzeResult& r) {
  if (!r.annuli) return Json{{"available", false}, {"reason", "no annulus table (ball exhausts the graph or too few radii)"}};
  Json j = to_json(*r.annuli);
  j["available"] = true;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

std::string json_text(const Json& j) {
  std::ostringstream os;
  write_json(os, j);
  return os.str();
}

}  // namespace

FamilyPtr parse_family(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string kind = descriptor.substr(0, colon);
  const std::string args = colon == std::string::npos ? std::string() : descriptor.substr(colon + 1);
  try {
    if (kind == "tree") {
      const double k = number_argument(args, "k", descriptor);
      if (k != std::floor(k) || k < 3 || k > 1e6) throw UsageError("family '" + descriptor + "': k must be an integer >= 3");
      return regular_tree(static_cast<int>(k));
    }
    if (kind == "bd") return birth_death(number_argument(args, "alpha", descriptor));
    if (kind == "sphtree") return spherical_tree(number_argument(args, "alpha", descriptor));
    if (kind == "line" && colon == std::string::npos) {
      return chain("line", [](std::uint64_t) { return 1.0; });
    }
    if (kind == "file") {
      if (args.empty()) throw UsageError("family 'file:PATH' needs a path");
      return finite_family(load_graph(args), std::nullopt, descriptor);
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("family '" + descriptor + "': " + e.what());
  }
  throw UsageError("unknown family descriptor '" + descriptor + "'");
}

Json RunConfig::to_json() const {
  Json j;
  j["family"] = family;
  j["theta"] = to_string(theta);
  j["metric"] = metric;
  j["rmax"] = number(rmax);
  Json g = Json::array();
  for (const double r : grid) g.push_back(number(r));
  j["grid"] = g;
  j["cap"] = cap;
  j["solver_caps"] = {{"tridiagonal", solver_caps.tridiagonal}, {"sparse", solver_caps.sparse}};
  j["tol"] = number(tol);
  j["seed"] = seed;
  return j;
}

Json AnalyzeResult::to_json() const {
  Json j;
  j["config"] = config.to_json();
  Json mu = spectrascope::to_json(growth);
  mu["family"] = profile.family;
  mu["metric"] = profile.metric;
  mu["theta"] = to_string(profile.theta);
  j["mu"] = mu;
  j["adaptedness"] = audit_json(audit, audit.slack.size());
  j["bounds"] = spectrascope::to_json(bounds);
  j["lambda0"] = spectrascope::to_json(exhaustion);
  j["lambda_ess"] = lambda_ess_json(*this);
  j["consistency"] = spectrascope::to_json(consistency);
  j["notes"] = notes;
  return j;
}

AnalyzeResult analyze(const RunConfig& config) {
  if (!(config.tol > 0.0)) throw UsageError("tol must be positive");
  if (config.cap == 0) throw UsageError("cap must be positive");
  if (config.rmax < 0.0) throw UsageError("rmax must be non-negative");
  const auto family = parse_family(config.family);
  MetricSpec spec;
  try {
    spec = parse_metric(config.metric, config.theta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("metric: ") + e.what());
  }
  const VertexId x0 = family->root();

  AnalyzeResult res;
  res.config = config;

  std::vector<double> grid = config.grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  MetricBall b;
  if (!grid.empty()) {
    b = ball(*family, spec, x0, grid.back(), config.cap);
  } else if (config.rmax > 0.0) {
    b = ball(*family, spec, x0, config.rmax, config.cap);
  } else {
    b = largest_ball(*family, spec, x0, config.cap);
    res.notes.push_back("profile radius chosen as the largest ball within the cap: r=" + format_double(b.radius));
  }
  if (grid.empty()) grid = thin(distinct_distances(b), kProfileSamples);
  res.profile = profile_from_ball(*family, spec, config.theta, b, grid);
  res.profile.cap = config.cap;

  try {
    res.growth = classify_growth(res.profile);
  } catch (const InsufficientSamples& e) {
    res.growth.kind = GrowthKind::Inconclusive;
    res.growth.reason = e.what();
    res.notes.push_back(std::string("growth: ") + e.what());
  }
  const double mu = mu_for_bounds(res.growth);

  std::vector<VertexId> audited;
  for (const auto& e : b.entries) {
    if (audited.size() >= kAuditLimit) break;
    audited.push_back(e.id);
  }
  res.audit = verify_adaptedness(*family, spec, config.theta, audited);
  res.bounds = bound_report(bound_input_from_audit(
      mu, res.audit,
      "mu: " + to_string(res.growth.kind) + " fit on " + res.profile.family + " / " + res.profile.metric +
          "; m, M: edge-cost range over " + std::to_string(audited.size()) + " vertices"));
  if (!res.audit.pass) {
    res.bounds.general_bound.reset();
    res.bounds.bounded_metric_bound.reset();
    res.bounds.degenerate_bound.reset();
    res.bounds.note = "metric is not adapted for theta=" + to_string(config.theta) + " (max slack " +
                      format_double(res.audit.max_slack) + "); bounds not applicable";
    res.notes.push_back(res.bounds.note);
  }

  // Exhaustion radii: profile radii whose ball fits the solver cap for its structure.
  const bool path_like = is_path_like(*family, b, config.solver_caps.tridiagonal + 1);
  const std::size_t dim_cap =
      std::max<std::size_t>(kDenseLimit, path_like ? config.solver_caps.tridiagonal : config.solver_caps.sparse);
  std::vector<double> eligible;
  for (const auto& s : res.profile.samples) {
    if (s.r > 0.0 && s.count <= dim_cap) eligible.push_back(s.r);
  }
  if (eligible.empty()) throw DimensionCapExceeded(res.profile.samples.back().count, dim_cap, Structure::GeneralSparse);
  const auto radii = thin(eligible, kExhaustionSteps);
  res.exhaustion = lambda0_exhaustion(*family, config.theta, spec, x0, radii, config.cap, config.tol, config.solver_caps);
  const auto& last = res.exhaustion.steps.back().estimate;

  const bool whole_graph = !std::isfinite(b.frontier_bound) && radii.back() >= b.radius;
  ConsistencyInput ci;
  ci.lambda0 = last.lambda;
  ci.lambda0_residual = last.method == EigenMethod::Sturm ? 0.0 : last.residual;
  ci.abs_tol = 10.0 * config.tol;
  if (radii.size() >= 2 && !whole_graph) {
    const double r2 = radii.back();
    const std::size_t n2 = res.exhaustion.steps.back().vertices;
    double r1 = 0.0;
    for (const auto& s : res.profile.samples) {
      if (s.r > 0.0 && s.count * kOuterScaleRatio <= n2) r1 = s.r;
    }
    if (r1 <= 0.0) r1 = radii[radii.size() - 2];
    const std::vector<double> outer{r1, r2};
    std::vector<double> k_grid{0.0, 0.25 * r1, 0.5 * r1};
    k_grid.erase(std::unique(k_grid.begin(), k_grid.end()), k_grid.end());
    res.annuli = lambda_ess_annuli(*family, config.theta, spec, x0, k_grid, outer, config.cap, config.tol,
                                   config.solver_caps);
    const auto& t = *res.annuli;
    double at_r1 = t.estimate, at_r2 = t.estimate, residual = 0.0;
    for (const auto& row : t.rows) {
      if (row.inner != t.estimate_inner) continue;
      if (row.outer == r1) at_r1 = row.estimate.lambda;
      if (row.outer == r2) {
        at_r2 = row.estimate.lambda;
        residual = row.estimate.method == EigenMethod::Sturm ? 0.0 : row.estimate.residual;
      }
    }
    ci.lambda_ess = t.estimate;
    ci.lambda_ess_residual = residual;
    ci.ess_drift = at_r2 - at_r1;
    res.consistency = consistency_report(ci, res.bounds);
  } else {
    res.consistency.tol = ci.abs_tol;
    res.consistency.bound = res.bounds.best();
    res.consistency.findings.push_back(whole_graph ? "ball exhausts the graph; no essential spectrum estimate"
                                                   : "fewer than two radii; no essential spectrum estimate");
    if (res.consistency.bound && ci.lambda0 > *res.consistency.bound + ci.abs_tol && !whole_graph) {
      res.consistency.findings.push_back("lambda0 truncation estimate above the bound (upper-biased)");
    }
  }
  return res;
}

void write_bundle(const AnalyzeResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ostringstream os;
    write_profile_csv(os, r.profile);
    write_text(dir / "profile.csv", os.str());
  }
  const Json all = r.to_json();
  write_text(dir / "mu.json", json_text(all["mu"]));
  write_text(dir / "lambda0.json", json_text(all["lambda0"]));
  write_text(dir / "lambda_ess.json", json_text(all["lambda_ess"]));
  Json bounds = all["bounds"];
  bounds["adaptedness"] = all["adaptedness"];
  write_text(dir / "bounds.json", json_text(bounds));
  write_text(dir / "consistency.json", json_text(all["consistency"]));
  Json config = all["config"];
  config["notes"] = all["notes"];
  write_text(dir / "config.json", json_text(config));

  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::ostringstream stamp;
  stamp << std::put_time(std::gmtime(&tt), "%Y-%m-%dT%H:%M:%SZ");
  write_text(dir / "metadata.json", json_text(Json{{"created", stamp.str()}, {"tool", "spectrascope"}}));
}

// ---------------------------------------------------------------------------
// reproduce

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(8) << x;
  return os.str();
}

ReproRow row(std::string quantity, std::string expected, double computed, std::string tolerance, bool pass,
             std::string note = {}) {
  return ReproRow{std::move(quantity), std::move(expected), computed, std::move(tolerance), pass, std::move(note)};
}

bool within_rel(double computed, double expected, double rel) {
  return std::abs(computed - expected) <= rel * std::abs(expected);
}

std::string rel_gap(double computed, double expected) {
  return "relative gap " + fmt((computed - expected) / expected);
}

// Largest profile radius whose ball has at most `limit` vertices.
double feasible_radius(const VolumeProfile& p, std::size_t limit) {
  double r = 0.0;
  for (const auto& s : p.samples) {
    if (s.count <= limit) r = s.r;
  }
  return r;
}

std::size_t sparse_limit(const RunConfig& base) {
  return std::max<std::size_t>(kDenseLimit, base.solver_caps.sparse);
}

void example1(ReproTable& t, const RunConfig& base) {
  for (int k = 3; k <= 10; ++k) {
    const double kd = k;
    const double exact = 1.0 - 2.0 * std::sqrt(kd - 1.0) / kd;
    const double mu = std::log(kd - 1.0);
    const double b = growth_bound_bounded(mu, 1.0, 1.0);
    t.rows.push_back(row("bound_bounded(ln(k-1),1,1) k=" + std::to_string(k), "1-2sqrt(k-1)/k = " + fmt(exact), b,
                         "1e-12", std::abs(b - exact) <= 1e-12));
    const double exact1 = kd - 2.0 * std::sqrt(kd - 1.0);
    const double s = 1.0 / std::sqrt(kd);
    const double b1 = growth_bound_bounded(std::sqrt(kd) * mu, s, s);
    t.rows.push_back(row("bound_bounded(sqrt(k)ln(k-1),k^-1/2,k^-1/2) k=" + std::to_string(k),
                         "k-2sqrt(k-1) = " + fmt(exact1), b1, "1e-12 relative",
                         std::abs(b1 - exact1) <= 1e-12 * exact1));

    const auto family = regular_tree(k);
    const auto graph_ball = largest_ball(*family, MetricSpec::graph(), family->root(), base.cap);
    const auto grid = distinct_distances(graph_ball);
    const auto profile = profile_from_ball(*family, MetricSpec::graph(), ThetaKind::One, graph_ball, grid);
    const auto est = estimate_mu(profile);
    t.rows.push_back(row("mu_hat graph metric T_" + std::to_string(k), "ln(k-1) = " + fmt(mu), est.mu_hat, "2%",
                         within_rel(est.mu_hat, mu, 0.02),
                         "r <= " + format_double(graph_ball.radius) + ", " + rel_gap(est.mu_hat, mu)));

    const auto scaled = MetricSpec::scaled(kd);
    const auto scaled_ball = largest_ball(*family, scaled, family->root(), base.cap);
    const auto sprofile =
        profile_from_ball(*family, scaled, ThetaKind::One, scaled_ball, distinct_distances(scaled_ball));
    const auto sest = estimate_mu(sprofile);
    const double smu = std::sqrt(kd) * mu;
    t.rows.push_back(row("mu_hat scaled metric A=k T_" + std::to_string(k), "sqrt(k)ln(k-1) = " + fmt(smu),
                         sest.mu_hat, "2%", within_rel(sest.mu_hat, smu, 0.02), rel_gap(sest.mu_hat, smu)));

    const double r = feasible_radius(profile, sparse_limit(base));
    if (r <= 0.0) continue;
    const std::vector<double> radii{r};
    for (const auto theta : {ThetaKind::Pi, ThetaKind::One}) {
      const double expected = theta == ThetaKind::Pi ? exact : exact1;
      const auto ex = lambda0_exhaustion(*family, theta, MetricSpec::graph(), family->root(), radii, base.cap,
                                         base.tol, base.solver_caps);
      const double lam = ex.steps.back().estimate.lambda;
      t.rows.push_back(row("lambda0(T_" + std::to_string(k) + ", " + to_string(theta) + ") ball r=" +
                               format_double(r),
                           fmt(expected), lam, ">= exact (Dirichlet upper estimate)",
                           lam >= expected * (1.0 - 1e-9) - base.tol,
                           std::to_string(ex.steps.back().vertices) + " vertices, " + rel_gap(lam, expected)));
    }
  }
}

void example2(ReproTable& t, const RunConfig& base) {
  const auto de = MetricSpec::de(2.0);
  const std::pair<double, GrowthKind> cases[] = {
      {-1.0, GrowthKind::Subexponential}, {0.0, GrowthKind::Exponential}, {1.0, GrowthKind::Superexponential}};
  double mu0 = 0.0;
  for (const auto& [alpha, expected] : cases) {
    const auto family = birth_death(alpha);
    const auto profile = growth_profile_to_cap(*family, de, ThetaKind::One, family->root(), base.cap);
    const auto g = classify_growth(profile);
    if (alpha == 0.0) mu0 = g.mu.mu_hat;
    t.rows.push_back(row("growth class bd(" + format_double(alpha) + ") de:D=2", to_string(expected), g.mu.mu_hat,
                         "class match", g.kind == expected, "classified " + to_string(g.kind)));
  }
  const double sqrt2 = std::numbers::sqrt2;
  t.rows.push_back(row("mu_hat bd(0) de:D=2", "sqrt(2) = " + fmt(sqrt2), mu0, "5%", within_rel(mu0, sqrt2, 0.05),
                       rel_gap(mu0, sqrt2)));
  const double bound = growth_bound_general(mu0);
  t.rows.push_back(row("bound mu_hat^2/8 bd(0)", "1/4", bound, "5%", within_rel(bound, 0.25, 0.05)));

  const auto bd0 = birth_death(0.0);
  const std::size_t n_max = std::min<std::size_t>(1'000'000, base.solver_caps.tridiagonal);
  double prev = kInf;
  bool monotone = true;
  double last = 0.0;
  for (std::size_t n = 1000; n <= n_max; n *= 10) {
    std::vector<VertexId> vs(n);
    for (std::size_t i = 0; i < n; ++i) vs[i] = vid(i);
    const auto tr = truncate(*bd0, vs, "bd(0) {0..N-1}");
    const auto est = dirichlet_eigenvalue(tr, ThetaKind::One, base.tol, base.solver_caps);
    if (est.lambda > prev + 10.0 * base.tol) monotone = false;
    prev = last = est.lambda;
    t.rows.push_back(row("lambda0 bd(0) theta=one N=" + std::to_string(n), ">= 1/9", est.lambda, "exact",
                         est.bracket_lo >= 1.0 / 9.0, to_string(est.method)));
  }
  t.rows.push_back(row("lambda0 bd(0) monotone in N", "non-increasing", last, "10 tol", monotone));
  t.rows.push_back(row("lambda0 bd(0) N=" + std::to_string(n_max) + " in [1/9, 1/4]", "[0.1111111, 0.25]", last,
                       "none", last >= 1.0 / 9.0 && last <= 0.25,
                       "finite truncations are upper estimates of the infinite-graph value"));

  const auto h0 = hardy_schur_check(0.0, 100'000, 0);
  t.rows.push_back(row("Schur test alpha=0 (Tu)(n) <= 3u(n), n <= 1e5", "ratio <= 1", h0.max_ratio_T, "exact",
                       h0.pass(), "T* ratio " + fmt(h0.max_ratio_Tstar)));
  const auto h1 = hardy_schur_check(1.0, 100'000, 10);
  t.rows.push_back(row("Schur test alpha=1 k=10 factor 3/log_+^{1/2}(k+1)", "ratio <= 1", h1.max_ratio_T, "exact",
                       h1.pass(), "T* ratio " + fmt(h1.max_ratio_Tstar)));

  const auto bd1 = birth_death(1.0);
  std::vector<double> values;
  for (const std::size_t k : {10u, 100u, 1000u}) {
    if (k >= n_max) break;
    std::vector<VertexId> vs;
    vs.reserve(n_max - k);
    for (std::size_t i = k; i < n_max; ++i) vs.push_back(vid(i));
    const auto tr = truncate(*bd1, vs, "bd(1) annulus");
    const auto est = dirichlet_eigenvalue(tr, ThetaKind::One, base.tol, base.solver_caps);
    const double lower = log_plus(static_cast<double>(k) + 1.0) / 9.0;
    t.rows.push_back(row("lambda0 bd(1) {" + std::to_string(k) + ".." + std::to_string(n_max - 1) + "}",
                         ">= ln(k+1)/9 = " + fmt(lower), est.lambda, "exact", est.lambda >= lower));
    values.push_back(est.lambda);
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double growth = values[i] / values[i - 1] - 1.0;
    t.rows.push_back(row("bd(1) annulus growth per decade #" + std::to_string(i), ">= 20%", growth, "none",
                         growth >= 0.2));
  }
}

void example3(ReproTable& t, const RunConfig& base) {
  const std::pair<double, GrowthKind> cases[] = {
      {0.0, GrowthKind::Exponential}, {0.5, GrowthKind::Superexponential}, {1.0, GrowthKind::Superexponential}};
  const auto dv = MetricSpec::dv(ThetaKind::One);
  for (const auto& [alpha, expected] : cases) {
    const auto family = spherical_tree(alpha);
    const auto profile = growth_profile_to_cap(*family, dv, ThetaKind::One, family->root(), base.cap);
    const auto g = classify_growth(profile);
    t.rows.push_back(row("growth class sphtree(" + format_double(alpha) + ") dv", to_string(expected),
                         g.mu.infinite ? kInf : g.mu.mu_hat, "class match", g.kind == expected,
                         "classified " + to_string(g.kind)));
  }

  // Annuli {k <= d <= k + w} of fixed width in the graph metric: flat in k for alpha = 0, increasing for alpha = 1.
  for (const double alpha : {0.0, 1.0}) {
    const auto family = spherical_tree(alpha);
    const auto graph_ball = largest_ball(*family, MetricSpec::graph(), family->root(), base.cap);
    const auto profile = profile_from_ball(*family, MetricSpec::graph(), ThetaKind::One, graph_ball,
                                           distinct_distances(graph_ball));
    const double R = feasible_radius(profile, sparse_limit(base));
    if (R < 4.0) continue;
    const double w = std::floor(R / 2.0);
    std::vector<double> values;
    for (double k = 1.0; k + w <= R; k += std::max(1.0, std::floor((R - w - 1.0) / 3.0))) {
      const auto tr = truncate_if(
          *family, graph_ball, [k, w](VertexId, double d) { return d >= k && d <= k + w; }, "annulus");
      const auto est = dirichlet_eigenvalue(tr, ThetaKind::One, base.tol, base.solver_caps);
      values.push_back(est.lambda);
      t.rows.push_back(row("lambda0 sphtree(" + format_double(alpha) + ") annulus [" + format_double(k) + ", " +
                               format_double(k + w) + "] theta=one",
                           alpha == 0.0 ? "flat in k" : "increasing in k", est.lambda, "data row", true,
                           std::to_string(tr.size()) + " vertices"));
    }
    const double change = values.back() / values.front() - 1.0;
    if (alpha == 0.0) {
      t.rows.push_back(row("sphtree(0) annulus trend", "relative change <= 20%", change, "20%",
                           std::abs(change) <= 0.2, "nonempty essential spectrum"));
    } else {
      bool increasing = true;
      for (std::size_t i = 1; i < values.size(); ++i) increasing = increasing && values[i] > values[i - 1];
      t.rows.push_back(row("sphtree(1) annulus trend", "strictly increasing", change, "none", increasing,
                           "empty essential spectrum"));
    }
  }
}

}  // namespace

Json ReproTable::to_json() const {
  Json j;
  j["example"] = example;
  Json rs = Json::array();
  for (const auto& r : rows) {
    rs.push_back({{"quantity", r.quantity},
                  {"expected", r.expected},
                  {"computed", number(r.computed)},
                  {"tolerance", r.tolerance},
                  {"pass", r.pass},
                  {"note", r.note}});
  }
  j["rows"] = rs;
  std::size_t passed = 0;
  for (const auto& r : rows) passed += r.pass ? 1 : 0;
  j["passed"] = passed;
  j["total"] = rows.size();
  return j;
}

std::string ReproTable::to_text() const {
  std::size_t wq = 8, we = 8, wt = 9;
  for (const auto& r : rows) {
    wq = std::max(wq, r.quantity.size());
    we = std::max(we, r.expected.size());
    wt = std::max(wt, r.tolerance.size());
  }
  std::ostringstream os;
  os << "example " << example << '\n';
  os << std::left << std::setw(static_cast<int>(wq)) << "quantity" << "  " << std::setw(static_cast<int>(we))
     << "expected" << "  " << std::setw(16) << "computed" << "  " << std::setw(static_cast<int>(wt)) << "tolerance"
     << "  " << "pass  note\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(static_cast<int>(wq)) << r.quantity << "  " << std::setw(static_cast<int>(we))
       << r.expected << "  " << std::setw(16) << fmt(r.computed) << "  " << std::setw(static_cast<int>(wt))
       << r.tolerance << "  " << (r.pass ? "yes " : "NO  ") << "  " << r.note << '\n';
  }
  return os.str();
}

ReproTable reproduce(int example, const RunConfig& base) {
  ReproTable t;
  t.example = example;
  switch (example) {
    case 1: example1(t, base); break;
    case 2: example2(t, base); break;
    case 3: example3(t, base); break;
    default: throw UsageError("example must be 1, 2 or 3");
  }
  return t;
}

}  // namespace spectrascope
