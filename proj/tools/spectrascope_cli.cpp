#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spectrascope/format.hpp"
#include "spectrascope/run.hpp"

using namespace spectrascope;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kNumeric = 3;

const char* kDescriptors = R"(Family descriptors:
  tree:k=3          rooted k-regular tree, unit weights
  bd:alpha=0.5      half-line, pi(n,n+1) = (n+1)^2 log_+^alpha(n+1), alpha < 2
  sphtree:alpha=1   spherically symmetric tree, floor(2 r^alpha) children at depth r >= 1
  line              half-line with unit weights
  file:PATH         finite graph in the V/E edge-list format
Metric descriptors:
  graph             combinatorial distance
  scaled:A=4        graph distance / sqrt(A)
  de:D=2            edge cost (1/sqrt(D)) min(1, pi_e^{-1/2})
  dv                edge cost min(1, sqrt(min(theta/pi)) at both ends)
Theta: pi | one | custom (the measure declared by a file graph)
Exit codes: 0 ok, 1 consistency violation, 2 usage, 3 numeric failure.
SPECTRASCOPE_THREADS caps the number of worker threads.)";

struct Common {
  std::string family = "tree:k=3";
  std::string theta = "pi";
  std::string metric = "graph";
  double rmax = 0.0;
  std::vector<double> grid;
  double cap = 2e6;
  double tridiagonal_cap = 1e6;
  double sparse_cap = 1e5;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::string out;
};

void add_common(CLI::App* app, Common& c, bool walk = false) {
  app->add_option("--family", c.family, "family descriptor")->capture_default_str();
  app->add_option("--theta", c.theta, "vertex measure: pi or one")->capture_default_str();
  if (!walk) {
    app->add_option("--metric", c.metric, "metric descriptor")->capture_default_str();
    app->add_option("--rmax", c.rmax, "largest radius (0: largest ball within the cap)");
    app->add_option("--grid", c.grid, "comma-separated radii")->delimiter(',');
    app->add_option("--cap", c.cap, "vertices per ball")->capture_default_str();
    app->add_option("--tridiagonal-cap", c.tridiagonal_cap, "dimension cap for path operators")->capture_default_str();
    app->add_option("--sparse-cap", c.sparse_cap, "dimension cap for general sparse operators")->capture_default_str();
    app->add_option("--tol", c.tol, "eigenvalue tolerance")->capture_default_str();
  }
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_option("--out", c.out, "output path");
}

std::size_t as_count(double x, const char* name) {
  if (!(x >= 1.0) || x != std::floor(x) || x > 1e15) throw UsageError(std::string(name) + " must be a positive integer");
  return static_cast<std::size_t>(x);
}

RunConfig to_config(const Common& c) {
  RunConfig r;
  r.family = c.family;
  try {
    r.theta = parse_theta_kind(c.theta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  r.metric = c.metric;
  r.rmax = c.rmax;
  r.grid = c.grid;
  r.cap = as_count(c.cap, "--cap");
  r.solver_caps.tridiagonal = as_count(c.tridiagonal_cap, "--tridiagonal-cap");
  r.solver_caps.sparse = as_count(c.sparse_cap, "--sparse-cap");
  r.tol = c.tol;
  if (!(r.tol > 0.0)) throw UsageError("--tol must be positive");
  r.seed = c.seed;
  r.out = c.out;
  return r;
}

MetricSpec metric_of(const RunConfig& r) {
  try {
    return parse_metric(r.metric, r.theta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("metric: ") + e.what());
  }
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + out);
  os << text;
}

std::string dump(const Json& j) {
  std::ostringstream os;
  write_json(os, j);
  return os.str();
}

std::vector<double> radii_of(const RunConfig& r) {
  std::vector<double> radii = r.grid;
  if (radii.empty() && r.rmax > 0.0) radii.push_back(r.rmax);
  if (radii.empty()) throw UsageError("give --rmax or --grid");
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

double parse_mu(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  try {
    return parse_double(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--mu: '" + text + "' is not a number");
  }
}

int report_error(const std::string& kind, const std::string& message, int code) {
  Json j{{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectrascope: volume growth and bottom-of-spectrum analysis of weighted graphs"};
  app.footer(kDescriptors);
  app.require_subcommand(1);

  Common c;
  int result = kOk;

  auto* analyze_cmd = app.add_subcommand("analyze", "profile, growth exponent, bounds, lambda0, lambda_ess, consistency");
  add_common(analyze_cmd, c);

  int example = 0;
  std::string format = "text";
  auto* reproduce_cmd = app.add_subcommand("reproduce", "comparison table for example 1, 2 or 3");
  reproduce_cmd->add_option("--example,example", example, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
  reproduce_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  add_common(reproduce_cmd, c);

  auto* ball_cmd = app.add_subcommand("ball", "ball B(root, rmax) as CSV vertex,distance");
  add_common(ball_cmd, c);

  double window = 0.5;
  auto* mu_cmd = app.add_subcommand("mu", "volume profile and growth classification");
  add_common(mu_cmd, c);
  mu_cmd->add_option("--window", window, "tail fraction of the radius range")->capture_default_str();

  std::string method = "auto";
  auto* lambda0_cmd = app.add_subcommand("lambda0", "Dirichlet exhaustion on balls of the given radii");
  add_common(lambda0_cmd, c);
  lambda0_cmd->add_option("--method", method, "auto, dense, sturm or lanczos")->capture_default_str();

  std::vector<double> k_grid;
  auto* ess_cmd = app.add_subcommand("lambdaess", "Dirichlet eigenvalues on annuli {k <= rho <= R}");
  add_common(ess_cmd, c);
  ess_cmd->add_option("--k-grid", k_grid, "comma-separated inner radii")->delimiter(',')->required();

  std::string mu_text;
  std::optional<double> m_opt, M_opt;
  auto* bounds_cmd = app.add_subcommand("bounds", "spectral bounds from mu and the edge-cost range");
  bounds_cmd->add_option("--mu", mu_text, "growth exponent (number or inf)")->required();
  bounds_cmd->add_option("--m", m_opt, "smallest edge cost");
  bounds_cmd->add_option("--M", M_opt, "largest edge cost");
  bounds_cmd->add_option("--out", c.out, "output path");

  std::string mode = "trajectory";
  double horizon = 1.0;
  double paths = 1;
  double jump_cap = 1e6;
  std::uint64_t y = 0;
  std::vector<double> t_grid;
  auto* sim_cmd = app.add_subcommand("simulate", "continuous-time random walk from the root");
  add_common(sim_cmd, c, true);
  sim_cmd->add_option("--mode", mode, "trajectory, kernel or explosion")
      ->check(CLI::IsMember({"trajectory", "kernel", "explosion"}))
      ->capture_default_str();
  sim_cmd->add_option("--horizon", horizon, "time horizon")->capture_default_str();
  sim_cmd->add_option("--paths", paths, "number of paths")->capture_default_str();
  sim_cmd->add_option("--jump-cap", jump_cap, "jumps per path before the path is flagged")->capture_default_str();
  sim_cmd->add_option("--y", y, "target vertex id (kernel mode)");
  sim_cmd->add_option("--t-grid", t_grid, "comma-separated times (kernel mode)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kUsage);
  }

  try {
    if (analyze_cmd->parsed()) {
      const auto cfg = to_config(c);
      const auto res = analyze(cfg);
      if (!cfg.out.empty()) write_bundle(res, cfg.out);
      std::cout << dump(res.to_json());
      result = res.exit_code() == 0 ? kOk : kViolation;
    } else if (reproduce_cmd->parsed()) {
      const auto cfg = to_config(c);
      const auto table = reproduce(example, cfg);
      emit(cfg.out, format == "json" ? dump(table.to_json()) : table.to_text());
    } else if (ball_cmd->parsed()) {
      const auto cfg = to_config(c);
      if (!(cfg.rmax > 0.0)) throw UsageError("ball needs --rmax > 0");
      const auto family = parse_family(cfg.family);
      const auto b = ball(*family, metric_of(cfg), family->root(), cfg.rmax, cfg.cap);
      std::ostringstream os;
      write_ball_csv(os, b);
      emit(cfg.out, os.str());
    } else if (mu_cmd->parsed()) {
      const auto cfg = to_config(c);
      const auto family = parse_family(cfg.family);
      const auto spec = metric_of(cfg);
      VolumeProfile profile;
      if (!cfg.grid.empty()) {
        auto grid = cfg.grid;
        std::sort(grid.begin(), grid.end());
        profile = growth_profile(*family, spec, cfg.theta, family->root(), grid, cfg.cap);
      } else if (cfg.rmax > 0.0) {
        const auto b = ball(*family, spec, family->root(), cfg.rmax, cfg.cap);
        std::vector<double> d;
        for (const auto& e : b.entries) {
          if (d.empty() || e.distance > d.back()) d.push_back(e.distance);
        }
        profile = profile_from_ball(*family, spec, cfg.theta, b, d);
      } else {
        profile = growth_profile_to_cap(*family, spec, cfg.theta, family->root(), cfg.cap);
      }
      const auto g = classify_growth(profile, kDefaultGrowthEpsilon, window);
      Json j = to_json(g);
      j["family"] = profile.family;
      j["metric"] = profile.metric;
      j["theta"] = to_string(profile.theta);
      if (!cfg.out.empty()) {
        std::filesystem::create_directories(cfg.out);
        std::ofstream csv(std::filesystem::path(cfg.out) / "profile.csv", std::ios::binary);
        write_profile_csv(csv, profile);
        std::ofstream js(std::filesystem::path(cfg.out) / "mu.json", std::ios::binary);
        write_json(js, j);
      }
      std::cout << dump(j);
    } else if (lambda0_cmd->parsed()) {
      const auto cfg = to_config(c);
      const auto family = parse_family(cfg.family);
      const auto spec = metric_of(cfg);
      EigenMethod m;
      try {
        m = parse_eigen_method(method);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      Exhaustion ex;
      if (m == EigenMethod::Auto) {
        const auto radii = radii_of(cfg);
        ex = lambda0_exhaustion(*family, cfg.theta, spec, family->root(), radii, cfg.cap, cfg.tol, cfg.solver_caps);
      } else {
        ex.family = family->descriptor();
        ex.metric = spec.descriptor();
        ex.theta = cfg.theta;
        ex.tol = cfg.tol;
        for (const double r : radii_of(cfg)) {
          const auto t = truncate_ball(*family, spec, family->root(), r, cfg.cap);
          ExhaustionStep step{r, t.size(), dirichlet_eigenvalue(t, cfg.theta, cfg.tol, cfg.solver_caps, m)};
          if (!ex.steps.empty() && step.estimate.lambda > ex.steps.back().estimate.lambda + 10.0 * cfg.tol) {
            ex.monotone = false;
          }
          ex.steps.push_back(std::move(step));
        }
      }
      emit(cfg.out, dump(to_json(ex)));
    } else if (ess_cmd->parsed()) {
      const auto cfg = to_config(c);
      const auto family = parse_family(cfg.family);
      std::sort(k_grid.begin(), k_grid.end());
      const auto table = lambda_ess_annuli(*family, cfg.theta, metric_of(cfg), family->root(), k_grid,
                                           radii_of(cfg), cfg.cap, cfg.tol, cfg.solver_caps);
      emit(cfg.out, dump(to_json(table)));
    } else if (bounds_cmd->parsed()) {
      BoundInput in;
      in.mu = parse_mu(mu_text);
      in.m = m_opt;
      in.M = M_opt;
      if (in.M && !in.m) throw UsageError("--M needs --m");
      if (in.m && !in.M && std::isfinite(in.mu)) in.M = in.m;
      in.provenance = "command line";
      emit(c.out, dump(to_json(bound_report(in))));
    } else if (sim_cmd->parsed()) {
      const auto family = parse_family(c.family);
      WalkConfig wc;
      try {
        wc.theta = parse_theta_kind(c.theta);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      wc.horizon = horizon;
      wc.paths = as_count(paths, "--paths");
      wc.seed = c.seed;
      wc.jump_cap = as_count(jump_cap, "--jump-cap");
      wc.validate();
      if (mode == "trajectory") {
        const auto tr = simulate_walk(*family, wc, family->root());
        std::ostringstream os;
        write_trajectory_csv(os, tr);
        emit(c.out, os.str());
      } else if (mode == "kernel") {
        if (t_grid.empty()) t_grid.push_back(horizon);
        std::sort(t_grid.begin(), t_grid.end());
        const auto est = heat_kernel_mc(*family, wc, family->root(), vid(y), t_grid);
        Json arr = Json::array();
        for (const auto& e : est) arr.push_back(to_json(e));
        emit(c.out, dump(arr));
      } else {
        emit(c.out, dump(to_json(explosion_probe(*family, wc, family->root()))));
      }
    }
  } catch (const UsageError& e) {
    return report_error("usage", e.what(), kUsage);
  } catch (const SolverError& e) {
    return report_error("solver", std::string(e.what()) + " (best lambda " + format_double(e.best_lambda) +
                                      ", residual " + format_double(e.best_residual) + ")",
                        kNumeric);
  } catch (const BallCapExceeded& e) {
    return report_error("ball_cap", e.what(), kNumeric);
  } catch (const DimensionCapExceeded& e) {
    return report_error("dimension_cap", e.what(), kNumeric);
  } catch (const InsufficientSamples& e) {
    return report_error("insufficient_samples", e.what(), kNumeric);
  } catch (const std::domain_error& e) {
    return report_error("domain", e.what(), kNumeric);
  } catch (const std::invalid_argument& e) {
    return report_error("usage", e.what(), kUsage);
  } catch (const std::exception& e) {
    return report_error("numeric", e.what(), kNumeric);
  }
  return result;
}
