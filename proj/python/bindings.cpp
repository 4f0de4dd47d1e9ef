#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spectrascope/bounds.hpp"
#include "spectrascope/export.hpp"
#include "spectrascope/run.hpp"
#include "spectrascope/walk.hpp"

namespace py = pybind11;
using namespace spectrascope;

namespace {

// Results cross the boundary as JSON text; the python side parses them.
std::string text(const Json& j) { return j.dump(); }

MetricSpec metric(const std::string& descriptor, const std::string& theta) {
  return parse_metric(descriptor, parse_theta_kind(theta));
}

SolverCaps caps(std::size_t tridiagonal, std::size_t sparse) {
  SolverCaps c;
  c.tridiagonal = tridiagonal;
  c.sparse = sparse;
  return c;
}

std::string ball_json(const std::string& family, const std::string& metric_d, const std::string& theta, double r,
                      std::size_t cap) {
  const auto f = parse_family(family);
  const auto b = ball(*f, metric(metric_d, theta), f->root(), r, cap);
  Json ids = Json::array(), distances = Json::array();
  for (const auto& e : b.entries) {
    ids.push_back(raw(e.id));
    distances.push_back(e.distance);
  }
  return text({{"radius", b.radius}, {"vertices", ids}, {"distances", distances}});
}

std::string growth_json(const std::string& family, const std::string& metric_d, const std::string& theta,
                        std::size_t cap) {
  const auto f = parse_family(family);
  const auto p = growth_profile_to_cap(*f, metric(metric_d, theta), parse_theta_kind(theta), f->root(), cap);
  Json radii = Json::array(), volumes = Json::array();
  for (const auto& s : p.samples) {
    radii.push_back(s.r);
    volumes.push_back(s.volume);
  }
  Json j = to_json(classify_growth(p));
  j["radii"] = radii;
  j["volumes"] = volumes;
  return text(j);
}

std::string lambda0_json(const std::string& family, const std::string& metric_d, const std::string& theta,
                         const std::vector<double>& radii, std::size_t cap, double tol, std::size_t tridiagonal,
                         std::size_t sparse) {
  const auto f = parse_family(family);
  return text(to_json(lambda0_exhaustion(*f, parse_theta_kind(theta), metric(metric_d, theta), f->root(), radii, cap,
                                         tol, caps(tridiagonal, sparse))));
}

std::string lambda_ess_json(const std::string& family, const std::string& metric_d, const std::string& theta,
                            const std::vector<double>& k_grid, const std::vector<double>& outer, std::size_t cap,
                            double tol, std::size_t tridiagonal, std::size_t sparse) {
  const auto f = parse_family(family);
  return text(to_json(lambda_ess_annuli(*f, parse_theta_kind(theta), metric(metric_d, theta), f->root(), k_grid,
                                        outer, cap, tol, caps(tridiagonal, sparse))));
}

std::string bounds_json(double mu, std::optional<double> m, std::optional<double> M) {
  BoundInput in;
  in.mu = mu;
  in.m = m;
  in.M = M;
  in.provenance = "python";
  return text(to_json(bound_report(in)));
}

std::string analyze_json(const std::string& family, const std::string& theta, const std::string& metric_d,
                         double rmax, std::size_t cap, double tol, std::size_t tridiagonal, std::size_t sparse,
                         const std::string& out) {
  RunConfig c;
  c.family = family;
  c.theta = parse_theta_kind(theta);
  c.metric = metric_d;
  c.rmax = rmax;
  c.cap = cap;
  c.tol = tol;
  c.solver_caps = caps(tridiagonal, sparse);
  c.out = out;
  const auto r = analyze(c);
  if (!out.empty()) write_bundle(r, out);
  Json j = r.to_json();
  j["exit_code"] = r.exit_code();
  return text(j);
}

std::string heat_kernel_json(const std::string& family, const std::string& theta, std::uint64_t x,
                             std::uint64_t y, const std::vector<double>& t_grid, std::size_t paths,
                             std::uint64_t seed) {
  const auto f = parse_family(family);
  WalkConfig cfg;
  cfg.theta = parse_theta_kind(theta);
  cfg.paths = paths;
  cfg.seed = seed;
  cfg.horizon = t_grid.empty() ? 0.0 : *std::max_element(t_grid.begin(), t_grid.end());
  Json rows = Json::array();
  for (const auto& e : heat_kernel_mc(*f, cfg, vid(x), vid(y), t_grid)) rows.push_back(to_json(e));
  return text(rows);
}

std::string explosion_json(const std::string& family, double horizon, std::size_t jump_cap, std::size_t paths,
                           std::uint64_t seed) {
  const auto f = parse_family(family);
  WalkConfig cfg;
  cfg.theta = ThetaKind::One;
  cfg.horizon = horizon;
  cfg.jump_cap = jump_cap;
  cfg.paths = paths;
  cfg.seed = seed;
  return text(to_json(explosion_probe(*f, cfg, f->root())));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "spectrascope native core";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<BallCapExceeded>(m, "BallCapExceeded", PyExc_RuntimeError);
  py::register_exception<DimensionCapExceeded>(m, "DimensionCapExceeded", PyExc_RuntimeError);

  m.def("growth_bound_general", &growth_bound_general, py::arg("mu"));
  m.def("growth_bound_bounded", &growth_bound_bounded, py::arg("mu"), py::arg("m"), py::arg("M"));
  m.def("degenerate_bound", &degenerate_bound, py::arg("m"));
  m.def("scalar_I", &scalar_I, py::arg("t"));

  m.def("ball_json", &ball_json);
  m.def("growth_json", &growth_json);
  m.def("lambda0_json", &lambda0_json);
  m.def("lambda_ess_json", &lambda_ess_json);
  m.def("bounds_json", &bounds_json);
  m.def("analyze_json", &analyze_json);
  m.def("reproduce_json", [](int example) { return text(reproduce(example).to_json()); });
  m.def("heat_kernel_json", &heat_kernel_json);
  m.def("explosion_json", &explosion_json);
}
