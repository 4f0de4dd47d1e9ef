#include "spectrascope/export.hpp"

#include <cmath>
#include <limits>

#include "spectrascope/format.hpp"

namespace spectrascope {

Json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

namespace {

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

}  // namespace

void write_ball_csv(std::ostream& os, const MetricBall& b) {
  os << "vertex,distance\n";
  for (const auto& e : b.entries) os << raw(e.id) << ',' << format_double(e.distance) << '\n';
}

void write_profile_csv(std::ostream& os, const VolumeProfile& p) {
  os << "r,V,logV\n";
  for (const auto& s : p.samples) {
    os << format_double(s.r) << ',' << format_double(s.volume) << ','
       << format_double(s.volume > 0.0 ? std::log(s.volume) : -std::numeric_limits<double>::infinity()) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "time,vertex\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) os << format_double(tr.times[i]) << ',' << raw(tr.vertices[i]) << '\n';
}

Json to_json(const MuEstimate& mu) {
  Json j;
  j["mu_hat"] = mu.infinite ? Json("inf") : number(mu.mu_hat);
  j["window"] = Json::array({number(mu.r_min), number(mu.r_max)});
  j["slope_ls"] = number(mu.slope_ls);
  j["slope_max"] = number(mu.slope_max);
  j["residual"] = number(mu.residual);
  j["samples"] = mu.samples;
  return j;
}

Json to_json(const GrowthClassification& c) {
  Json j = to_json(c.mu);
  j["classification"] = to_string(c.kind);
  j["epsilon"] = number(c.epsilon);
  j["residual_linear"] = number(c.residual_linear);
  j["residual_sub"] = number(c.residual_sub);
  j["residual_super"] = number(c.residual_super);
  j["residual_poly"] = number(c.residual_poly);
  j["increasing_run"] = c.increasing_run;
  j["decreasing_run"] = c.decreasing_run;
  j["reason"] = c.reason;
  return j;
}

Json to_json(const SpectralEstimate& e, const std::string& radius_or_annulus, bool monotonicity_ok) {
  Json j;
  j["lambda"] = number(e.lambda);
  j["residual"] = number(e.residual);
  j["method"] = to_string(e.method);
  j["n"] = e.n;
  j["radius_or_annulus"] = radius_or_annulus;
  j["monotonicity_ok"] = monotonicity_ok;
  j["bracket"] = Json::array({number(e.bracket_lo), number(e.bracket_hi)});
  j["iterations"] = e.iterations;
  return j;
}

Json to_json(const Exhaustion& ex) {
  Json j;
  j["family"] = ex.family;
  j["metric"] = ex.metric;
  j["theta"] = to_string(ex.theta);
  j["tol"] = number(ex.tol);
  j["monotone"] = ex.monotone;
  Json steps = Json::array();
  for (const auto& s : ex.steps) steps.push_back(to_json(s.estimate, "ball r=" + format_double(s.radius), ex.monotone));
  j["steps"] = steps;
  return j;
}

Json to_json(const AnnulusTable& t) {
  Json j;
  j["family"] = t.family;
  j["metric"] = t.metric;
  j["theta"] = to_string(t.theta);
  j["tol"] = number(t.tol);
  j["monotone"] = t.monotone;
  j["estimate"] = number(t.estimate);
  j["estimate_inner"] = number(t.estimate_inner);
  j["stabilised"] = t.stabilised;
  j["caveat"] = t.caveat;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back(to_json(r.estimate, "annulus [" + format_double(r.inner) + ", " + format_double(r.outer) + "]",
                           t.monotone));
  }
  j["rows"] = rows;
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["mu"] = number(r.mu);
  j["m"] = optional_number(r.m);
  j["M"] = optional_number(r.M);
  j["general_bound"] = optional_number(r.general_bound);
  j["bounded_metric_bound"] = optional_number(r.bounded_metric_bound);
  j["degenerate_bound"] = optional_number(r.degenerate_bound);
  j["flags"] = {{"ess_spectrum_zero", r.flags.ess_spectrum_zero},
                {"ess_spectrum_nonempty", r.flags.ess_spectrum_nonempty}};
  j["inputs_provenance"] = r.provenance;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const ConsistencyReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["lambda0_below_ess"] = r.lambda0_below_ess;
  j["ess_below_bound"] = r.ess_below_bound;
  j["bound"] = optional_number(r.bound);
  j["tol"] = number(r.tol);
  j["findings"] = r.findings;
  return j;
}

Json to_json(const HeatKernelEstimate& e) {
  Json j;
  j["t"] = number(e.t);
  j["x"] = raw(e.x);
  j["y"] = raw(e.y);
  j["p_hat"] = number(e.p_hat);
  j["std_err"] = number(e.std_err);
  j["paths"] = e.paths;
  j["seed"] = e.seed;
  return j;
}

Json to_json(const ExplosionResult& r) {
  Json j;
  j["paths"] = r.paths;
  j["capped"] = r.capped;
  j["fraction"] = number(r.fraction);
  j["ci95"] = Json::array({number(r.ci_low), number(r.ci_high)});
  j["horizon"] = number(r.horizon);
  j["jump_cap"] = r.jump_cap;
  j["seed"] = r.seed;
  j["total_jumps"] = r.total_jumps;
  return j;
}

void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

}  // namespace spectrascope
