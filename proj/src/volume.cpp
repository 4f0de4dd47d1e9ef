#include "spectrascope/volume.hpp"

#include <algorithm>
#include <cmath>

namespace spectrascope {

double volume(const MetricBall& b, const GraphFamily& family, ThetaKind theta) {
  double v = 0.0;
  for (const auto& e : b.entries) v += family.theta(theta, e.id);
  return v;
}

VolumeProfile profile_from_ball(const GraphFamily& family, const MetricSpec& spec, ThetaKind theta,
                                const MetricBall& b, std::span<const double> r_grid) {
  VolumeProfile p;
  p.family = family.descriptor();
  p.metric = spec.descriptor();
  p.theta = theta;

  std::vector<double> prefix(b.entries.size() + 1, 0.0);
  for (std::size_t i = 0; i < b.entries.size(); ++i) {
    prefix[i + 1] = prefix[i] + family.theta(theta, b.entries[i].id);
  }
  for (const double r : r_grid) {
    if (r > b.radius) throw std::invalid_argument("profile radius exceeds the ball radius");
    const auto it = std::upper_bound(b.entries.begin(), b.entries.end(), r,
                                     [](double value, const BallEntry& e) { return value < e.distance; });
    const auto count = static_cast<std::size_t>(it - b.entries.begin());
    const double frontier = count < b.entries.size() ? b.entries[count].distance : b.frontier_bound;
    p.samples.push_back({r, prefix[count], count, frontier});
  }
  return p;
}

VolumeProfile growth_profile(const GraphFamily& family, const MetricSpec& spec, ThetaKind theta, VertexId x0,
                             std::span<const double> r_grid, std::size_t cap) {
  for (std::size_t i = 1; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > r_grid[i - 1])) throw std::invalid_argument("growth_profile: grid must be strictly increasing");
  }
  if (r_grid.empty()) {
    VolumeProfile p;
    p.family = family.descriptor();
    p.metric = spec.descriptor();
    p.theta = theta;
    p.cap = cap;
    return p;
  }
  try {
    const auto b = ball(family, spec, x0, r_grid.back(), cap);
    auto p = profile_from_ball(family, spec, theta, b, r_grid);
    p.cap = cap;
    return p;
  } catch (const BallCapExceeded& e) {
    const auto it = std::find_if(r_grid.begin(), r_grid.end(), [&](double r) { return r > e.resolved_radius; });
    throw BallCapExceeded(e.cap, e.count, it == r_grid.end() ? r_grid.back() : *it, e.resolved_radius);
  }
}

VolumeProfile growth_profile_to_cap(const GraphFamily& family, const MetricSpec& spec, ThetaKind theta,
                                    VertexId x0, std::size_t cap, std::size_t max_samples) {
  const auto b = largest_ball(family, spec, x0, cap);
  std::vector<double> distinct;
  for (const auto& e : b.entries) {
    if (distinct.empty() || e.distance > distinct.back()) distinct.push_back(e.distance);
  }
  std::vector<double> grid;
  if (distinct.size() <= max_samples || max_samples < 2) {
    grid = distinct;
  } else {
    const double r_max = distinct.back();
    for (std::size_t i = 0; i < max_samples; ++i) {
      grid.push_back(r_max * static_cast<double>(i) / static_cast<double>(max_samples - 1));
    }
    grid.back() = r_max;
  }
  auto p = profile_from_ball(family, spec, theta, b, grid);
  p.cap = cap;
  return p;
}

std::string to_string(GrowthKind kind) {
  switch (kind) {
    case GrowthKind::Subexponential:
      return "subexponential";
    case GrowthKind::Exponential:
      return "exponential";
    case GrowthKind::Superexponential:
      return "superexponential";
    case GrowthKind::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

struct Tail {
  std::vector<double> r;
  std::vector<double> y;  // log V
  double r_min = 0.0;
};

Tail tail_window(const VolumeProfile& profile, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw std::invalid_argument("window_fraction must lie in (0, 1]");
  }
  Tail t;
  if (profile.samples.empty()) throw InsufficientSamples("empty profile");
  const double first = profile.samples.front().r;
  const double last = profile.samples.back().r;
  t.r_min = last - window_fraction * (last - first);
  for (const auto& s : profile.samples) {
    if (s.r >= t.r_min && s.volume > 0.0) {
      t.r.push_back(s.r);
      t.y.push_back(std::log(s.volume));
    }
  }
  if (t.r.size() < 3) {
    throw InsufficientSamples("need at least 3 samples with V > 0 in the tail window, got " +
                              std::to_string(t.r.size()));
  }
  return t;
}

struct LineFit {
  double slope = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (my + f.slope * (x[i] - mx));
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

LineFit fit_power(const Tail& t, double q) {
  std::vector<double> x(t.r.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::pow(t.r[i], q);
  return fit_line(x, t.y);
}

LineFit fit_log(const Tail& t) {
  std::vector<double> x(t.r.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::log(t.r[i]);
  return fit_line(x, t.y);
}

std::vector<double> incremental_slopes(const Tail& t) {
  std::vector<double> s;
  for (std::size_t i = 1; i < t.r.size(); ++i) s.push_back((t.y[i] - t.y[i - 1]) / (t.r[i] - t.r[i - 1]));
  return s;
}

// Longest run of samples whose incremental slopes are strictly monotone.
std::size_t longest_run(const std::vector<double>& s, bool increasing) {
  if (s.empty()) return 0;
  std::size_t best = 1, cur = 1;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const bool ok = increasing ? s[i] > s[i - 1] : s[i] < s[i - 1];
    cur = ok ? cur + 1 : 1;
    best = std::max(best, cur);
  }
  return best + 1;
}

constexpr std::size_t kMinRunSamples = 5;
constexpr double kResidualRatio = 2.0;
constexpr double kSlopeStability = 1.25;
constexpr double kLinearFitQuality = 0.01;

}  // namespace

GrowthClassification classify_growth(const VolumeProfile& profile, double epsilon, double window_fraction) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("classify_growth: epsilon must be positive");
  const auto t = tail_window(profile, window_fraction);

  GrowthClassification c;
  c.epsilon = epsilon;
  const auto linear = fit_line(t.r, t.y);
  const auto slopes = incremental_slopes(t);
  c.mu.r_min = t.r_min;
  c.mu.r_max = t.r.back();
  c.mu.slope_ls = linear.slope;
  c.mu.mu_hat = std::max(linear.slope, 0.0);
  c.mu.slope_max = *std::max_element(slopes.begin(), slopes.end());
  c.mu.residual = linear.rms;
  c.mu.samples = t.r.size();

  c.residual_linear = linear.rms;
  c.residual_sub = fit_power(t, 1.0 / (1.0 + epsilon)).rms;
  c.residual_super = fit_power(t, 1.0 + epsilon).rms;
  c.residual_poly = t.r.front() > 0.0 ? fit_log(t).rms : c.residual_linear;
  c.increasing_run = longest_run(slopes, true);
  c.decreasing_run = longest_run(slopes, false);

  const double y_scale = std::max(1.0, std::abs(t.y.back()));
  if (std::abs(linear.slope) * (t.r.back() - t.r.front()) <= 1e-12 * y_scale) {
    c.kind = GrowthKind::Subexponential;
    c.mu.mu_hat = 0.0;
    c.reason = "volume constant over the tail window";
    return c;
  }

  const bool super = kResidualRatio * c.residual_super <= c.residual_linear && c.increasing_run >= kMinRunSamples;
  const bool sub = kResidualRatio * std::min(c.residual_sub, c.residual_poly) <= c.residual_linear &&
                   c.decreasing_run >= kMinRunSamples;
  if (super && sub) {
    c.reason = "both sub- and superexponential tests fire";
  } else if (super) {
    c.kind = GrowthKind::Superexponential;
    c.mu.infinite = true;
    c.reason = "r^(1+eps) fit wins and incremental slopes keep increasing";
  } else if (sub) {
    c.kind = GrowthKind::Subexponential;
    c.reason = "r^(1/(1+eps)) or log r fit wins and incremental slopes keep decreasing";
  } else if (linear.slope > 0.0 && c.mu.slope_max <= kSlopeStability * linear.slope &&
             linear.rms <= kLinearFitQuality * (t.y.back() - t.y.front())) {
    c.kind = GrowthKind::Exponential;
    c.reason = "incremental slopes stabilise around the least-squares slope";
  } else {
    c.reason = "incremental slopes unstable or log V not linear in r";
  }
  return c;
}

MuEstimate estimate_mu(const VolumeProfile& profile, double window_fraction) {
  return classify_growth(profile, kDefaultGrowthEpsilon, window_fraction).mu;
}

}  // namespace spectrascope
