#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "spectrascope/metric.hpp"

namespace spectrascope {

/// V(x0, r) = sum of theta_x over the ball.
double volume(const MetricBall& b, const GraphFamily& family, ThetaKind theta);

struct ProfileSample {
  double r = 0.0;
  double volume = 0.0;
  std::size_t count = 0;        ///< vertices in the ball
  double frontier_bound = 0.0;  ///< distance of the nearest excluded vertex
};

struct VolumeProfile {
  std::string family;
  std::string metric;
  ThetaKind theta = ThetaKind::One;
  std::size_t cap = 0;
  std::vector<ProfileSample> samples;
};

/// Samples V(x0, r) on a strictly increasing grid from one expansion to the
/// largest radius. BallCapExceeded reports the first grid radius that could
/// not be resolved as requested_radius.
VolumeProfile growth_profile(const GraphFamily& family, const MetricSpec& spec, ThetaKind theta, VertexId x0,
                             std::span<const double> r_grid, std::size_t cap);

/// Profile over the largest ball that fits in `cap`, sampled at up to
/// `max_samples` of the distinct distances occurring in it (all of them when
/// there are few, e.g. the sphere radii of a tree).
VolumeProfile growth_profile_to_cap(const GraphFamily& family, const MetricSpec& spec, ThetaKind theta,
                                    VertexId x0, std::size_t cap, std::size_t max_samples = 64);

/// Profile sampled from an already computed ball.
VolumeProfile profile_from_ball(const GraphFamily& family, const MetricSpec& spec, ThetaKind theta,
                                const MetricBall& b, std::span<const double> r_grid);

struct MuEstimate {
  double mu_hat = 0.0;      ///< least-squares tail slope of log V against r
  bool infinite = false;    ///< slopes diverge: growth looks superexponential
  double r_min = 0.0;
  double r_max = 0.0;
  double slope_ls = 0.0;
  double slope_max = 0.0;   ///< largest two-point incremental slope in the window
  double residual = 0.0;    ///< RMS residual of the linear fit
  std::size_t samples = 0;
};

/// Thrown when the tail window has fewer than three usable samples.
class InsufficientSamples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Estimates limsup (1/r) log V from the samples with r in the upper
/// `window_fraction` of the radius range.
MuEstimate estimate_mu(const VolumeProfile& profile, double window_fraction = 0.5);

/// Default exponent gap between the linear model and the r^{1+eps} / r^{1/(1+eps)} models.
inline constexpr double kDefaultGrowthEpsilon = 1.0;

enum class GrowthKind { Subexponential, Exponential, Superexponential, Inconclusive };

std::string to_string(GrowthKind kind);

struct GrowthClassification {
  GrowthKind kind = GrowthKind::Inconclusive;
  MuEstimate mu;
  double epsilon = kDefaultGrowthEpsilon;
  double residual_linear = 0.0;  ///< log V against r
  double residual_sub = 0.0;     ///< log V against r^{1/(1+eps)}
  double residual_super = 0.0;   ///< log V against r^{1+eps}
  double residual_poly = 0.0;    ///< log V against log r
  std::size_t increasing_run = 0;  ///< longest run of samples with strictly increasing slopes
  std::size_t decreasing_run = 0;  ///< longest run of samples with strictly decreasing slopes
  std::string reason;
};

/// Deterministic classification of the tail of a profile:
///
///   Superexponential  r^{1+eps} fit has at most half the residual of the
///                     linear fit AND incremental slopes increase strictly
///                     over >= 5 consecutive samples.
///   Subexponential    tail slope is zero, or the mirrored test with
///                     r^{1/(1+eps)} (or log r, for polynomial growth) and
///                     decreasing slopes holds.
///   Exponential       neither, with a positive tail slope whose max
///                     incremental slope stays within 25% of it and a linear
///                     fit whose RMS residual is at most 1% of the log V range.
///   Inconclusive      anything else (both tests fire, unstable slopes, too
///                     few samples).
GrowthClassification classify_growth(const VolumeProfile& profile, double epsilon = kDefaultGrowthEpsilon,
                                     double window_fraction = 0.5);

}  // namespace spectrascope
