#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "spectrascope/family.hpp"

namespace spectrascope {

enum class MetricKind { Graph, ScaledGraph, DE, DV, Custom };

/// Edge-cost rule defining a path metric on a family.
///
///   Graph        cost 1
///   ScaledGraph  cost 1/sqrt(A)
///   DE           cost (1/sqrt(D)) * (1 ^ pi_e^{-1/2}), D a degree bound
///   DV           cost 1 ^ (theta_u/pi_u ^ theta_v/pi_v)^{1/2}
///   Custom       caller-supplied rule
///
/// c_rho is the declared upper bound on a single edge cost; ball expansion
/// rejects any edge whose cost exceeds it.
struct MetricSpec {
  using CostRule = std::function<double(const GraphFamily&, VertexId, VertexId, double weight)>;

  MetricKind kind = MetricKind::Graph;
  double scale_a = 1.0;
  double degree_bound = 0.0;
  ThetaKind theta = ThetaKind::One;
  double c_rho = 1.0;
  CostRule custom;
  std::string custom_name;

  static MetricSpec graph();
  static MetricSpec scaled(double a);
  static MetricSpec de(double degree_bound);
  static MetricSpec dv(ThetaKind theta = ThetaKind::One);
  static MetricSpec custom_rule(std::string name, CostRule rule, double c_rho);

  /// "graph", "scaled:A=4", "de:D=2", "dv" or "dv:theta=pi", "custom:<name>".
  std::string descriptor() const;
};

/// Parses the descriptors produced by MetricSpec::descriptor (custom excluded).
MetricSpec parse_metric(const std::string& text, ThetaKind default_theta = ThetaKind::One);

class NotAdjacentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// rho(u, v) for adjacent u ~ v. Throws NotAdjacentError otherwise.
double edge_cost(const MetricSpec& spec, const GraphFamily& family, VertexId u, VertexId v);

/// Cost of an edge whose weight is already known (no adjacency lookup).
double edge_cost(const MetricSpec& spec, const GraphFamily& family, VertexId u, VertexId v,
                 double weight);

struct BallEntry {
  VertexId id;
  double distance;
};

/// Closed ball B(x0, r) with exact shortest-path distances.
struct MetricBall {
  VertexId center{};
  double radius = 0.0;
  /// Smallest distance of a vertex outside the ball; +inf when none exists.
  double frontier_bound = std::numeric_limits<double>::infinity();
  /// Sorted by distance, ties broken by vertex id.
  std::vector<BallEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool contains(VertexId x) const { return lookup_.contains(raw(x)); }
  std::optional<double> distance(VertexId x) const;
  std::vector<VertexId> vertices() const;

  void rebuild_index();

 private:
  std::unordered_map<std::uint64_t, double> lookup_;
};

/// Thrown when a ball holds more than `cap` vertices. The ball of radius
/// `resolved_radius` is guaranteed to fit within the cap.
class BallCapExceeded : public std::runtime_error {
 public:
  BallCapExceeded(std::size_t cap, std::size_t count, double requested, double resolved)
      : std::runtime_error("ball not resolved within cap " + std::to_string(cap) + " (" +
                           std::to_string(count) + " vertices settled)"),
        cap(cap),
        count(count),
        requested_radius(requested),
        resolved_radius(resolved) {}

  std::size_t cap;
  std::size_t count;
  double requested_radius;
  double resolved_radius;
};

/// Label-setting (Dijkstra) expansion of the closed ball. Distances are
/// accumulated in double-double precision and rounded once.
MetricBall ball(const GraphFamily& family, const MetricSpec& spec, VertexId x0, double r,
                std::size_t cap);

/// Largest ball around x0 that fits within `cap` vertices (the whole graph
/// for small finite families).
MetricBall largest_ball(const GraphFamily& family, const MetricSpec& spec, VertexId x0,
                        std::size_t cap);

struct AdaptednessReport {
  std::vector<BallEntry> slack;  ///< s(x) = (1/theta_x) sum_y pi_xy rho(x,y)^2 per vertex
  double max_slack = 0.0;
  double max_edge_cost = 0.0;
  double min_edge_cost = std::numeric_limits<double>::infinity();
  bool pass = true;

  static constexpr double kTolerance = 1.0 + 1e-12;
};

AdaptednessReport verify_adaptedness(const GraphFamily& family, const MetricSpec& spec, ThetaKind theta,
                                     std::span<const VertexId> vertices);

}  // namespace spectrascope
