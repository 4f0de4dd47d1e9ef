#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spectrascope/family.hpp"
#include "spectrascope/metric.hpp"

namespace spectrascope {

/// Finite vertex set cut out of a family, prepared for Dirichlet problems.
///
/// `graph` holds the interior edges only; its theta is the family's Custom
/// measure. `boundary_degree[i]` sums the weights of edges leaving the set and
/// `full_degree[i] = interior degree + boundary_degree[i]` is pi_x in the
/// ambient family.
struct Truncation {
  WeightedGraph graph;
  std::vector<double> boundary_degree;
  std::vector<double> full_degree;
  std::string provenance;

  std::size_t size() const noexcept { return graph.size(); }
  bool has_boundary() const;
};

/// Truncation on an explicit finite vertex set.
Truncation truncate(const GraphFamily& family, std::span<const VertexId> vertices, std::string provenance);

/// Truncation on B(x0, r). Propagates BallCapExceeded.
Truncation truncate_ball(const GraphFamily& family, const MetricSpec& spec, VertexId x0, double r,
                         std::size_t cap);

/// Vertices of `b` accepted by `keep(id, distance)`.
Truncation truncate_if(const GraphFamily& family, const MetricBall& b,
                       const std::function<bool(VertexId, double)>& keep, std::string provenance);

/// Closed annulus {x : inner <= rho(x0, x) <= outer}. inner = 0 gives the full ball.
Truncation truncate_annulus(const GraphFamily& family, const MetricBall& outer_ball, double inner);

/// theta_x on the truncation; ThetaKind::Pi uses the ambient pi_x.
std::vector<double> theta_values(const Truncation& t, ThetaKind kind);

/// A = max_x pi_x / theta_x with pi_x taken from full_degree.
double operator_norm_A(const Truncation& t, ThetaKind kind);

}  // namespace spectrascope
