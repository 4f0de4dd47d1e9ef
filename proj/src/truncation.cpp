#include "spectrascope/truncation.hpp"

#include <algorithm>
#include <unordered_map>

#include "spectrascope/format.hpp"

namespace spectrascope {

bool Truncation::has_boundary() const {
  return std::any_of(boundary_degree.begin(), boundary_degree.end(), [](double b) { return b > 0.0; });
}

Truncation truncate(const GraphFamily& family, std::span<const VertexId> vertices, std::string provenance) {
  Truncation t;
  t.provenance = std::move(provenance);
  for (const auto x : vertices) t.graph.add_vertex(x, family.custom_theta(x));
  t.boundary_degree.assign(vertices.size(), 0.0);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (const auto& n : family.neighbors(vertices[i])) {
      const auto j = t.graph.index_of(n.id);
      if (!j) {
        t.boundary_degree[i] += n.weight;
      } else if (i < *j) {
        t.graph.add_edge_by_index(i, *j, n.weight);
      }
    }
  }
  t.full_degree.resize(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    t.full_degree[i] = t.graph.degree(i) + t.boundary_degree[i];
  }
  return t;
}

Truncation truncate_ball(const GraphFamily& family, const MetricSpec& spec, VertexId x0, double r,
                         std::size_t cap) {
  const auto b = ball(family, spec, x0, r, cap);
  const auto vs = b.vertices();
  return truncate(family, vs,
                  family.descriptor() + " ball(" + spec.descriptor() + ", x0=" + std::to_string(raw(x0)) +
                      ", r=" + format_double(r) + ")");
}

Truncation truncate_if(const GraphFamily& family, const MetricBall& b,
                       const std::function<bool(VertexId, double)>& keep, std::string provenance) {
  std::vector<VertexId> vs;
  for (const auto& e : b.entries) {
    if (keep(e.id, e.distance)) vs.push_back(e.id);
  }
  return truncate(family, vs, std::move(provenance));
}

Truncation truncate_annulus(const GraphFamily& family, const MetricBall& outer_ball, double inner) {
  return truncate_if(
      family, outer_ball, [inner](VertexId, double d) { return d >= inner; },
      family.descriptor() + " annulus(x0=" + std::to_string(raw(outer_ball.center)) +
          ", inner=" + format_double(inner) + ", outer=" + format_double(outer_ball.radius) + ")");
}

std::vector<double> theta_values(const Truncation& t, ThetaKind kind) {
  switch (kind) {
    case ThetaKind::Pi:
      return t.full_degree;
    case ThetaKind::One:
      return std::vector<double>(t.size(), 1.0);
    case ThetaKind::Custom:
      return {t.graph.thetas().begin(), t.graph.thetas().end()};
  }
  return {};
}

double operator_norm_A(const Truncation& t, ThetaKind kind) {
  const auto theta = theta_values(t, kind);
  double a = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) a = std::max(a, t.full_degree[i] / theta[i]);
  return a;
}

}  // namespace spectrascope
