#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spectrascope/graph.hpp"

namespace spectrascope {

struct Neighbor {
  VertexId id;
  double weight;
};

/// A locally finite, possibly infinite weighted graph given by oracles.
///
/// Implementations are immutable: every oracle is a pure function of the
/// vertex id, so a family can be shared between threads.
class GraphFamily {
 public:
  virtual ~GraphFamily() = default;

  virtual VertexId root() const = 0;
  virtual bool contains(VertexId x) const = 0;
  virtual std::vector<Neighbor> neighbors(VertexId x) const = 0;
  /// Family name plus parameters, e.g. "tree:k=3".
  virtual std::string descriptor() const = 0;

  /// pi_x. Override when a closed form is cheaper than summing neighbors.
  virtual double degree(VertexId x) const;
  /// Number of neighbors of x.
  virtual std::size_t neighbor_count(VertexId x) const { return neighbors(x).size(); }
  /// theta_x for ThetaKind::Custom. Families without a declared measure use 1.
  virtual double custom_theta(VertexId) const { return 1.0; }
  /// True when the family has finitely many vertices.
  virtual bool is_finite() const { return false; }

  double theta(ThetaKind kind, VertexId x) const;
  /// pi_{xy}, or nullopt when x and y are not adjacent.
  std::optional<double> edge_weight(VertexId x, VertexId y) const;
};

using FamilyPtr = std::shared_ptr<const GraphFamily>;

/// Rooted k-regular tree with unit weights (k >= 3).
FamilyPtr regular_tree(int k);

/// Half-line Z_+ with pi({n, n+1}) = (n+1)^2 log_+^alpha(n+1), alpha < 2,
/// log_+(x) = max(ln x, 1).
FamilyPtr birth_death(double alpha);

/// Rooted tree with unit weights whose vertices at distance r >= 1 from the
/// root have floor(2 r^alpha) children, 0 <= alpha < 2. The root has 2.
FamilyPtr spherical_tree(double alpha);

/// Half-line Z_+ with caller-supplied edge weights pi({n, n+1}) = weight(n).
FamilyPtr chain(std::string name, std::function<double(std::uint64_t)> weight);

/// A finite graph viewed as a family; Custom theta is the graph's declared measure.
FamilyPtr finite_family(WeightedGraph graph, std::optional<VertexId> root = std::nullopt,
                        std::string name = "finite");

/// Number of forward neighbors at graph distance r in spherical_tree(alpha).
std::uint64_t spherical_branching(double alpha, std::uint64_t r);

/// log_+(x) = max(ln x, 1).
double log_plus(double x);

struct SymmetryAudit {
  std::size_t checked_pairs = 0;
  std::size_t violations = 0;
  bool theta_positive = true;
  double min_theta = 0.0;  ///< inf theta over the audited vertices
};

/// Checks y in N(x) with weight w implies x in N(y) with weight w (exactly),
/// and theta_x > 0, for every vertex in the sample.
SymmetryAudit audit_family(const GraphFamily& family, std::span<const VertexId> vertices,
                           ThetaKind theta);

}  // namespace spectrascope
