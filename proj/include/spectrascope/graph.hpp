#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace spectrascope {

/// Opaque vertex identifier. Families number their vertices canonically in
/// expansion order from the root, so ids are stable across runs.
enum class VertexId : std::uint64_t {};

constexpr std::uint64_t raw(VertexId v) noexcept { return static_cast<std::uint64_t>(v); }
constexpr VertexId vid(std::uint64_t v) noexcept { return VertexId{v}; }

struct VertexIdHash {
  std::size_t operator()(VertexId v) const noexcept { return std::hash<std::uint64_t>{}(raw(v)); }
};

/// Choice of vertex measure.
///   Pi     : theta_x = pi_x (constant-speed walk, normalized Laplacian)
///   One    : theta_x = 1    (variable-speed walk, physical Laplacian)
///   Custom : theta supplied by the graph / family
enum class ThetaKind { Pi, One, Custom };

std::string to_string(ThetaKind kind);
ThetaKind parse_theta_kind(const std::string& text);

/// Raised when an input violates the weighted-graph model (loops, duplicate
/// edges, non-positive weights, unknown vertices).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite weighted graph with symmetric positive conductances and a positive
/// vertex measure. Each undirected edge is stored once.
class WeightedGraph {
 public:
  struct Edge {
    std::size_t u;
    std::size_t v;
    double weight;
  };
  struct Adjacent {
    std::size_t index;
    double weight;
  };

  WeightedGraph() = default;

  /// Returns the dense index of the new vertex.
  std::size_t add_vertex(VertexId id, double theta);
  void add_edge(VertexId u, VertexId v, double weight);
  void add_edge_by_index(std::size_t u, std::size_t v, double weight);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  VertexId id(std::size_t i) const { return ids_.at(i); }
  double theta(std::size_t i) const { return theta_.at(i); }
  std::span<const double> thetas() const noexcept { return theta_; }
  std::optional<std::size_t> index_of(VertexId id) const;
  bool contains(VertexId id) const { return index_.contains(raw(id)); }

  std::span<const Adjacent> adjacent(std::size_t i) const { return adjacency_.at(i); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// pi_{uv}; zero when u and v are not adjacent.
  double weight(VertexId u, VertexId v) const;
  /// pi_x = sum of incident edge weights.
  double degree(std::size_t i) const;
  std::vector<double> degrees() const;

  bool is_connected() const;

 private:
  static std::uint64_t pair_key(std::size_t a, std::size_t b);

  std::vector<VertexId> ids_;
  std::vector<double> theta_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::vector<Adjacent>> adjacency_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> edge_index_;
};

/// theta_x for every vertex of a finite graph under the given measure.
std::vector<double> theta_values(const WeightedGraph& graph, ThetaKind kind);

/// A = max_x pi_x / theta_x.
double operator_norm_A(const WeightedGraph& graph, ThetaKind kind);

}  // namespace spectrascope
