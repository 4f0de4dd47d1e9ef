#include "spectrascope/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spectrascope {

std::string to_string(ThetaKind kind) {
  switch (kind) {
    case ThetaKind::Pi:
      return "pi";
    case ThetaKind::One:
      return "one";
    case ThetaKind::Custom:
      return "custom";
  }
  return "unknown";
}

ThetaKind parse_theta_kind(const std::string& text) {
  if (text == "pi") return ThetaKind::Pi;
  if (text == "one" || text == "1") return ThetaKind::One;
  if (text == "custom") return ThetaKind::Custom;
  throw std::invalid_argument("unknown theta kind '" + text + "' (expected pi, one or custom)");
}

std::uint64_t WeightedGraph::pair_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

std::size_t WeightedGraph::add_vertex(VertexId id, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw GraphError("vertex " + std::to_string(raw(id)) + ": theta must be positive and finite");
  }
  if (index_.contains(raw(id))) {
    throw GraphError("duplicate vertex " + std::to_string(raw(id)));
  }
  if (ids_.size() >= (std::size_t{1} << 32)) {
    throw GraphError("too many vertices");
  }
  const std::size_t i = ids_.size();
  ids_.push_back(id);
  theta_.push_back(theta);
  adjacency_.emplace_back();
  index_.emplace(raw(id), i);
  return i;
}

void WeightedGraph::add_edge(VertexId u, VertexId v, double weight) {
  const auto iu = index_of(u);
  const auto iv = index_of(v);
  if (!iu) throw GraphError("undeclared vertex " + std::to_string(raw(u)));
  if (!iv) throw GraphError("undeclared vertex " + std::to_string(raw(v)));
  add_edge_by_index(*iu, *iv, weight);
}

void WeightedGraph::add_edge_by_index(std::size_t u, std::size_t v, double weight) {
  if (u >= size() || v >= size()) throw GraphError("edge endpoint out of range");
  if (u == v) throw GraphError("loop");
  if (!(weight > 0.0)) throw GraphError("non-positive weight");
  if (!std::isfinite(weight)) throw GraphError("non-finite weight");
  const auto key = pair_key(u, v);
  if (edge_index_.contains(key)) throw GraphError("duplicate edge");
  edge_index_.emplace(key, edges_.size());
  edges_.push_back({std::min(u, v), std::max(u, v), weight});
  adjacency_[u].push_back({v, weight});
  adjacency_[v].push_back({u, weight});
}

std::optional<std::size_t> WeightedGraph::index_of(VertexId id) const {
  const auto it = index_.find(raw(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double WeightedGraph::weight(VertexId u, VertexId v) const {
  const auto iu = index_of(u);
  const auto iv = index_of(v);
  if (!iu || !iv || *iu == *iv) return 0.0;
  const auto it = edge_index_.find(pair_key(*iu, *iv));
  return it == edge_index_.end() ? 0.0 : edges_[it->second].weight;
}

double WeightedGraph::degree(std::size_t i) const {
  double sum = 0.0;
  for (const auto& a : adjacency_.at(i)) sum += a.weight;
  return sum;
}

std::vector<double> WeightedGraph::degrees() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = degree(i);
  return out;
}

bool WeightedGraph::is_connected() const {
  if (size() <= 1) return true;
  std::vector<char> seen(size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (const auto& a : adjacency_[x]) {
      if (!seen[a.index]) {
        seen[a.index] = 1;
        ++count;
        stack.push_back(a.index);
      }
    }
  }
  return count == size();
}

std::vector<double> theta_values(const WeightedGraph& graph, ThetaKind kind) {
  switch (kind) {
    case ThetaKind::Pi:
      return graph.degrees();
    case ThetaKind::One:
      return std::vector<double>(graph.size(), 1.0);
    case ThetaKind::Custom:
      return {graph.thetas().begin(), graph.thetas().end()};
  }
  return {};
}

double operator_norm_A(const WeightedGraph& graph, ThetaKind kind) {
  const auto theta = theta_values(graph, kind);
  double a = 0.0;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const double pi = graph.degree(i);
    if (pi > 0.0) a = std::max(a, pi / theta[i]);
  }
  return a;
}

}  // namespace spectrascope
