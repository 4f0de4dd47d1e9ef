#include "spectrascope/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spectrascope/format.hpp"

namespace spectrascope {

double GraphFamily::degree(VertexId x) const {
  double sum = 0.0;
  for (const auto& n : neighbors(x)) sum += n.weight;
  return sum;
}

double GraphFamily::theta(ThetaKind kind, VertexId x) const {
  switch (kind) {
    case ThetaKind::Pi:
      return degree(x);
    case ThetaKind::One:
      return 1.0;
    case ThetaKind::Custom:
      return custom_theta(x);
  }
  return 1.0;
}

std::optional<double> GraphFamily::edge_weight(VertexId x, VertexId y) const {
  for (const auto& n : neighbors(x)) {
    if (n.id == y) return n.weight;
  }
  return std::nullopt;
}

double log_plus(double x) { return std::max(std::log(x), 1.0); }

std::uint64_t spherical_branching(double alpha, std::uint64_t r) {
  if (r == 0) return 2;
  const double k = 2.0 * std::pow(static_cast<double>(r), alpha);
  return static_cast<std::uint64_t>(std::floor(k * (1.0 + 1e-12)));
}

namespace {

// Rooted tree with unit weights where every vertex at level r has
// branching(r) children. Vertices are numbered breadth-first: level r
// occupies ids [start_[r], start_[r + 1]).
class LevelTree final : public GraphFamily {
 public:
  LevelTree(std::string name, const std::function<std::uint64_t(std::uint64_t)>& branching)
      : name_(std::move(name)) {
    constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
    start_.push_back(0);
    std::uint64_t level_size = 1;
    for (std::uint64_t r = 0;; ++r) {
      start_.push_back(start_.back() + level_size);
      const std::uint64_t b = branching(r);
      if (b == 0) throw std::invalid_argument(name_ + ": zero branching at level " + std::to_string(r));
      branching_.push_back(b);
      if (level_size > (kLimit - start_.back()) / b) break;
      level_size *= b;
    }
  }

  VertexId root() const override { return vid(0); }
  bool contains(VertexId x) const override { return raw(x) < start_.back(); }
  std::string descriptor() const override { return name_; }

  std::vector<Neighbor> neighbors(VertexId x) const override {
    const auto [r, i] = locate(x);
    std::vector<Neighbor> out;
    out.reserve(branching_[r] + 1);
    if (r > 0) out.push_back({vid(start_[r - 1] + i / branching_[r - 1]), 1.0});
    if (r + 2 >= start_.size()) {
      throw std::overflow_error(name_ + ": vertex id space exhausted at level " + std::to_string(r + 1));
    }
    const std::uint64_t first = start_[r + 1] + i * branching_[r];
    for (std::uint64_t c = 0; c < branching_[r]; ++c) out.push_back({vid(first + c), 1.0});
    return out;
  }

  double degree(VertexId x) const override {
    return static_cast<double>(neighbor_count(x));
  }

  std::size_t neighbor_count(VertexId x) const override {
    const auto r = locate(x).first;
    return (r > 0 ? 1 : 0) + branching_[r];
  }

 private:
  std::pair<std::size_t, std::uint64_t> locate(VertexId x) const {
    if (!contains(x)) throw std::out_of_range(name_ + ": vertex " + std::to_string(raw(x)) + " out of range");
    const auto it = std::upper_bound(start_.begin(), start_.end(), raw(x));
    const auto r = static_cast<std::size_t>(it - start_.begin()) - 1;
    return {r, raw(x) - start_[r]};
  }

  std::string name_;
  std::vector<std::uint64_t> start_;
  std::vector<std::uint64_t> branching_;
};

class Chain final : public GraphFamily {
 public:
  Chain(std::string name, std::function<double(std::uint64_t)> weight)
      : name_(std::move(name)), weight_(std::move(weight)) {}

  VertexId root() const override { return vid(0); }
  bool contains(VertexId) const override { return true; }
  std::string descriptor() const override { return name_; }

  std::vector<Neighbor> neighbors(VertexId x) const override {
    const auto n = raw(x);
    std::vector<Neighbor> out;
    out.reserve(2);
    if (n > 0) out.push_back({vid(n - 1), weight_(n - 1)});
    out.push_back({vid(n + 1), weight_(n)});
    return out;
  }

  double degree(VertexId x) const override {
    const auto n = raw(x);
    return (n > 0 ? weight_(n - 1) : 0.0) + weight_(n);
  }

  std::size_t neighbor_count(VertexId x) const override { return raw(x) > 0 ? 2 : 1; }

 private:
  std::string name_;
  std::function<double(std::uint64_t)> weight_;
};

class FiniteFamily final : public GraphFamily {
 public:
  FiniteFamily(WeightedGraph graph, std::optional<VertexId> root, std::string name)
      : graph_(std::move(graph)), name_(std::move(name)) {
    if (graph_.size() == 0) throw std::invalid_argument("finite family needs at least one vertex");
    root_ = root.value_or(graph_.id(0));
    if (!graph_.contains(root_)) throw std::invalid_argument("root is not a vertex of the graph");
  }

  VertexId root() const override { return root_; }
  bool contains(VertexId x) const override { return graph_.contains(x); }
  std::string descriptor() const override { return name_; }
  bool is_finite() const override { return true; }

  std::vector<Neighbor> neighbors(VertexId x) const override {
    const auto i = index(x);
    std::vector<Neighbor> out;
    out.reserve(graph_.adjacent(i).size());
    for (const auto& a : graph_.adjacent(i)) out.push_back({graph_.id(a.index), a.weight});
    return out;
  }

  double degree(VertexId x) const override { return graph_.degree(index(x)); }
  std::size_t neighbor_count(VertexId x) const override { return graph_.adjacent(index(x)).size(); }
  double custom_theta(VertexId x) const override { return graph_.theta(index(x)); }

 private:
  std::size_t index(VertexId x) const {
    const auto i = graph_.index_of(x);
    if (!i) throw std::out_of_range(name_ + ": unknown vertex " + std::to_string(raw(x)));
    return *i;
  }

  WeightedGraph graph_;
  VertexId root_{};
  std::string name_;
};

}  // namespace

FamilyPtr regular_tree(int k) {
  if (k < 3) throw std::invalid_argument("regular_tree: k must be >= 3, got " + std::to_string(k));
  const auto kk = static_cast<std::uint64_t>(k);
  return std::make_shared<LevelTree>("tree:k=" + std::to_string(k),
                                     [kk](std::uint64_t r) { return r == 0 ? kk : kk - 1; });
}

FamilyPtr birth_death(double alpha) {
  if (!(alpha < 2.0)) {
    throw std::invalid_argument("birth_death: alpha must be < 2, got " + format_double(alpha));
  }
  return chain("bd:alpha=" + format_double(alpha), [alpha](std::uint64_t n) {
    const double m = static_cast<double>(n) + 1.0;
    return m * m * std::pow(log_plus(m), alpha);
  });
}

FamilyPtr spherical_tree(double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) {
    throw std::invalid_argument("spherical_tree: alpha must lie in [0, 2), got " + format_double(alpha));
  }
  return std::make_shared<LevelTree>("sphtree:alpha=" + format_double(alpha),
                                     [alpha](std::uint64_t r) { return spherical_branching(alpha, r); });
}

FamilyPtr chain(std::string name, std::function<double(std::uint64_t)> weight) {
  return std::make_shared<Chain>(std::move(name), std::move(weight));
}

FamilyPtr finite_family(WeightedGraph graph, std::optional<VertexId> root, std::string name) {
  return std::make_shared<FiniteFamily>(std::move(graph), root, std::move(name));
}

SymmetryAudit audit_family(const GraphFamily& family, std::span<const VertexId> vertices,
                           ThetaKind theta) {
  SymmetryAudit audit;
  audit.min_theta = std::numeric_limits<double>::infinity();
  for (const auto x : vertices) {
    for (const auto& n : family.neighbors(x)) {
      ++audit.checked_pairs;
      const auto back = family.edge_weight(n.id, x);
      if (!back || *back != n.weight || !(n.weight > 0.0)) ++audit.violations;
    }
    const double t = family.theta(theta, x);
    audit.min_theta = std::min(audit.min_theta, t);
    if (!(t > 0.0)) audit.theta_positive = false;
  }
  return audit;
}

}  // namespace spectrascope
