#include "spectrascope/metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "spectrascope/format.hpp"

namespace spectrascope {

MetricSpec MetricSpec::graph() { return MetricSpec{}; }

MetricSpec MetricSpec::scaled(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("scaled metric: A must be positive");
  MetricSpec s;
  s.kind = MetricKind::ScaledGraph;
  s.scale_a = a;
  s.c_rho = 1.0 / std::sqrt(a);
  return s;
}

MetricSpec MetricSpec::de(double degree_bound) {
  if (!(degree_bound >= 1.0)) throw std::invalid_argument("de metric: degree bound D must be >= 1");
  MetricSpec s;
  s.kind = MetricKind::DE;
  s.degree_bound = degree_bound;
  s.c_rho = 1.0 / std::sqrt(degree_bound);
  return s;
}

MetricSpec MetricSpec::dv(ThetaKind theta) {
  MetricSpec s;
  s.kind = MetricKind::DV;
  s.theta = theta;
  s.c_rho = 1.0;
  return s;
}

MetricSpec MetricSpec::custom_rule(std::string name, CostRule rule, double c_rho) {
  if (!rule) throw std::invalid_argument("custom metric: empty cost rule");
  if (!(c_rho > 0.0)) throw std::invalid_argument("custom metric: c_rho must be positive");
  MetricSpec s;
  s.kind = MetricKind::Custom;
  s.custom = std::move(rule);
  s.custom_name = std::move(name);
  s.c_rho = c_rho;
  return s;
}

std::string MetricSpec::descriptor() const {
  switch (kind) {
    case MetricKind::Graph:
      return "graph";
    case MetricKind::ScaledGraph:
      return "scaled:A=" + format_double(scale_a);
    case MetricKind::DE:
      return "de:D=" + format_double(degree_bound);
    case MetricKind::DV:
      return theta == ThetaKind::One ? "dv" : "dv:theta=" + to_string(theta);
    case MetricKind::Custom:
      return "custom:" + custom_name;
  }
  return "unknown";
}

MetricSpec parse_metric(const std::string& text, ThetaKind default_theta) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto value_of = [&](const std::string& key) -> std::string {
    const std::string prefix = key + "=";
    if (args.rfind(prefix, 0) != 0) throw std::invalid_argument("metric '" + text + "': expected " + prefix);
    return args.substr(prefix.size());
  };
  if (head == "graph" && args.empty()) return MetricSpec::graph();
  if (head == "scaled") return MetricSpec::scaled(parse_double(value_of("A")));
  if (head == "de") return MetricSpec::de(parse_double(value_of("D")));
  if (head == "dv") return MetricSpec::dv(args.empty() ? default_theta : parse_theta_kind(value_of("theta")));
  throw std::invalid_argument("unknown metric '" + text + "' (expected graph, scaled:A=.., de:D=.., dv)");
}

double edge_cost(const MetricSpec& spec, const GraphFamily& family, VertexId u, VertexId v) {
  const auto w = family.edge_weight(u, v);
  if (!w) {
    throw NotAdjacentError("vertices " + std::to_string(raw(u)) + " and " + std::to_string(raw(v)) +
                           " are not adjacent");
  }
  return edge_cost(spec, family, u, v, *w);
}

double edge_cost(const MetricSpec& spec, const GraphFamily& family, VertexId u, VertexId v,
                 double weight) {
  switch (spec.kind) {
    case MetricKind::Graph:
      return 1.0;
    case MetricKind::ScaledGraph:
      return 1.0 / std::sqrt(spec.scale_a);
    case MetricKind::DE:
      return std::min(1.0, 1.0 / std::sqrt(weight)) / std::sqrt(spec.degree_bound);
    case MetricKind::DV: {
      const double ru = family.theta(spec.theta, u) / family.degree(u);
      const double rv = family.theta(spec.theta, v) / family.degree(v);
      return std::min(1.0, std::sqrt(std::min(ru, rv)));
    }
    case MetricKind::Custom:
      return spec.custom(family, u, v, weight);
  }
  return 1.0;
}

std::optional<double> MetricBall::distance(VertexId x) const {
  const auto it = lookup_.find(raw(x));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<VertexId> MetricBall::vertices() const {
  std::vector<VertexId> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.id);
  return out;
}

void MetricBall::rebuild_index() {
  lookup_.clear();
  lookup_.reserve(entries.size());
  for (const auto& e : entries) lookup_.emplace(raw(e.id), e.distance);
}

namespace {

// Unevaluated sum hi + lo; hi is the correctly rounded value.
struct Label {
  double hi = 0.0;
  double lo = 0.0;
};

Label add(Label a, double c) {
  const double s = a.hi + c;
  const double bb = s - a.hi;
  const double err = (a.hi - (s - bb)) + (c - bb);
  const double lo = a.lo + err;
  const double hi = s + lo;
  return {hi, lo - (hi - s)};
}

bool less(const Label& a, const Label& b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }

double checked_cost(const MetricSpec& spec, const GraphFamily& family, VertexId u, const Neighbor& n) {
  const double c = edge_cost(spec, family, u, n.id, n.weight);
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::domain_error("metric " + spec.descriptor() + ": non-positive cost on edge " +
                            std::to_string(raw(u)) + "-" + std::to_string(raw(n.id)));
  }
  if (c > spec.c_rho * (1.0 + 1e-12)) {
    throw std::domain_error("metric " + spec.descriptor() + ": edge cost " + format_double(c) +
                            " exceeds c_rho " + format_double(spec.c_rho));
  }
  return c;
}

void check_degree_bound(const MetricSpec& spec, const GraphFamily& family, VertexId u) {
  if (spec.kind != MetricKind::DE) return;
  const auto deg = static_cast<double>(family.neighbor_count(u));
  if (deg > spec.degree_bound) {
    throw std::domain_error("metric " + spec.descriptor() + ": vertex " + std::to_string(raw(u)) +
                            " has degree " + format_double(deg) + " above the declared bound");
  }
}

struct Expansion {
  std::vector<BallEntry> settled;
  double next_pending = std::numeric_limits<double>::infinity();
  bool capped = false;
};

// Settles every vertex with distance <= r, at most `cap` of them. Relaxations
// landing beyond r are not queued. Stops early (capped = true) when either the
// settled set or the discovered set outgrows its budget.
Expansion expand(const GraphFamily& family, const MetricSpec& spec, VertexId x0, double r,
                 std::size_t cap) {
  using Item = std::pair<double, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  std::unordered_map<std::uint64_t, Label> label;
  std::unordered_map<std::uint64_t, char> done;
  const std::size_t discovery_budget = 8 * cap + 1024;

  Expansion out;
  label.emplace(raw(x0), Label{});
  queue.push({0.0, raw(x0)});
  while (!queue.empty()) {
    const auto [d, id] = queue.top();
    if (done.contains(id) || label.at(id).hi != d) {
      queue.pop();
      continue;
    }
    if (d > r) {
      out.next_pending = d;
      break;
    }
    if (out.settled.size() == cap || label.size() > discovery_budget) {
      out.next_pending = d;
      out.capped = true;
      break;
    }
    queue.pop();
    done.emplace(id, 1);
    out.settled.push_back({vid(id), d});

    const VertexId u = vid(id);
    check_degree_bound(spec, family, u);
    const Label base = label.at(id);
    for (const auto& n : family.neighbors(u)) {
      if (done.contains(raw(n.id))) continue;
      const Label cand = add(base, checked_cost(spec, family, u, n));
      if (cand.hi > r) continue;
      auto it = label.find(raw(n.id));
      if (it == label.end()) {
        label.emplace(raw(n.id), cand);
        queue.push({cand.hi, raw(n.id)});
      } else if (less(cand, it->second)) {
        it->second = cand;
        queue.push({cand.hi, raw(n.id)});
      }
    }
  }
  return out;
}

double exact_frontier(const GraphFamily& family, const MetricSpec& spec, const MetricBall& b) {
  double frontier = std::numeric_limits<double>::infinity();
  for (const auto& e : b.entries) {
    for (const auto& n : family.neighbors(e.id)) {
      if (b.contains(n.id)) continue;
      frontier = std::min(frontier, add(Label{e.distance, 0.0}, checked_cost(spec, family, e.id, n)).hi);
    }
  }
  return frontier;
}

}  // namespace

MetricBall ball(const GraphFamily& family, const MetricSpec& spec, VertexId x0, double r, std::size_t cap) {
  if (!(r >= 0.0)) throw std::invalid_argument("ball: radius must be non-negative");
  if (cap < 1) throw std::invalid_argument("ball: cap must be >= 1");
  if (!family.contains(x0)) throw std::invalid_argument("ball: center is not a vertex of the family");

  auto ex = expand(family, spec, x0, r, cap);
  if (ex.capped) {
    // Everything strictly closer than the first unsettled vertex is resolved.
    double resolved = 0.0;
    bool any = false;
    for (const auto& e : ex.settled) {
      if (e.distance < ex.next_pending) {
        resolved = std::max(resolved, e.distance);
        any = true;
      }
    }
    throw BallCapExceeded(cap, ex.settled.size(), r, any ? resolved : -1.0);
  }
  MetricBall b;
  b.center = x0;
  b.radius = r;
  b.entries = std::move(ex.settled);
  b.rebuild_index();
  b.frontier_bound = exact_frontier(family, spec, b);
  return b;
}

MetricBall largest_ball(const GraphFamily& family, const MetricSpec& spec, VertexId x0, std::size_t cap) {
  try {
    auto b = ball(family, spec, x0, std::numeric_limits<double>::infinity(), cap);
    b.radius = b.entries.empty() ? 0.0 : b.entries.back().distance;
    return b;
  } catch (const BallCapExceeded& e) {
    if (e.resolved_radius < 0.0) throw;
    auto b = ball(family, spec, x0, e.resolved_radius, cap);
    // A bounded expansion does not queue vertices beyond its radius, so the
    // next sphere may still fit.
    while (std::isfinite(b.frontier_bound)) {
      try {
        b = ball(family, spec, x0, b.frontier_bound, cap);
      } catch (const BallCapExceeded&) {
        break;
      }
    }
    return b;
  }
}

AdaptednessReport verify_adaptedness(const GraphFamily& family, const MetricSpec& spec, ThetaKind theta,
                                     std::span<const VertexId> vertices) {
  AdaptednessReport report;
  report.slack.reserve(vertices.size());
  for (const auto x : vertices) {
    double sum = 0.0;
    for (const auto& n : family.neighbors(x)) {
      const double c = edge_cost(spec, family, x, n.id, n.weight);
      report.max_edge_cost = std::max(report.max_edge_cost, c);
      report.min_edge_cost = std::min(report.min_edge_cost, c);
      sum += n.weight * c * c;
    }
    const double s = sum / family.theta(theta, x);
    report.slack.push_back({x, s});
    report.max_slack = std::max(report.max_slack, s);
  }
  report.pass = report.max_slack <= AdaptednessReport::kTolerance &&
                report.max_edge_cost <= spec.c_rho * AdaptednessReport::kTolerance;
  return report;
}

}  // namespace spectrascope
