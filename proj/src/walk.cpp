#include "spectrascope/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

namespace spectrascope {

void WalkConfig::validate() const {
  if (paths < 1) throw std::invalid_argument("WalkConfig: paths must be >= 1");
  if (jump_cap < 1) throw std::invalid_argument("WalkConfig: jump_cap must be >= 1");
  if (!(horizon >= 0.0)) throw std::invalid_argument("WalkConfig: horizon must be non-negative");
}

std::uint64_t path_seed(std::uint64_t seed, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ index);
}

unsigned worker_threads() {
  if (const char* env = std::getenv("SPECTRASCOPE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct State {
  bool ready = false;
  double rate = 0.0;  // pi_x / theta_x
  double pi = 0.0;
  std::vector<VertexId> to;
  std::vector<double> cumulative;
};

// Per-thread memo of holding rates and jump distributions.
class TransitionCache {
 public:
  TransitionCache(const GraphFamily& family, ThetaKind theta) : family_(family), theta_(theta) {}

  const State& get(VertexId x) {
    const auto id = raw(x);
    State* s;
    if (id < kDenseLimit) {
      if (id >= dense_.size()) dense_.resize(std::max<std::size_t>(id + 1, 2 * dense_.size()));
      s = &dense_[id];
    } else {
      s = &sparse_[id];
    }
    if (!s->ready) fill(*s, x);
    return *s;
  }

 private:
  static constexpr std::uint64_t kDenseLimit = 1u << 20;

  void fill(State& s, VertexId x) {
    double acc = 0.0;
    for (const auto& n : family_.neighbors(x)) {
      acc += n.weight;
      s.to.push_back(n.id);
      s.cumulative.push_back(acc);
    }
    s.pi = acc;
    s.rate = acc > 0.0 ? acc / family_.theta(theta_, x) : 0.0;
    s.ready = true;
  }

  const GraphFamily& family_;
  ThetaKind theta_;
  std::vector<State> dense_;
  std::unordered_map<std::uint64_t, State> sparse_;
};

enum class PathEnd { Horizon, Capped, Killed };

struct PathResult {
  PathEnd end = PathEnd::Horizon;
  double end_time = 0.0;
  std::size_t jumps = 0;
  VertexId last{};
};

// Runs one path; on_segment(a, b, x) reports that the walk sits at x on [a, b).
// The final segment before the horizon is reported with b = +inf.
template <class OnSegment>
PathResult walk_core(TransitionCache& cache, const WalkConfig& cfg, VertexId x0, std::uint64_t index,
                     const Region& region, OnSegment&& on_segment) {
  std::mt19937_64 rng(path_seed(cfg.seed, index));
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  constexpr double inf = std::numeric_limits<double>::infinity();
  PathResult res;
  res.last = x0;
  if (region && !region(x0)) {
    res.end = PathEnd::Killed;
    return res;
  }
  double t = 0.0;
  VertexId x = x0;
  while (true) {
    const State& st = cache.get(x);
    if (st.rate <= 0.0) {
      on_segment(t, inf, x);
      res.end_time = cfg.horizon;
      return res;
    }
    const double t_next = t + expo(rng) / st.rate;
    if (t_next >= cfg.horizon) {
      on_segment(t, inf, x);
      res.end_time = cfg.horizon;
      return res;
    }
    on_segment(t, t_next, x);
    const double u = unif(rng) * st.pi;
    auto it = std::upper_bound(st.cumulative.begin(), st.cumulative.end(), u);
    if (it == st.cumulative.end()) --it;
    x = st.to[static_cast<std::size_t>(it - st.cumulative.begin())];
    t = t_next;
    ++res.jumps;
    res.last = x;
    if (region && !region(x)) {
      res.end = PathEnd::Killed;
      res.end_time = t;
      return res;
    }
    if (res.jumps >= cfg.jump_cap) {
      res.end = PathEnd::Capped;
      res.end_time = t;
      return res;
    }
  }
}

// Splits [0, paths) into contiguous chunks, one per worker; results are merged in chunk order.
template <class Worker>
void parallel_paths(std::size_t paths, Worker&& worker) {
  const std::size_t threads = std::min<std::size_t>(worker_threads(), paths);
  if (threads <= 1) {
    worker(0, 0, paths);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    const std::size_t lo = paths * w / threads, hi = paths * (w + 1) / threads;
    pool.emplace_back([&worker, w, lo, hi] { worker(w, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

std::size_t worker_count(std::size_t paths) { return std::max<std::size_t>(1, std::min<std::size_t>(worker_threads(), paths)); }

}  // namespace

Trajectory simulate_path(const GraphFamily& family, const WalkConfig& config, VertexId x0, std::uint64_t index,
                         const Region& region) {
  config.validate();
  if (!family.contains(x0)) throw std::invalid_argument("simulate_walk: start vertex not in family");
  TransitionCache cache(family, config.theta);
  Trajectory tr;
  const auto res = walk_core(cache, config, x0, index, region, [&](double a, double, VertexId x) {
    tr.times.push_back(a);
    tr.vertices.push_back(x);
  });
  tr.capped = res.end == PathEnd::Capped;
  tr.killed = res.end == PathEnd::Killed;
  tr.end_time = res.end_time;
  if (tr.capped || (tr.killed && res.jumps > 0)) {
    tr.times.push_back(res.end_time);
    tr.vertices.push_back(res.last);
  }
  return tr;
}

Trajectory simulate_walk(const GraphFamily& family, const WalkConfig& config, VertexId x0, const Region& region) {
  return simulate_path(family, config, x0, 0, region);
}

std::vector<HeatKernelEstimate> heat_kernel_mc(const GraphFamily& family, const WalkConfig& config, VertexId x0,
                                               VertexId y, std::span<const double> t_grid, const Region& region) {
  config.validate();
  if (!family.contains(x0) || !family.contains(y)) throw std::invalid_argument("heat_kernel_mc: vertex not in family");
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] >= 0.0) || ts[i] > config.horizon) throw std::invalid_argument("heat_kernel_mc: t outside [0, horizon]");
    if (i > 0 && !(ts[i] > ts[i - 1])) throw std::invalid_argument("heat_kernel_mc: t_grid must be increasing");
  }
  WalkConfig cfg = config;
  cfg.horizon = ts.empty() ? 0.0 : ts.back();

  const std::size_t workers = worker_count(cfg.paths);
  std::vector<std::vector<std::size_t>> hits(workers, std::vector<std::size_t>(ts.size(), 0));
  std::vector<std::vector<std::size_t>> capped(workers, std::vector<std::size_t>(ts.size(), 0));
  parallel_paths(cfg.paths, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    TransitionCache cache(family, cfg.theta);
    for (std::size_t p = lo; p < hi; ++p) {
      std::size_t next = 0;
      const auto res = walk_core(cache, cfg, x0, p, region, [&](double a, double b, VertexId x) {
        while (next < ts.size() && ts[next] < a) ++next;
        while (next < ts.size() && ts[next] < b) {
          if (x == y) ++hits[w][next];
          ++next;
        }
      });
      if (res.end == PathEnd::Capped) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
          if (ts[i] >= res.end_time) ++capped[w][i];
        }
      }
    }
  });

  const double theta_y = family.theta(cfg.theta, y);
  std::vector<HeatKernelEstimate> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    HeatKernelEstimate e;
    e.t = ts[i];
    e.x = x0;
    e.y = y;
    e.paths = cfg.paths;
    e.seed = cfg.seed;
    for (std::size_t w = 0; w < workers; ++w) {
      e.hits += hits[w][i];
      e.capped += capped[w][i];
    }
    const double p = static_cast<double>(e.hits) / static_cast<double>(cfg.paths);
    e.p_hat = p / theta_y;
    e.std_err = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.paths)) / theta_y;
    out.push_back(e);
  }
  return out;
}

TransitionCounts jump_chain_counts(const GraphFamily& family, const WalkConfig& config, VertexId x0,
                                   std::size_t jumps) {
  config.validate();
  WalkConfig cfg = config;
  cfg.horizon = std::numeric_limits<double>::infinity();
  cfg.jump_cap = jumps;
  const std::size_t workers = worker_count(cfg.paths);
  std::vector<std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t>> partial(workers);
  parallel_paths(cfg.paths, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    TransitionCache cache(family, cfg.theta);
    for (std::size_t p = lo; p < hi; ++p) {
      bool first = true;
      VertexId prev{};
      walk_core(cache, cfg, x0, p, {}, [&](double, double, VertexId x) {
        if (!first) ++partial[w][{raw(prev), raw(x)}];
        first = false;
        prev = x;
      });
    }
  });
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> merged;
  for (const auto& m : partial) {
    for (const auto& [k, v] : m) merged[k] += v;
  }
  std::map<std::uint64_t, std::size_t> index;
  for (const auto& [k, v] : merged) {
    index.emplace(k.first, 0);
    index.emplace(k.second, 0);
  }
  TransitionCounts out;
  for (auto& [id, i] : index) {
    i = out.states.size();
    out.states.push_back(vid(id));
  }
  out.counts.assign(out.states.size(), std::vector<std::size_t>(out.states.size(), 0));
  for (const auto& [k, v] : merged) out.counts[index[k.first]][index[k.second]] = v;
  return out;
}

HoldingStats holding_time_stats(const GraphFamily& family, const WalkConfig& config, VertexId x0) {
  config.validate();
  WalkConfig cfg = config;
  cfg.horizon = std::numeric_limits<double>::infinity();
  cfg.jump_cap = 1;
  const std::size_t workers = worker_count(cfg.paths);
  std::vector<double> sum(workers, 0.0), sum_sq(workers, 0.0);
  parallel_paths(cfg.paths, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    TransitionCache cache(family, cfg.theta);
    for (std::size_t p = lo; p < hi; ++p) {
      const auto res = walk_core(cache, cfg, x0, p, {}, [](double, double, VertexId) {});
      sum[w] += res.end_time;
      sum_sq[w] += res.end_time * res.end_time;
    }
  });
  double s = 0.0, s2 = 0.0;
  for (std::size_t w = 0; w < workers; ++w) {
    s += sum[w];
    s2 += sum_sq[w];
  }
  HoldingStats h;
  h.samples = cfg.paths;
  const double n = static_cast<double>(cfg.paths);
  h.mean = s / n;
  const double var = n > 1 ? std::max(0.0, (s2 - n * h.mean * h.mean) / (n - 1.0)) : 0.0;
  h.std_err = std::sqrt(var / n);
  return h;
}

ExplosionResult explosion_probe(const GraphFamily& family, const WalkConfig& config, VertexId x0) {
  config.validate();
  if (config.theta != ThetaKind::One) throw std::invalid_argument("explosion_probe: requires theta = one (VSRW)");
  const std::size_t workers = worker_count(config.paths);
  std::vector<std::size_t> capped(workers, 0);
  std::vector<std::uint64_t> jumps(workers, 0);
  parallel_paths(config.paths, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    TransitionCache cache(family, config.theta);
    for (std::size_t p = lo; p < hi; ++p) {
      const auto res = walk_core(cache, config, x0, p, {}, [](double, double, VertexId) {});
      if (res.end == PathEnd::Capped) ++capped[w];
      jumps[w] += res.jumps;
    }
  });
  ExplosionResult r;
  r.paths = config.paths;
  r.horizon = config.horizon;
  r.jump_cap = config.jump_cap;
  r.seed = config.seed;
  for (std::size_t w = 0; w < workers; ++w) {
    r.capped += capped[w];
    r.total_jumps += jumps[w];
  }
  const double n = static_cast<double>(r.paths);
  const double p = static_cast<double>(r.capped) / n;
  r.fraction = p;
  const double z = 1.959963984540054;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  r.ci_low = r.capped == 0 ? 0.0 : std::max(0.0, centre - half);
  r.ci_high = r.capped == r.paths ? 1.0 : std::min(1.0, centre + half);
  return r;
}

}  // namespace spectrascope
