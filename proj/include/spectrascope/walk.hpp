#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spectrascope/family.hpp"

namespace spectrascope {

struct WalkConfig {
  ThetaKind theta = ThetaKind::One;
  double horizon = 1.0;
  std::size_t paths = 1;
  std::uint64_t seed = 0;
  std::size_t jump_cap = 1'000'000;

  void validate() const;
};

/// Vertex set the walk lives on; leaving it kills the walk.
using Region = std::function<bool(VertexId)>;

/// Piecewise-constant path: the walk sits at vertices[i] on [times[i], times[i+1]).
struct Trajectory {
  std::vector<double> times;
  std::vector<VertexId> vertices;
  bool capped = false;  ///< jump_cap reached before the horizon
  bool killed = false;  ///< left the region before the horizon
  double end_time = 0.0;
};

/// Seed of the generator driving path `index` (splitmix64 of the pair).
std::uint64_t path_seed(std::uint64_t seed, std::uint64_t index);

/// Worker threads: SPECTRASCOPE_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
unsigned worker_threads();

/// One path (index 0 of the config's seed), holding rate pi_x/theta_x, jumps pi_xy/pi_x.
Trajectory simulate_walk(const GraphFamily& family, const WalkConfig& config, VertexId x0,
                         const Region& region = {});

/// Path `index` of a multi-path run.
Trajectory simulate_path(const GraphFamily& family, const WalkConfig& config, VertexId x0, std::uint64_t index,
                         const Region& region = {});

struct HeatKernelEstimate {
  double t = 0.0;
  VertexId x{};
  VertexId y{};
  double p_hat = 0.0;
  double std_err = 0.0;
  std::size_t paths = 0;
  std::uint64_t seed = 0;
  std::size_t hits = 0;
  std::size_t capped = 0;  ///< paths capped before t (position unknown, counted as misses)
};

/// p_t(x, y) = P^x(X_t = y) / theta_y from `config.paths` walks, at each t in
/// t_grid (t <= horizon). With a region, killed walks count as misses.
std::vector<HeatKernelEstimate> heat_kernel_mc(const GraphFamily& family, const WalkConfig& config, VertexId x0,
                                               VertexId y, std::span<const double> t_grid,
                                               const Region& region = {});

/// Empirical jump-chain counts from x0: for each path, the first `jumps` transitions.
struct TransitionCounts {
  std::vector<VertexId> states;
  std::vector<std::vector<std::size_t>> counts;  ///< counts[i][j]: jumps states[i] -> states[j]
};

TransitionCounts jump_chain_counts(const GraphFamily& family, const WalkConfig& config, VertexId x0,
                                   std::size_t jumps);

/// Mean holding time at the first vertex over `config.paths` holds.
struct HoldingStats {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t samples = 0;
};

HoldingStats holding_time_stats(const GraphFamily& family, const WalkConfig& config, VertexId x0);

struct ExplosionResult {
  std::size_t paths = 0;
  std::size_t capped = 0;
  double fraction = 0.0;
  double ci_low = 0.0;   ///< Wilson 95% interval
  double ci_high = 0.0;
  double horizon = 0.0;
  std::size_t jump_cap = 0;
  std::uint64_t seed = 0;
  std::uint64_t total_jumps = 0;
};

/// Fraction of VSRW paths reaching jump_cap before the horizon. Requires theta = One.
ExplosionResult explosion_probe(const GraphFamily& family, const WalkConfig& config, VertexId x0);

}  // namespace spectrascope
