#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spectrascope/graph.hpp"

namespace spectrascope::testing {

/// Connected graph on n vertices: a random spanning tree plus extra edges,
/// weights in [0.1, 10], theta in [0.5, 2].
inline WeightedGraph random_graph(std::size_t n, std::uint64_t seed, double extra = 0.3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.1, 10.0), th(0.5, 2.0), u(0.0, 1.0);
  WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(vid(i), th(rng));
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    g.add_edge_by_index(parent(rng), i, w(rng));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (u(rng) < extra / static_cast<double>(n) * 4.0 && g.weight(vid(i), vid(j)) == 0.0) {
        g.add_edge_by_index(i, j, w(rng));
      }
    }
  }
  return g;
}

/// Path 0 - 1 - ... - (n-1) with unit weights and unit theta.
inline WeightedGraph path_graph(std::size_t n) {
  WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(vid(i), 1.0);
  for (std::size_t i = 1; i < n; ++i) g.add_edge_by_index(i - 1, i, 1.0);
  return g;
}

/// Star K_{1,leaves}, centre 0, unit weights and theta.
inline WeightedGraph star_graph(std::size_t leaves) {
  WeightedGraph g;
  g.add_vertex(vid(0), 1.0);
  for (std::size_t i = 1; i <= leaves; ++i) {
    g.add_vertex(vid(i), 1.0);
    g.add_edge_by_index(0, i, 1.0);
  }
  return g;
}

}  // namespace spectrascope::testing
