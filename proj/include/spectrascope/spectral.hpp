#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectrascope/eigensolver.hpp"
#include "spectrascope/family.hpp"
#include "spectrascope/metric.hpp"
#include "spectrascope/truncation.hpp"

namespace spectrascope {

/// Largest operator dimension accepted per solver path.
struct SolverCaps {
  std::size_t tridiagonal = 1'000'000;
  std::size_t sparse = 100'000;
};

class DimensionCapExceeded : public std::runtime_error {
 public:
  DimensionCapExceeded(std::size_t n, std::size_t cap, Structure s);
  std::size_t n;
  std::size_t cap;
};

/// lambda_0 of the Dirichlet problem on a truncation, respecting the caps.
SpectralEstimate dirichlet_eigenvalue(const Truncation& t, ThetaKind theta, double tol = 1e-8,
                                      const SolverCaps& caps = {}, EigenMethod method = EigenMethod::Auto);

struct ExhaustionStep {
  double radius = 0.0;
  std::size_t vertices = 0;
  SpectralEstimate estimate;
};

struct Exhaustion {
  std::string family;
  std::string metric;
  ThetaKind theta = ThetaKind::One;
  double tol = 1e-8;
  std::vector<ExhaustionStep> steps;
  bool monotone = true;  ///< non-increasing up to 10 tol
};

/// lambda_0 on B(x0, R) for each radius. The largest ball is expanded once.
Exhaustion lambda0_exhaustion(const GraphFamily& family, ThetaKind theta, const MetricSpec& spec, VertexId x0,
                              std::span<const double> radii, std::size_t cap, double tol = 1e-8,
                              const SolverCaps& caps = {});

struct AnnulusRow {
  double inner = 0.0;
  double outer = 0.0;
  std::size_t vertices = 0;
  SpectralEstimate estimate;
};

struct AnnulusTable {
  std::string family;
  std::string metric;
  ThetaKind theta = ThetaKind::One;
  double tol = 1e-8;
  std::vector<AnnulusRow> rows;  ///< grouped by outer radius, inner increasing
  bool monotone = true;          ///< non-decreasing in k for each outer radius, up to 10 tol
  double estimate = 0.0;         ///< largest stabilised k; the smallest k at the largest R otherwise
  double estimate_inner = 0.0;
  bool stabilised = false;       ///< estimate agrees across the two largest outer radii
  std::string caveat = "upper-biased at finite R_outer";
};

/// Relative agreement required between the two largest outer radii.
inline constexpr double kAnnulusStabilisation = 1e-2;

/// lambda_0 on {k <= rho(x0, .) <= R} for every k in k_grid and R in outer_radii.
AnnulusTable lambda_ess_annuli(const GraphFamily& family, ThetaKind theta, const MetricSpec& spec, VertexId x0,
                               std::span<const double> k_grid, std::span<const double> outer_radii,
                               std::size_t cap, double tol = 1e-8, const SolverCaps& caps = {});

struct NormBracket {
  double a = 0.0;
  double norm = 0.0;
  bool pass = false;           ///< A <= norm <= 2A
  bool pi_bracket_pass = true; ///< 1 <= norm <= 2 (checked for theta = pi only)
};

/// Checks A <= ||L_theta|| <= 2A on a finite graph via the largest eigenvalue of M.
NormBracket norm_bracket_check(const WeightedGraph& graph, ThetaKind theta, double rel_tol = 1e-9);

}  // namespace spectrascope
