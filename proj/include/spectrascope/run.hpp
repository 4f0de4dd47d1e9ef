#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectrascope/bounds.hpp"
#include "spectrascope/export.hpp"
#include "spectrascope/spectral.hpp"
#include "spectrascope/volume.hpp"

namespace spectrascope {

/// Malformed descriptor or option.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "tree:k=3", "bd:alpha=0.5", "sphtree:alpha=1", "line", "file:PATH".
FamilyPtr parse_family(const std::string& descriptor);

struct RunConfig {
  std::string family = "tree:k=3";
  ThetaKind theta = ThetaKind::Pi;
  std::string metric = "graph";
  double rmax = 0.0;              ///< 0: largest ball within the cap
  std::vector<double> grid;       ///< profile radii; empty: the distinct distances of the ball
  std::size_t cap = 2'000'000;    ///< vertices per ball
  SolverCaps solver_caps;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::string out;                ///< output directory; empty writes nothing

  Json to_json() const;
};

struct AnalyzeResult {
  RunConfig config;
  VolumeProfile profile;
  GrowthClassification growth;
  AdaptednessReport audit;
  BoundReport bounds;
  Exhaustion exhaustion;
  std::optional<AnnulusTable> annuli;
  ConsistencyReport consistency;
  std::vector<std::string> notes;

  int exit_code() const { return consistency.ok() ? 0 : 1; }
  Json to_json() const;
};

AnalyzeResult analyze(const RunConfig& config);

/// profile.csv, mu.json, lambda0.json, lambda_ess.json, bounds.json,
/// consistency.json, config.json and metadata.json (timestamp only).
void write_bundle(const AnalyzeResult& result, const std::filesystem::path& dir);

struct ReproRow {
  std::string quantity;
  std::string expected;  ///< reference value or relation
  double computed = 0.0;
  std::string tolerance;
  bool pass = false;
  std::string note;
};

struct ReproTable {
  int example = 0;
  std::vector<ReproRow> rows;
  Json to_json() const;
  std::string to_text() const;
};

/// Comparison table for example 1, 2 or 3 at the caps of `base`.
ReproTable reproduce(int example, const RunConfig& base = {});

}  // namespace spectrascope
