#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "spectrascope/bounds.hpp"
#include "spectrascope/spectral.hpp"
#include "spectrascope/volume.hpp"
#include "spectrascope/walk.hpp"

namespace spectrascope {

using Json = nlohmann::ordered_json;

void write_ball_csv(std::ostream& os, const MetricBall& b);
void write_profile_csv(std::ostream& os, const VolumeProfile& p);
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

Json to_json(const MuEstimate& mu);
Json to_json(const GrowthClassification& c);
Json to_json(const SpectralEstimate& e, const std::string& radius_or_annulus, bool monotonicity_ok);
Json to_json(const Exhaustion& ex);
Json to_json(const AnnulusTable& t);
Json to_json(const BoundReport& r);
Json to_json(const ConsistencyReport& r);
Json to_json(const HeatKernelEstimate& e);
Json to_json(const ExplosionResult& r);

/// Non-finite values become the strings "inf", "-inf", "nan".
Json number(double x);

/// Writes `j` followed by a newline, 2-space indented.
void write_json(std::ostream& os, const Json& j);

}  // namespace spectrascope
