#pragma once

#include <string>

namespace spectrascope {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

/// Parses a complete token as a double; throws std::invalid_argument otherwise.
double parse_double(const std::string& token);

}  // namespace spectrascope
