#include "spectrascope/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace spectrascope {

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last || first == last) {
    throw std::invalid_argument("not a number: '" + token + "'");
  }
  return value;
}

}  // namespace spectrascope
