#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "spectrascope/graph.hpp"

namespace spectrascope {

/// Parse failure in the edge-list format; what() names the offending line.
class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(std::size_t line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

// Line-oriented format, '#' starts a comment:
//   V <id> <theta>      declares a vertex
//   E <u> <v> <pi>      declares an undirected edge, u != v, pi > 0
// Vertices must be declared before use; each pair appears at most once.
WeightedGraph parse_graph(std::istream& in);
WeightedGraph load_graph(const std::filesystem::path& path);

/// Writes weights with shortest round-trip formatting, so parse_graph(write_graph(g))
/// reproduces every weight bit for bit.
void write_graph(std::ostream& out, const WeightedGraph& graph);
void save_graph(const std::filesystem::path& path, const WeightedGraph& graph);

}  // namespace spectrascope
