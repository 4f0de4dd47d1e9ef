#include "spectrascope/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "spectrascope/format.hpp"

namespace spectrascope {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line.substr(0, line.find('#')));
  for (std::string tok; ss >> tok;) tokens.push_back(tok);
  return tokens;
}

std::uint64_t parse_id(const std::string& tok, std::size_t line) {
  std::uint64_t value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw GraphParseError(line, "malformed vertex id '" + tok + "'");
  }
  return value;
}

double parse_value(const std::string& tok, std::size_t line) {
  try {
    return parse_double(tok);
  } catch (const std::invalid_argument&) {
    throw GraphParseError(line, "malformed number '" + tok + "'");
  }
}

}  // namespace

WeightedGraph parse_graph(std::istream& in) {
  WeightedGraph graph;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const auto tokens = tokenize(text);
    if (tokens.empty()) continue;
    if (tokens[0] == "V") {
      if (tokens.size() != 3) throw GraphParseError(line, "malformed line (expected 'V <id> <theta>')");
      const auto id = parse_id(tokens[1], line);
      const double theta = parse_value(tokens[2], line);
      if (!(theta > 0.0)) throw GraphParseError(line, "non-positive theta");
      try {
        graph.add_vertex(vid(id), theta);
      } catch (const GraphError& e) {
        throw GraphParseError(line, e.what());
      }
    } else if (tokens[0] == "E") {
      if (tokens.size() != 4) throw GraphParseError(line, "malformed line (expected 'E <u> <v> <pi>')");
      const auto u = parse_id(tokens[1], line);
      const auto v = parse_id(tokens[2], line);
      const double w = parse_value(tokens[3], line);
      if (u == v) throw GraphParseError(line, "loop");
      if (!(w > 0.0)) throw GraphParseError(line, "non-positive weight");
      try {
        graph.add_edge(vid(u), vid(v), w);
      } catch (const GraphError& e) {
        throw GraphParseError(line, e.what());
      }
    } else {
      throw GraphParseError(line, "malformed line (unknown record '" + tokens[0] + "')");
    }
  }
  return graph;
}

WeightedGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  return parse_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& graph) {
  for (std::size_t i = 0; i < graph.size(); ++i) {
    out << "V " << raw(graph.id(i)) << ' ' << format_double(graph.theta(i)) << '\n';
  }
  for (const auto& e : graph.edges()) {
    out << "E " << raw(graph.id(e.u)) << ' ' << raw(graph.id(e.v)) << ' ' << format_double(e.weight) << '\n';
  }
}

void save_graph(const std::filesystem::path& path, const WeightedGraph& graph) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file " + path.string());
  write_graph(out, graph);
}

}  // namespace spectrascope
