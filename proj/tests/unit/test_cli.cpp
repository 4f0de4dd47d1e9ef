#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spectrascope/graph_io.hpp"
#include "spectrascope/run.hpp"
#include "support.hpp"

using namespace spectrascope;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig small_config(const std::string& family, const std::string& metric, ThetaKind theta) {
  RunConfig c;
  c.family = family;
  c.metric = metric;
  c.theta = theta;
  c.cap = 20000;
  c.solver_caps.sparse = 20000;
  c.solver_caps.tridiagonal = 20000;
  return c;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("spectrascope_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("family descriptors") {
    CHECK(parse_family("tree:k=3")->descriptor() == "tree:k=3");
    CHECK(parse_family("bd:alpha=0.5")->root() == vid(0));
    CHECK_NOTHROW(parse_family("sphtree:alpha=1"));
    CHECK_NOTHROW(parse_family("line"));
    for (const std::string bad : {"tree:k=2", "tree:k=3.5", "bd:alpha=2", "bd:beta=1", "sphtree:alpha=-1", "torus",
                                  "file:/nonexistent/graph.txt", ""}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_family(bad), UsageError);
    }
  }

  TEST_CASE("file families") {
    const auto dir = scratch("file");
    const auto path = dir / "g.txt";
    {
      std::ofstream out(path);
      write_graph(out, testing::random_graph(30, 8));
    }
    auto cfg = small_config("file:" + path.string(), "graph", ThetaKind::Pi);
    const auto r = analyze(cfg);
    CHECK(r.profile.samples.back().count == 30);
    CHECK(r.exit_code() == 0);
  }

  TEST_CASE("analyze is deterministic") {
    const auto cfg = small_config("tree:k=3", "scaled:A=3", ThetaKind::One);
    const auto a = analyze(cfg);
    const auto b = analyze(cfg);
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.exit_code() == 0);
    CHECK(a.growth.kind == GrowthKind::Exponential);
    CHECK(a.bounds.best().has_value());
    CHECK(a.exhaustion.monotone);

    const auto d1 = scratch("bundle1"), d2 = scratch("bundle2");
    write_bundle(a, d1);
    write_bundle(b, d2);
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(d1)) {
      const auto name = e.path().filename();
      REQUIRE(fs::exists(d2 / name));
      if (name == "metadata.json") continue;
      CHECK(slurp(e.path()) == slurp(d2 / name));
      ++compared;
    }
    CHECK(compared == 7);
  }

  TEST_CASE("non-adapted metric withholds the bound") {
    const auto r = analyze(small_config("tree:k=3", "graph", ThetaKind::One));
    CHECK_FALSE(r.audit.pass);
    CHECK_FALSE(r.bounds.best().has_value());
    CHECK(r.exit_code() == 0);
  }

  TEST_CASE("superexponential growth") {
    const auto r = analyze(small_config("bd:alpha=1", "de:D=2", ThetaKind::One));
    CHECK(r.growth.kind == GrowthKind::Superexponential);
    CHECK(r.bounds.degenerate_bound.has_value());
  }

  TEST_CASE("reproduce table structure") {
    auto base = small_config("tree:k=3", "graph", ThetaKind::Pi);
    const auto t = reproduce(3, base);
    CHECK(t.example == 3);
    REQUIRE_FALSE(t.rows.empty());
    const auto j = t.to_json();
    CHECK(j.contains("passed"));
    CHECK(j.contains("total"));
    CHECK(j["total"].get<std::size_t>() == t.rows.size());
    const auto text = t.to_text();
    for (const auto& row : t.rows) CHECK(text.find(row.quantity) != std::string::npos);
    CHECK(reproduce(3, base).to_json().dump() == j.dump());
    CHECK_THROWS_AS(reproduce(4, base), UsageError);
  }
}
