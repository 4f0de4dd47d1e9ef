#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "spectrascope/heat_kernel.hpp"
#include "spectrascope/walk.hpp"
#include "support.hpp"

using namespace spectrascope;

namespace {

// Centre 0 joined to leaves 1, 2, 3 with weights 1, 2, 3.
FamilyPtr weighted_star() {
  WeightedGraph g;
  for (std::size_t i = 0; i < 4; ++i) g.add_vertex(vid(i), 1.0);
  for (std::size_t i = 1; i < 4; ++i) g.add_edge_by_index(0, i, double(i));
  return finite_family(g);
}

double chi_square_from_centre(const TransitionCounts& tc) {
  std::size_t centre = tc.states.size();
  for (std::size_t i = 0; i < tc.states.size(); ++i) {
    if (tc.states[i] == vid(0)) centre = i;
  }
  REQUIRE(centre < tc.states.size());
  std::size_t total = 0;
  for (const auto c : tc.counts[centre]) total += c;
  double chi2 = 0.0;
  for (std::size_t j = 0; j < tc.states.size(); ++j) {
    const auto leaf = raw(tc.states[j]);
    if (leaf == 0) {
      CHECK(tc.counts[centre][j] == 0);
      continue;
    }
    const double expected = double(total) * double(leaf) / 6.0;
    const double d = double(tc.counts[centre][j]) - expected;
    chi2 += d * d / expected;
  }
  return chi2;
}

class ThreadsOverride {
 public:
  explicit ThreadsOverride(const char* value) {
    if (const char* old = std::getenv("SPECTRASCOPE_THREADS")) saved_ = old, had_ = true;
    setenv("SPECTRASCOPE_THREADS", value, 1);
  }
  ~ThreadsOverride() {
    if (had_) {
      setenv("SPECTRASCOPE_THREADS", saved_.c_str(), 1);
    } else {
      unsetenv("SPECTRASCOPE_THREADS");
    }
  }

 private:
  std::string saved_;
  bool had_ = false;
};

}  // namespace

TEST_SUITE("rw-sim oracles") {
  TEST_CASE("two-vertex kernel") {
    const auto g = testing::path_graph(2);
    for (double t : {0.0, 0.1, 0.5, 1.0, 3.0}) {
      const auto k = heat_kernel_exact(g, ThetaKind::One, t);
      CHECK(std::abs(k(0, 0) - (1.0 + std::exp(-2.0 * t)) / 2.0) <= 1e-12);
      CHECK(std::abs(k(0, 1) - (1.0 - std::exp(-2.0 * t)) / 2.0) <= 1e-12);
    }
    const auto f = finite_family(g);
    WalkConfig cfg;
    cfg.horizon = 1.0;
    cfg.paths = 40000;
    cfg.seed = 11;
    const std::vector<double> ts{0.25, 0.5, 1.0};
    for (const auto& e : heat_kernel_mc(*f, cfg, vid(0), vid(0), ts)) {
      const double exact = (1.0 + std::exp(-2.0 * e.t)) / 2.0;
      CHECK(std::abs(e.p_hat - exact) <= 5.0 * e.std_err);
      CHECK(e.paths == 40000);
    }
  }

  TEST_CASE("kernel at time zero") {
    const auto g = testing::random_graph(12, 2);
    const auto k = heat_kernel_exact(g, ThetaKind::Custom, 0.0);
    for (std::size_t x = 0; x < g.size(); ++x) {
      for (std::size_t y = 0; y < g.size(); ++y) {
        const double expected = x == y ? 1.0 / g.theta(x) : 0.0;
        CHECK(std::abs(k(x, y) - expected) <= 1e-12);
      }
    }
  }

  TEST_CASE("holding times") {
    const auto t3 = regular_tree(3);
    for (const auto [kind, mean] : {std::pair{ThetaKind::One, 1.0 / 3.0}, std::pair{ThetaKind::Pi, 1.0}}) {
      WalkConfig cfg;
      cfg.theta = kind;
      cfg.paths = 20000;
      cfg.seed = 5;
      const auto h = holding_time_stats(*t3, cfg, t3->root());
      CHECK(h.samples == 20000);
      CHECK(std::abs(h.mean - mean) <= 5.0 * h.std_err);
    }
  }

  TEST_CASE("jump chain follows the edge weights") {
    const auto star = weighted_star();
    for (const auto kind : {ThetaKind::One, ThetaKind::Pi}) {
      WalkConfig cfg;
      cfg.theta = kind;
      cfg.paths = 30000;
      cfg.seed = 21;
      cfg.horizon = 1e9;
      // Two degrees of freedom; 13.8 is the 0.1% critical value.
      CHECK(chi_square_from_centre(jump_chain_counts(*star, cfg, vid(0), 2)) < 13.8);
    }
  }

  TEST_CASE("decay rate of the killed kernel on a three-vertex path") {
    const auto line = chain("line", [](std::uint64_t) { return 1.0; });
    std::vector<VertexId> vs{vid(1), vid(2), vid(3)};
    const auto op = DirichletOperator::from_truncation(truncate(*line, vs, "path"), ThetaKind::One);
    const ExactHeatKernel hk(op);
    std::vector<double> ts, ps;
    for (int i = 0; i <= 40; ++i) {
      ts.push_back(0.5 * i);
      ps.push_back(hk(ts.back(), 0, 0));
    }
    const auto fit = lambda0_from_decay(ts, ps);
    CHECK(std::abs(fit.lambda - (2.0 - std::sqrt(2.0))) <= 1e-6);
    CHECK(std::abs(hk.lambda_min() - (2.0 - std::sqrt(2.0))) <= 1e-12);
  }

  TEST_CASE("explosion probe on a finite graph") {
    const auto f = finite_family(testing::random_graph(20, 3));
    WalkConfig cfg;
    cfg.horizon = 5.0;
    cfg.paths = 500;
    cfg.jump_cap = 100000;
    cfg.seed = 1;
    const auto r = explosion_probe(*f, cfg, vid(0));
    CHECK(r.capped == 0);
    CHECK(r.fraction == 0.0);
    CHECK(r.ci_low == 0.0);
    CHECK(r.ci_high < 0.01);
  }
}

TEST_SUITE("rw-sim properties") {
  TEST_CASE("the conservative kernel conserves mass") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto g = testing::random_graph(15, seed);
      for (double t : {0.1, 1.0, 10.0}) {
        const auto k = heat_kernel_exact(g, ThetaKind::Custom, t);
        for (std::size_t x = 0; x < g.size(); ++x) {
          double mass = 0.0;
          for (std::size_t y = 0; y < g.size(); ++y) {
            mass += k(x, y) * g.theta(y);
            CHECK(k(x, y) >= -1e-12);
            CHECK(std::abs(k(x, y) - k(y, x)) <= 1e-12);
          }
          CHECK(std::abs(mass - 1.0) <= 1e-10);
        }
      }
    }
  }

  TEST_CASE("semigroup norm is exp(-lambda t)") {
    const auto bd0 = birth_death(0.0);
    std::vector<VertexId> vs;
    for (std::uint64_t i = 0; i < 30; ++i) vs.push_back(vid(i));
    const ExactHeatKernel hk(DirichletOperator::from_truncation(truncate(*bd0, vs, "prefix"), ThetaKind::One));
    for (double t : {0.0, 0.5, 2.0, 8.0}) {
      CHECK(std::abs(hk.semigroup_norm(t) - std::exp(-hk.lambda_min() * t)) <= 1e-10);
    }
    // Killing only loses mass.
    double mass = 0.0;
    const auto k = hk.kernel(1.0);
    for (Eigen::Index y = 0; y < k.cols(); ++y) mass += k(0, y);
    CHECK(mass < 1.0);
  }

  TEST_CASE("seeded runs are deterministic and thread-count invariant") {
    const auto t3 = regular_tree(3);
    WalkConfig cfg;
    cfg.horizon = 2.0;
    cfg.paths = 3000;
    cfg.seed = 99;
    const std::vector<double> ts{0.5, 1.0, 2.0};
    std::vector<HeatKernelEstimate> one, many, again;
    {
      ThreadsOverride o("1");
      one = heat_kernel_mc(*t3, cfg, t3->root(), t3->root(), ts);
    }
    {
      ThreadsOverride o("4");
      many = heat_kernel_mc(*t3, cfg, t3->root(), t3->root(), ts);
      again = heat_kernel_mc(*t3, cfg, t3->root(), t3->root(), ts);
    }
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      CHECK(one[i].p_hat == many[i].p_hat);
      CHECK(one[i].hits == many[i].hits);
      CHECK(many[i].p_hat == again[i].p_hat);
    }
    const auto a = simulate_walk(*t3, cfg, t3->root());
    const auto b = simulate_walk(*t3, cfg, t3->root());
    CHECK(a.times == b.times);
    CHECK(a.vertices == b.vertices);
    CHECK(path_seed(99, 0) != path_seed(99, 1));
  }

  TEST_CASE("trajectories are well formed") {
    const auto s = spherical_tree(0.5);
    WalkConfig cfg;
    cfg.horizon = 5.0;
    cfg.seed = 4;
    const auto tr = simulate_walk(*s, cfg, s->root());
    REQUIRE(tr.times.size() == tr.vertices.size());
    CHECK(tr.times.front() == 0.0);
    for (std::size_t i = 1; i < tr.times.size(); ++i) {
      CHECK(tr.times[i] > tr.times[i - 1]);
      CHECK(s->edge_weight(tr.vertices[i - 1], tr.vertices[i]).has_value());
    }
    CHECK(tr.times.back() <= cfg.horizon);
  }

  TEST_CASE("invalid configurations") {
    WalkConfig cfg;
    cfg.paths = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.paths = 1;
    cfg.horizon = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    const auto t3 = regular_tree(3);
    WalkConfig pi;
    pi.theta = ThetaKind::Pi;
    CHECK_THROWS(explosion_probe(*t3, pi, t3->root()));
  }
}
