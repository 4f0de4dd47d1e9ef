#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "spectrascope/dirichlet.hpp"
#include "spectrascope/family.hpp"
#include "spectrascope/spectral.hpp"
#include "support.hpp"

using namespace spectrascope;

namespace {

Truncation chain_prefix(const GraphFamily& f, std::uint64_t n) {
  std::vector<VertexId> vs;
  for (std::uint64_t i = 0; i < n; ++i) vs.push_back(vid(i));
  return truncate(f, vs, "prefix");
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_SUITE("spectral oracles") {
  TEST_CASE("one by one operator") {
    WeightedGraph g;
    g.add_vertex(vid(0), 1.0);
    const auto op = DirichletOperator::from_parts(g, {2.0}, {1.0});
    CHECK(std::abs(smallest_eigenvalue(op, 1e-12).lambda - 2.0) <= 1e-12);
  }

  TEST_CASE("three-vertex Dirichlet path") {
    const auto line = chain("line", [](std::uint64_t) { return 1.0; });
    std::vector<VertexId> vs{vid(1), vid(2), vid(3)};
    const auto t = truncate(*line, vs, "path");
    const auto op = DirichletOperator::from_truncation(t, ThetaKind::One);
    Eigen::MatrixXd expected(3, 3);
    expected << 2, -1, 0, -1, 2, -1, 0, -1, 2;
    CHECK((op.dense() - expected).norm() == 0.0);
    const double exact = 2.0 - std::sqrt(2.0);
    for (const auto m : {EigenMethod::Auto, EigenMethod::Dense, EigenMethod::Sturm}) {
      CHECK(std::abs(smallest_eigenvalue(op, 1e-12, m).lambda - exact) <= 1e-11);
    }
  }

  TEST_CASE("Dirichlet form examples") {
    const auto g = testing::random_graph(12, 5);
    const std::vector<double> c(g.size(), 3.5);
    CHECK(std::abs(dirichlet_form(g, c, c)) <= 1e-12);
    WeightedGraph two;
    two.add_vertex(vid(0), 1.0);
    two.add_vertex(vid(1), 1.0);
    two.add_edge_by_index(0, 1, 2.75);
    const std::vector<double> f{0.0, 1.0};
    CHECK(dirichlet_form(two, f, f) == 2.75);
    // theta_x^{-1/2} 1_x has energy pi_x / theta_x.
    for (std::size_t x = 0; x < g.size(); ++x) {
      std::vector<double> e(g.size(), 0.0);
      e[x] = 1.0 / std::sqrt(g.theta(x));
      CHECK(dirichlet_form(g, e, e) == doctest::Approx(g.degree(x) / g.theta(x)).epsilon(1e-13));
    }
  }

  TEST_CASE("generator examples") {
    const auto g = testing::random_graph(10, 9);
    const std::vector<double> c(g.size(), -2.0);
    for (const double v : apply_generator(g, ThetaKind::Custom, c)) CHECK(std::abs(v) <= 1e-12);
    const auto two = testing::path_graph(2);
    const std::vector<double> f{1.0, 0.0};
    const auto lf = apply_generator(two, ThetaKind::One, f);
    CHECK(lf[0] == -1.0);
    CHECK(lf[1] == 1.0);
  }

  TEST_CASE("norm bracket examples") {
    const auto two = norm_bracket_check(testing::path_graph(2), ThetaKind::One);
    CHECK(two.a == 1.0);
    CHECK(two.norm == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(two.pass);
    const auto star = norm_bracket_check(testing::star_graph(5), ThetaKind::One);
    CHECK(star.a == 5.0);
    CHECK(star.norm == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(star.pass);
  }

  TEST_CASE("regular tree exhaustion") {
    const auto t3 = regular_tree(3);
    const std::vector<double> radii{2, 4, 6, 8, 10};
    for (const auto theta : {ThetaKind::Pi, ThetaKind::One}) {
      const auto ex = lambda0_exhaustion(*t3, theta, MetricSpec::graph(), t3->root(), radii, 100000);
      CHECK(ex.monotone);
      const double exact = theta == ThetaKind::Pi ? 1.0 - 2.0 * std::sqrt(2.0) / 3.0 : 3.0 - 2.0 * std::sqrt(2.0);
      for (const auto& s : ex.steps) CHECK(s.estimate.lambda > exact);
      // theta = one is three times theta = pi on a regular tree.
      if (theta == ThetaKind::One) {
        const auto pi = lambda0_exhaustion(*t3, ThetaKind::Pi, MetricSpec::graph(), t3->root(), radii, 100000);
        CHECK(ex.steps.back().estimate.lambda == doctest::Approx(3.0 * pi.steps.back().estimate.lambda).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("integer line exhaustion tends to zero") {
    const auto line = chain("line", [](std::uint64_t) { return 1.0; });
    const std::vector<double> radii{10, 100, 1000, 10000};
    const auto ex = lambda0_exhaustion(*line, ThetaKind::One, MetricSpec::graph(), vid(0), radii, 100000);
    CHECK(ex.monotone);
    CHECK(ex.steps.back().estimate.lambda < 1e-7);
    CHECK(ex.steps.back().estimate.method == EigenMethod::Sturm);
  }

  TEST_CASE("annuli") {
    const auto bd1 = birth_death(1.0);
    for (const std::uint64_t k : {10u, 100u}) {
      std::vector<VertexId> vs;
      for (std::uint64_t i = k; i < 20000; ++i) vs.push_back(vid(i));
      const auto est = dirichlet_eigenvalue(truncate(*bd1, vs, "annulus"), ThetaKind::One);
      CHECK(est.lambda >= std::log(double(k) + 1.0) / 9.0);
    }
    const auto t3 = regular_tree(3);
    const std::vector<double> ks{0, 2, 4};
    const std::vector<double> outer{9, 10};
    const auto table = lambda_ess_annuli(*t3, ThetaKind::Pi, MetricSpec::graph(), t3->root(), ks, outer, 100000);
    CHECK(table.monotone);
    CHECK(table.rows.size() == 6);
    const std::vector<double> radius{10};
    const auto ex = lambda0_exhaustion(*t3, ThetaKind::Pi, MetricSpec::graph(), t3->root(), radius, 100000);
    CHECK(table.rows[3].estimate.lambda == ex.steps.back().estimate.lambda);
    CHECK(table.caveat == "upper-biased at finite R_outer");
    const std::vector<double> too_big{0, 12};
    CHECK_THROWS_AS(lambda_ess_annuli(*t3, ThetaKind::Pi, MetricSpec::graph(), t3->root(), too_big, outer, 100000),
                    std::invalid_argument);
  }

  TEST_CASE("dimension caps") {
    const auto t3 = regular_tree(3);
    const auto t = truncate_ball(*t3, MetricSpec::graph(), t3->root(), 11, 100000);
    SolverCaps caps;
    caps.sparse = 5000;
    CHECK_THROWS_AS(dirichlet_eigenvalue(t, ThetaKind::Pi, 1e-8, caps), DimensionCapExceeded);
    const auto bd0 = birth_death(0.0);
    caps.tridiagonal = 100;
    CHECK_THROWS_AS(dirichlet_eigenvalue(chain_prefix(*bd0, 5000), ThetaKind::One, 1e-8, caps), DimensionCapExceeded);
  }
}

TEST_SUITE("spectral properties") {
  TEST_CASE("M is symmetric") {
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto g = testing::random_graph(30, seed);
      const auto f = finite_family(g);
      std::vector<VertexId> vs;
      for (std::size_t i = 0; i < 20; ++i) vs.push_back(g.id(i));
      const auto op = DirichletOperator::from_truncation(truncate(*f, vs, "sub"), ThetaKind::Custom);
      const auto u = random_vector(op.size(), rng), v = random_vector(op.size(), rng);
      std::vector<double> mu(op.size()), mv(op.size());
      op.apply(u, mu);
      op.apply(v, mv);
      double a = 0.0, b = 0.0;
      for (std::size_t i = 0; i < op.size(); ++i) {
        a += mu[i] * v[i];
        b += u[i] * mv[i];
      }
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
  }

  TEST_CASE("Gauss-Green on random graphs") {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto g = testing::random_graph(2 + seed % 49, seed);
      for (const auto kind : {ThetaKind::Custom, ThetaKind::Pi, ThetaKind::One}) {
        const auto f = random_vector(g.size(), rng), h = random_vector(g.size(), rng);
        const auto lf = apply_generator(g, kind, f);
        const auto th = theta_values(g, kind);
        const double e = dirichlet_form(g, f, h);
        const double ip = -inner_product(th, lf, h);
        CHECK(std::abs(e - ip) <= 1e-10 * std::max(1.0, std::abs(e)));
      }
    }
  }

  TEST_CASE("Gauss-Green with a Dirichlet boundary") {
    std::mt19937_64 rng(5);
    const auto bd1 = birth_death(1.0);
    const auto t = chain_prefix(*bd1, 40);
    const auto f = random_vector(t.size(), rng), h = random_vector(t.size(), rng);
    const auto lf = apply_generator(t, ThetaKind::One, f);
    const auto th = theta_values(t, ThetaKind::One);
    const double e = dirichlet_form(t, f, h);
    CHECK(std::abs(e + inner_product(th, lf, h)) <= 1e-10 * std::abs(e));
  }

  TEST_CASE("variational principle") {
    std::mt19937_64 rng(8);
    const auto s = spherical_tree(0.5);
    const auto t = truncate_ball(*s, MetricSpec::graph(), s->root(), 4, 10000);
    const auto op = DirichletOperator::from_truncation(t, ThetaKind::One);
    const double lam = smallest_eigenvalue(op, 1e-10).lambda;
    for (int i = 0; i < 50; ++i) {
      const auto v = random_vector(op.size(), rng);
      CHECK(op.rayleigh_quotient(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size())) >= lam - 1e-10);
    }
  }

  TEST_CASE("domain monotonicity and positivity") {
    const auto s = spherical_tree(1.0);
    double previous = 1e300;
    for (double r : {1.0, 2.0, 3.0, 4.0, 5.0}) {
      const auto t = truncate_ball(*s, MetricSpec::graph(), s->root(), r, 100000);
      const double lam = dirichlet_eigenvalue(t, ThetaKind::One).lambda;
      CHECK(lam > 0.0);
      CHECK(lam <= previous + 1e-7);
      previous = lam;
    }
  }

  TEST_CASE("no boundary means a zero eigenvalue") {
    const auto g = testing::random_graph(25, 4);
    const auto op = DirichletOperator::from_graph(g, ThetaKind::Pi);
    CHECK(std::abs(smallest_eigenvalue(op).lambda) <= 1e-10);
  }

  TEST_CASE("Sturm agrees with the dense solver") {
    for (double alpha : {-1.0, 0.0, 1.0, 1.5}) {
      const auto f = birth_death(alpha);
      for (std::uint64_t n : {5u, 200u, 2000u}) {
        const auto op = DirichletOperator::from_truncation(chain_prefix(*f, n), ThetaKind::One);
        REQUIRE(op.structure() == Structure::Tridiagonal);
        const double dense = smallest_eigenvalue(op, 1e-12, EigenMethod::Dense).lambda;
        const double sturm = smallest_eigenvalue(op, 1e-12, EigenMethod::Sturm).lambda;
        // Dense eigenvalues carry an absolute error of order eps * ||M||.
        const double slack = 1e-10 * std::max(1.0, dense) + 64.0 * 2.2e-16 * op.gershgorin_upper();
        CHECK(std::abs(dense - sturm) <= slack);
      }
    }
  }

  TEST_CASE("Lanczos agrees with the dense solver") {
    const auto t3 = regular_tree(3);
    const auto t = truncate_ball(*t3, MetricSpec::graph(), t3->root(), 7, 10000);
    const auto op = DirichletOperator::from_truncation(t, ThetaKind::Pi);
    const auto dense = smallest_eigenvalue(op, 1e-10, EigenMethod::Dense);
    const auto lanczos = smallest_eigenvalue(op, 1e-10, EigenMethod::Lanczos);
    CHECK(std::abs(dense.lambda - lanczos.lambda) <= 1e-9);
    CHECK(lanczos.residual <= 1e-10);
  }

  TEST_CASE("norm bracket on random graphs") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto g = testing::random_graph(2 + seed % 39, seed + 1000);
      CHECK(norm_bracket_check(g, ThetaKind::One).pass);
      const auto pi = norm_bracket_check(g, ThetaKind::Pi);
      CHECK(pi.pass);
      CHECK(pi.pi_bracket_pass);
    }
  }
}
