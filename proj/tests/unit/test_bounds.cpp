#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "spectrascope/bounds.hpp"
#include "spectrascope/family.hpp"
#include "spectrascope/truncation.hpp"

using namespace spectrascope;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_SUITE("bounds oracles") {
  TEST_CASE("general bound") {
    CHECK(growth_bound_general(std::numbers::sqrt2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(growth_bound_general(2.0) == 0.5);
    CHECK(growth_bound_general(0.0) == 0.0);
    CHECK_THROWS_AS(growth_bound_general(kInf), std::domain_error);
    CHECK_THROWS_AS(growth_bound_general(-1.0), std::domain_error);
  }

  TEST_CASE("bounded metric bound") {
    CHECK(std::abs(growth_bound_bounded(std::numbers::ln2, 1.0, 1.0) - (3.0 - 2.0 * std::numbers::sqrt2) / 3.0) <=
          1e-15);
    CHECK(growth_bound_bounded(std::numbers::ln2, 1.0, 1.0) == doctest::Approx(0.0571910).epsilon(1e-6));
    const double m = 1.0 / std::sqrt(3.0);
    const double mu = std::sqrt(3.0) * std::numbers::ln2;  // e^{M mu} = 2
    CHECK(std::abs(growth_bound_bounded(mu, m, m) - (3.0 - 2.0 * std::numbers::sqrt2)) <= 1e-12);
  }

  TEST_CASE("degenerate bound") {
    CHECK(degenerate_bound(0.5) == 4.0);
    CHECK(degenerate_bound(1.0 / std::sqrt(3.0)) == doctest::Approx(3.0).epsilon(1e-15));
  }

  TEST_CASE("essential spectrum flags") {
    const auto zero = spectrum_flags(0.0);
    CHECK(zero.ess_spectrum_zero);
    CHECK(zero.ess_spectrum_nonempty);
    const auto finite = spectrum_flags(1.0);
    CHECK_FALSE(finite.ess_spectrum_zero);
    CHECK(finite.ess_spectrum_nonempty);
    const auto inf = spectrum_flags(kInf);
    CHECK_FALSE(inf.ess_spectrum_zero);
    CHECK_FALSE(inf.ess_spectrum_nonempty);
  }

  TEST_CASE("bound report picks the applicable bound") {
    BoundInput in;
    in.mu = kInf;
    CHECK_FALSE(bound_report(in).best().has_value());
    in.m = 0.5;
    const auto degenerate = bound_report(in);
    CHECK(degenerate.best() == 4.0);
    CHECK_FALSE(degenerate.general_bound.has_value());
    in.mu = std::numbers::sqrt2;
    in.M = 1.0;
    const auto finite = bound_report(in);
    CHECK(finite.general_bound.has_value());
    CHECK(finite.bounded_metric_bound.has_value());
    CHECK(*finite.best() <= *finite.general_bound);
    in.m = 2.0;
    CHECK_THROWS_AS(bound_report(in), std::invalid_argument);
  }

  TEST_CASE("scalar function") {
    CHECK(scalar_I(1.0) == doctest::Approx(0.351946).epsilon(1e-6));
    CHECK(scalar_I(0.0) == 0.0);
    std::vector<double> grid;
    for (int i = 0; i <= 10000; ++i) grid.push_back(i * 1e-3);
    const auto check = scalar_I_check(grid);
    CHECK(check.pass());
    CHECK(check.worst_ratio <= 1.0);
  }

  TEST_CASE("Hardy operators") {
    const auto a0 = hardy_schur_check(0.0, 100000, 0);
    CHECK(a0.pass());
    CHECK(a0.factor == 3.0);
    const auto a1 = hardy_schur_check(1.0, 100000, 100);
    CHECK(a1.pass());
    CHECK(a1.factor == doctest::Approx(3.0 / std::sqrt(std::log(101.0))).epsilon(1e-12));
    const std::vector<double> f{1.0, 0.0, 2.0};
    const auto t = hardy_apply(0.0, f);
    REQUIRE(t.size() == 3);
    CHECK(t[2] == doctest::Approx(2.0 / 3.0));
    CHECK(t[0] == doctest::Approx(1.0 + 2.0 / 3.0));
  }

  TEST_CASE("consistency examples") {
    BoundInput bi;
    bi.mu = std::numbers::sqrt2;
    const auto br = bound_report(bi);
    ConsistencyInput ok;
    ok.lambda0 = 0.1;
    ok.lambda_ess = 0.26;
    CHECK(consistency_report(ok, br).ok());
    ConsistencyInput inverted = ok;
    inverted.lambda0 = 0.3;
    const auto bad = consistency_report(inverted, br);
    CHECK_FALSE(bad.lambda0_below_ess);
    CHECK_FALSE(bad.findings.empty());
    ConsistencyInput high = ok;
    high.lambda_ess = 0.4;
    CHECK_FALSE(consistency_report(high, br).ess_below_bound);
    high.ess_upper_biased = false;
    high.lambda_ess = 0.26;
    CHECK_FALSE(consistency_report(high, br).ess_below_bound);
  }
}

TEST_SUITE("bounds properties") {
  TEST_CASE("bounded bound has the closed form 1 - 2e^{mu/2}/(1+e^mu)") {
    for (double mu = 0.01; mu < 20.0; mu *= 1.3) {
      const double expected = 1.0 - 2.0 * std::exp(mu / 2.0) / (1.0 + std::exp(mu));
      CHECK(std::abs(growth_bound_bounded(mu, 1.0, 1.0) - expected) <= 1e-12);
    }
  }

  TEST_CASE("bounds are monotone in mu") {
    double g = -1.0, b = -1.0;
    for (double mu = 0.0; mu < 10.0; mu += 0.05) {
      CHECK(growth_bound_general(mu) >= g);
      CHECK(growth_bound_bounded(mu, 0.7, 0.9) >= b);
      g = growth_bound_general(mu);
      b = growth_bound_bounded(mu, 0.7, 0.9);
    }
  }

  TEST_CASE("small mu agrees with the general bound to leading order") {
    for (double mu : {1e-2, 1e-3, 1e-4}) {
      CHECK(std::abs(growth_bound_bounded(mu, 1.0, 1.0) / growth_bound_general(mu) - 1.0) <= mu);
    }
  }

  TEST_CASE("tent inequality on trees and birth-death chains") {
    const auto t3 = regular_tree(3);
    const auto spec = MetricSpec::scaled(3.0);
    const auto tb = ball(*t3, spec, t3->root(), 3.5, 100000);
    const auto tree = tent_random_check(*t3, spec, tb, 10000, 1);
    CHECK(tree.pass());
    CHECK(tree.checked == 10000);
    CHECK(tree.equality_witnesses > 0);
    REQUIRE(tree.witness.has_value());
    CHECK(tree.witness->same_side);

    const auto bd1 = birth_death(1.0);
    const auto de = MetricSpec::de(2.0);
    const auto bb = ball(*bd1, de, vid(0), 3.0, 100000);
    CHECK(tent_random_check(*bd1, de, bb, 10000, 2).pass());
    const auto s = spherical_tree(1.0);
    const auto dv = MetricSpec::dv(ThetaKind::One);
    const auto sb = ball(*s, dv, s->root(), 2.0, 100000);
    CHECK(tent_random_check(*s, dv, sb, 10000, 3).pass());
  }

  TEST_CASE("Dirichlet form control with tents") {
    const auto t3 = regular_tree(3);
    const auto spec = MetricSpec::scaled(3.0);
    const auto tb = ball(*t3, spec, t3->root(), 3.0, 100000);
    const auto tr = truncate(*t3, tb.vertices(), "ball");
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> alpha_dist(0.1, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
      TentFunction tent;
      tent.alpha = alpha_dist(rng);
      tent.j = 1 + trial % 3;
      std::vector<double> f(tr.size());
      for (std::size_t i = 0; i < tr.size(); ++i) f[i] = tent.value(*tb.distance(tr.graph.id(i)));
      const double c = tent.alpha * tent.alpha / 2.0;
      CHECK(pointwise_constant(tr.graph, f, spec) <= c * (1.0 + 1e-12));
      const auto check = dirichlet_form_control_check(tr.graph, f, c, spec, ThetaKind::One);
      CHECK(check.precondition_ok);
      CHECK(check.pass());
      CHECK(check.energy <= check.bound * (1.0 + 1e-12));
    }
  }
}
