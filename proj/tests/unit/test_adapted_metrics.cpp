#include <doctest.h>

#include <cmath>
#include <random>

#include "spectrascope/family.hpp"
#include "spectrascope/metric.hpp"
#include "support.hpp"

using namespace spectrascope;

namespace {

// Two-vertex family whose ends have prescribed degrees: u=0 with pi_u, v=1 with pi_v.
WeightedGraph degree_pair(double pi_u, double pi_v) {
  WeightedGraph g;
  g.add_vertex(vid(0), 1.0);
  g.add_vertex(vid(1), 1.0);
  g.add_vertex(vid(2), 1.0);
  g.add_vertex(vid(3), 1.0);
  g.add_edge_by_index(0, 1, 1.0);
  g.add_edge_by_index(0, 2, pi_u - 1.0);
  g.add_edge_by_index(1, 3, pi_v - 1.0);
  return g;
}

}  // namespace

TEST_SUITE("adapted-metrics oracles") {
  TEST_CASE("edge cost formulas") {
    WeightedGraph g;
    g.add_vertex(vid(0), 1.0);
    g.add_vertex(vid(1), 1.0);
    g.add_edge_by_index(0, 1, 4.0);
    const auto f = finite_family(g);
    CHECK(edge_cost(MetricSpec::de(2.0), *f, vid(0), vid(1)) == doctest::Approx(std::sqrt(0.5) * 0.5).epsilon(1e-15));
    CHECK(edge_cost(MetricSpec::graph(), *f, vid(0), vid(1)) == 1.0);
    CHECK(edge_cost(MetricSpec::scaled(4.0), *f, vid(0), vid(1)) == 0.5);

    const auto pair = finite_family(degree_pair(4.0, 9.0));
    CHECK(edge_cost(MetricSpec::dv(ThetaKind::One), *pair, vid(0), vid(1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const auto t3 = regular_tree(3);
    CHECK_THROWS_AS(edge_cost(MetricSpec::graph(), *t3, vid(1), vid(2)), NotAdjacentError);
  }

  TEST_CASE("balls") {
    const auto t3 = regular_tree(3);
    const auto b0 = ball(*t3, MetricSpec::graph(), t3->root(), 0, 10);
    CHECK(b0.size() == 1);
    CHECK(b0.frontier_bound == 1.0);
    const auto b2 = ball(*t3, MetricSpec::graph(), t3->root(), 2, 100);
    CHECK(b2.size() == 10);
    for (const auto& e : b2.entries) CHECK((e.distance == 0 || e.distance == 1 || e.distance == 2));

    const auto bd0 = birth_death(0.0);
    const auto b = ball(*bd0, MetricSpec::de(2.0), vid(0), 1.0, 100);
    CHECK(b.size() == 2);  // 1/sqrt2 <= 1 < 1/sqrt2 (1 + 1/2)
    CHECK(b.distance(vid(1)).value() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(b.frontier_bound == doctest::Approx(1.5 * std::sqrt(0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(ball(*t3, MetricSpec::graph(), t3->root(), 5, 20), BallCapExceeded);
  }

  TEST_CASE("adaptedness equality cases") {
    for (int k : {3, 4, 5}) {
      const auto t = regular_tree(k);
      const auto vs = ball(*t, MetricSpec::graph(), t->root(), 4, 100000).vertices();
      const auto rep = verify_adaptedness(*t, MetricSpec::scaled(k), ThetaKind::One, vs);
      CHECK(rep.pass);
      for (const auto& s : rep.slack) CHECK(std::abs(s.distance - 1.0) <= 1e-12);
    }
    const auto g = testing::random_graph(40, 11);
    const auto f = finite_family(g);
    std::vector<VertexId> all;
    for (std::size_t i = 0; i < g.size(); ++i) all.push_back(g.id(i));
    const auto rep = verify_adaptedness(*f, MetricSpec::graph(), ThetaKind::Pi, all);
    for (const auto& s : rep.slack) CHECK(std::abs(s.distance - 1.0) <= 1e-12);

    const auto bd1 = birth_death(1.0);
    std::vector<VertexId> first;
    for (std::uint64_t n = 0; n <= 100; ++n) first.push_back(vid(n));
    const auto de = verify_adaptedness(*bd1, MetricSpec::de(2.0), ThetaKind::One, first);
    CHECK(de.pass);
    CHECK(de.max_slack <= AdaptednessReport::kTolerance);
  }

  TEST_CASE("non-adapted metric is reported, not raised") {
    const auto t3 = regular_tree(3);
    const auto vs = ball(*t3, MetricSpec::graph(), t3->root(), 2, 100).vertices();
    const auto rep = verify_adaptedness(*t3, MetricSpec::graph(), ThetaKind::One, vs);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_slack == 3.0);
  }

  TEST_CASE("descriptors round trip") {
    for (const std::string d : {"graph", "scaled:A=4", "de:D=2", "dv"}) {
      CHECK(parse_metric(d).descriptor() == d);
    }
    CHECK(parse_metric("dv", ThetaKind::Pi).descriptor() == "dv:theta=pi");
    CHECK_THROWS_AS(parse_metric("euclid"), std::invalid_argument);
    CHECK_THROWS_AS(parse_metric("scaled:B=4"), std::invalid_argument);
  }
}

TEST_SUITE("adapted-metrics properties") {
  TEST_CASE("DE and DV costs are at most 1") {
    std::vector<FamilyPtr> families{birth_death(-1), birth_death(0), birth_death(1), spherical_tree(0),
                                    spherical_tree(1), regular_tree(3)};
    for (const auto& f : families) {
      const auto vs = ball(*f, MetricSpec::graph(), f->root(), 4, 100000).vertices();
      for (const auto& spec : {MetricSpec::dv(ThetaKind::One), MetricSpec::dv(ThetaKind::Pi)}) {
        const auto rep = verify_adaptedness(*f, spec, spec.theta, vs);
        CHECK(rep.max_edge_cost <= 1.0);
        CHECK(rep.pass);
      }
    }
  }

  TEST_CASE("DE rejects a degree bound below the observed degree") {
    const auto t3 = regular_tree(3);
    CHECK_THROWS(ball(*t3, MetricSpec::de(2.0), t3->root(), 5, 1000));
  }

  TEST_CASE("nested balls agree exactly") {
    const auto s = spherical_tree(0.5);
    const auto spec = MetricSpec::dv(ThetaKind::One);
    const auto small = ball(*s, spec, s->root(), 1.5, 100000);
    const auto large = ball(*s, spec, s->root(), 2.5, 100000);
    for (const auto& e : small.entries) {
      REQUIRE(large.contains(e.id));
      CHECK(*large.distance(e.id) == e.distance);
    }
    CHECK(small.frontier_bound > small.radius);
  }

  TEST_CASE("ball distances are a metric on small graphs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto g = testing::random_graph(15, seed);
      const auto f = finite_family(g);
      const auto spec = MetricSpec::dv(ThetaKind::Pi);
      std::vector<MetricBall> from(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) from[i] = ball(*f, spec, g.id(i), 1e9, 100);
      for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
          CHECK(*from[i].distance(g.id(j)) == *from[j].distance(g.id(i)));
          for (std::size_t k = 0; k < g.size(); ++k) {
            CHECK(*from[i].distance(g.id(k)) <=
                  *from[i].distance(g.id(j)) + *from[j].distance(g.id(k)) + 1e-12);
          }
        }
        for (const auto& a : g.adjacent(i)) {
          const double c = edge_cost(spec, *f, g.id(i), g.id(a.index));
          CHECK(std::abs(*from[0].distance(g.id(i)) - *from[0].distance(g.id(a.index))) <= c + 1e-12);
        }
      }
    }
  }

  TEST_CASE("edge costs shrink on an unbounded family") {
    const auto bd0 = birth_death(0.0);
    double previous = 1.0;
    for (double r : {2.0, 4.0, 6.0}) {
      const auto b = ball(*bd0, MetricSpec::dv(ThetaKind::One), vid(0), r, 1'000'000);
      const auto rep = verify_adaptedness(*bd0, MetricSpec::dv(ThetaKind::One), ThetaKind::One, b.vertices());
      CHECK(rep.min_edge_cost < previous);
      previous = rep.min_edge_cost;
    }
    CHECK(previous < 1e-2);
  }

  TEST_CASE("ball output is sorted with id tie-break") {
    const auto t3 = regular_tree(3);
    const auto b = ball(*t3, MetricSpec::graph(), t3->root(), 4, 1000);
    for (std::size_t i = 1; i < b.entries.size(); ++i) {
      const auto& p = b.entries[i - 1];
      const auto& q = b.entries[i];
      CHECK((p.distance < q.distance || (p.distance == q.distance && raw(p.id) < raw(q.id))));
    }
  }
}
