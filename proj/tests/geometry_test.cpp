#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "userdp/geometry.hpp"
#include "userdp/random.hpp"

using namespace userdp;

TEST_SUITE("geometry") {

TEST_CASE("distances and norms") {
  const Point a{1.0, 2.0, 3.0};
  const Point b{4.0, -2.0, 3.0};
  CHECK(squared_distance(a, b) == doctest::Approx(25.0));
  CHECK(l2_norm(b) == doctest::Approx(std::sqrt(29.0)));
  CHECK(l2_norm(Point{}) == 0.0);
}

TEST_CASE("sample_ball stays inside, exactly") {
  RandomStream rng(101);
  for (std::size_t d : {std::size_t{1}, std::size_t{2}, std::size_t{8}}) {
    Point center(d, 0.25);
    const double radius = 1.75;
    std::size_t bad = 0;
    for (int i = 0; i < 20000; ++i) {
      const Point p = sample_ball(center, radius, rng);
      if (squared_distance(p, center) > radius * radius) ++bad;
    }
    CHECK(bad == 0);
  }
  const Point degenerate = sample_ball(Point{1.0, 2.0}, 0.0, rng);
  CHECK(degenerate == Point{1.0, 2.0});
}

TEST_CASE("sample_ball half-radius mass is 2^-d") {
  RandomStream rng(103);
  const std::size_t trials = 20000;
  for (std::size_t d : {std::size_t{1}, std::size_t{2}, std::size_t{8}}) {
    const Point center(d, 0.0);
    std::size_t inner = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      const Point p = sample_ball(center, 2.0, rng);
      if (squared_distance(p, center) <= 1.0) ++inner;
    }
    const double expect = std::pow(0.5, double(d));
    const double tol = 5.0 * std::sqrt(expect * (1 - expect) / double(trials));
    CHECK(std::abs(double(inner) / double(trials) - expect) < tol);
  }
}

TEST_CASE("sample_ball radial law matches t^d") {
  RandomStream rng(107);
  const std::size_t n = 20000;
  std::vector<double> scaled(n);
  const Point center(3, 0.0);
  for (double& s : scaled) s = l2_norm(sample_ball(center, 2.0, rng)) / 2.0;
  const double d_stat = testsupport::ks_statistic_one_sample(
      scaled, [](double s) { return s * s * s; });
  CHECK(testsupport::ks_p_one_sample(d_stat, n) > 1e-3);
}

TEST_CASE("count_cover includes boundaries") {
  const std::vector<Point> pts{{0.0}, {3.0}, {10.0}};
  CHECK(count_cover(Point{0.0}, pts, 3.0) == 2);
  CHECK(count_cover(Point{6.9}, pts, 3.0) == 0);
  CHECK(count_cover(Point{7.0}, pts, 3.0) == 1);
  CHECK(count_cover(Point{-5.0}, pts, 1.0) == 0);
}

TEST_CASE("coordinate_median") {
  const std::vector<Point> odd{{1.0, 5.0}, {2.0, -1.0}, {9.0, 0.0}};
  CHECK(coordinate_median(odd) == Point{2.0, 0.0});
  const std::vector<Point> even{{1.0}, {2.0}, {3.0}, {10.0}};
  CHECK(coordinate_median(even) == Point{2.5});
}

TEST_CASE("next_pow2") {
  CHECK(next_pow2(1) == 1);
  CHECK(next_pow2(2) == 2);
  CHECK(next_pow2(3) == 4);
  CHECK(next_pow2(5) == 8);
  CHECK(next_pow2(64) == 64);
  CHECK(next_pow2(65) == 128);
  CHECK(next_pow2(1000) == 1024);
}

TEST_CASE("fwht matches the dense definition") {
  RandomStream rng(109);
  for (std::size_t len : {std::size_t{1}, std::size_t{2}, std::size_t{4},
                          std::size_t{8}, std::size_t{16}, std::size_t{32}}) {
    std::vector<double> v(len);
    for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
    const std::vector<double> want = testsupport::dense_hadamard(v);
    std::vector<double> got = v;
    fwht(got);
    for (std::size_t i = 0; i < len; ++i) {
      CHECK(std::abs(got[i] - want[i]) < 1e-10);
    }
  }
  std::vector<double> bad(3, 1.0);
  CHECK_THROWS_AS(fwht(bad), std::invalid_argument);
}

TEST_CASE("rotation round trip and isometry") {
  RandomStream rng(113);
  for (std::size_t d : {std::size_t{1}, std::size_t{5}, std::size_t{16},
                        std::size_t{100}}) {
    const RotationPlan plan = make_rotation(d, 777);
    CHECK(plan.d_pad == next_pow2(d));
    for (int rep = 0; rep < 5; ++rep) {
      Point v(d);
      for (double& x : v) x = 10.0 * (rng.uniform() - 0.5);
      const Point w = rotate(plan, v);
      REQUIRE(w.size() == plan.d_pad);
      CHECK(l2_norm(w) == doctest::Approx(l2_norm(v)).epsilon(1e-12));
      const Point back = unrotate(plan, w);
      REQUIRE(back.size() == d);
      for (std::size_t j = 0; j < d; ++j) {
        CHECK(std::abs(back[j] - v[j]) < 1e-10);
      }
    }
  }
}

TEST_CASE("rotation plans are seed-deterministic") {
  const RotationPlan a = make_rotation(33, 5);
  const RotationPlan b = make_rotation(33, 5);
  const RotationPlan c = make_rotation(33, 6);
  CHECK(a.signs == b.signs);
  CHECK(a.signs != c.signs);
  for (double s : a.signs) CHECK(std::abs(s) == 1.0);
}

}  // TEST_SUITE
