#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "userdp/geometry.hpp"
#include "userdp/synthdata.hpp"

using namespace userdp;

namespace {

DataSpec spec_for(Family family, std::size_t n, std::size_t m, std::size_t d,
                  double r, double rho, std::uint64_t seed) {
  DataSpec s;
  s.family = family;
  s.n = n;
  s.m = m;
  s.d = d;
  s.r = r;
  s.rho = rho;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_SUITE("synthdata") {

TEST_CASE("names round-trip") {
  for (Family f : {Family::kUniformBall, Family::kGaussianClipped,
                   Family::kPointMass, Family::kDiscrete}) {
    CHECK(family_from_name(family_name(f)) == f);
  }
  CHECK_THROWS_AS(family_from_name("nope"), std::invalid_argument);
  for (Adversary a :
       {Adversary::kFarCluster, Adversary::kMirror, Adversary::kScatter}) {
    CHECK(adversary_from_name(adversary_name(a)) == a);
  }
}

TEST_CASE("every continuous family respects the support ball") {
  for (Family f :
       {Family::kUniformBall, Family::kGaussianClipped, Family::kPointMass}) {
    for (double rho : {0.0, 1.5}) {
      DataSpec s = spec_for(f, 20, 9, 3, 0.8, rho, 42);
      s.mean = {1.0, -2.0, 0.5};
      const UserDataset ds = generate(s);
      std::size_t bad = 0;
      for (std::size_t u = 0; u < ds.n; ++u) {
        for (std::size_t i = 0; i < ds.m; ++i) {
          if (squared_distance(ds.sample(u, i), s.mean) > s.r * s.r) ++bad;
        }
      }
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("point mass puts every sample on the user center") {
  DataSpec s = spec_for(Family::kPointMass, 15, 16, 4, 1.0, 2.0, 7);
  const UserDataset ds = generate(s);
  // Shift radius is rho r / sqrt(m) = 0.5 exactly, and all of a user's
  // samples coincide.
  for (std::size_t u = 0; u < ds.n; ++u) {
    const Point first(ds.sample(u, 0).begin(), ds.sample(u, 0).end());
    CHECK(l2_norm(first) == doctest::Approx(0.5).epsilon(1e-12));
    for (std::size_t i = 1; i < ds.m; ++i) {
      CHECK(Point(ds.sample(u, i).begin(), ds.sample(u, i).end()) == first);
    }
  }
}

TEST_CASE("rho zero centers every user on the mean") {
  DataSpec s = spec_for(Family::kPointMass, 5, 4, 2, 1.0, 0.0, 7);
  s.mean = {3.0, -1.0};
  const UserDataset ds = generate(s);
  for (double v : ds.data) CHECK((v == 3.0 || v == -1.0));
}

TEST_CASE("user means concentrate at the r over sqrt(m) scale") {
  DataSpec s = spec_for(Family::kUniformBall, 50, 100, 4, 1.0, 1.0, 11);
  const UserDataset ds = generate(s);
  const std::vector<Point> means = user_means(ds);
  // Shift is 0.1; sampling noise adds about r sqrt(d/m) /2 more. All user
  // means should sit within a few times r/sqrt(m) of the origin.
  for (const Point& mu : means) {
    CHECK(l2_norm(mu) < 6.0 / std::sqrt(100.0));
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(generate(spec_for(Family::kUniformBall, 0, 1, 1, 1, 0, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_for(Family::kUniformBall, 5, 4, 2, 1.0, 3.0, 1)),
                  std::invalid_argument);  // rho > sqrt(m)
  DataSpec wrong_mean = spec_for(Family::kUniformBall, 5, 4, 2, 1.0, 0.0, 1);
  wrong_mean.mean = {1.0};
  CHECK_THROWS_AS(generate(wrong_mean), std::invalid_argument);
  CHECK_THROWS_AS(generate(spec_for(Family::kDiscrete, 5, 4, 2, 1, 0, 1)),
                  std::invalid_argument);  // discrete needs generate_discrete
}

TEST_CASE("discrete draws follow the probabilities") {
  DataSpec s = spec_for(Family::kDiscrete, 100, 500, 3, 1.0, 0.0, 13);
  s.probs = {0.5, 0.3, 0.2};
  const DiscreteSamples cat = generate_discrete(s);
  CHECK_NOTHROW(cat.validate());
  std::vector<std::size_t> counts(3, 0);
  for (std::uint32_t c : cat.data) ++counts[c - 1];
  const double total = double(cat.data.size());
  for (std::size_t j = 0; j < 3; ++j) {
    const double expect = s.probs[j];
    const double se = testsupport::binomial_se(expect, cat.data.size());
    CHECK(std::abs(double(counts[j]) / total - expect) < 5.0 * se);
  }

  DataSpec bad = s;
  bad.rho = 0.5;
  CHECK_THROWS_AS(generate_discrete(bad), std::invalid_argument);
  bad = s;
  bad.probs = {0.5, 0.3};
  CHECK_THROWS_AS(generate_discrete(bad), std::invalid_argument);
  bad = s;
  bad.probs = {0.9, 0.3, 0.2};
  CHECK_THROWS_AS(generate_discrete(bad), std::invalid_argument);
}

TEST_CASE("generation is seed-deterministic") {
  const DataSpec s = spec_for(Family::kGaussianClipped, 8, 5, 3, 1.0, 0.5, 17);
  CHECK(generate(s).data == generate(s).data);
  DataSpec other = s;
  other.seed = 18;
  CHECK(generate(s).data != generate(other).data);
}

TEST_CASE("far cluster corruption") {
  DataSpec s = spec_for(Family::kUniformBall, 40, 6, 2, 1.0, 0.0, 19);
  UserDataset ds = generate(s);
  const UserDataset pristine = ds;

  AdversarySpec adv;
  adv.fraction = 0.25;
  adv.strategy = Adversary::kFarCluster;
  adv.target = {8.0, -8.0};
  adv.seed = 5;
  const std::vector<std::size_t> hit = corrupt(ds, adv);
  CHECK(hit.size() == 10);  // floor(0.25 * 40)
  for (std::size_t i = 1; i < hit.size(); ++i) CHECK(hit[i - 1] < hit[i]);

  std::size_t cursor = 0;
  for (std::size_t u = 0; u < ds.n; ++u) {
    const bool corrupted = cursor < hit.size() && hit[cursor] == u;
    if (corrupted) ++cursor;
    for (std::size_t i = 0; i < ds.m; ++i) {
      const auto got = ds.sample(u, i);
      const auto want = pristine.sample(u, i);
      if (corrupted) {
        CHECK(got[0] == 8.0);
        CHECK(got[1] == -8.0);
      } else {
        CHECK(Point(got.begin(), got.end()) ==
              Point(want.begin(), want.end()));
      }
    }
  }
}

TEST_CASE("mirror corruption reflects through the pre-attack mean") {
  DataSpec s = spec_for(Family::kUniformBall, 20, 4, 2, 1.0, 0.0, 23);
  s.mean = {2.0, 2.0};
  UserDataset ds = generate(s);
  const UserDataset pristine = ds;
  Point grand(2, 0.0);
  for (std::size_t idx = 0; idx < pristine.data.size(); idx += 2) {
    grand[0] += pristine.data[idx];
    grand[1] += pristine.data[idx + 1];
  }
  grand[0] /= double(pristine.n * pristine.m);
  grand[1] /= double(pristine.n * pristine.m);

  AdversarySpec adv;
  adv.fraction = 0.5;
  adv.strategy = Adversary::kMirror;
  adv.seed = 5;
  const std::vector<std::size_t> hit = corrupt(ds, adv);
  CHECK(hit.size() == 10);
  for (std::size_t u : hit) {
    for (std::size_t i = 0; i < ds.m; ++i) {
      const auto got = ds.sample(u, i);
      const auto orig = pristine.sample(u, i);
      CHECK(got[0] == doctest::Approx(2.0 * grand[0] - orig[0]));
      CHECK(got[1] == doctest::Approx(2.0 * grand[1] - orig[1]));
    }
  }
}

TEST_CASE("scatter corruption stays in its ball") {
  DataSpec s = spec_for(Family::kPointMass, 30, 3, 4, 1.0, 0.0, 29);
  UserDataset ds = generate(s);
  AdversarySpec adv;
  adv.fraction = 0.3;
  adv.strategy = Adversary::kScatter;
  adv.target = {1.0, 1.0, 1.0, 1.0};
  adv.scatter_radius = 2.5;
  adv.seed = 31;
  const std::vector<std::size_t> hit = corrupt(ds, adv);
  CHECK(hit.size() == 9);
  for (std::size_t u : hit) {
    for (std::size_t i = 0; i < ds.m; ++i) {
      CHECK(squared_distance(ds.sample(u, i), adv.target) <= 2.5 * 2.5);
    }
  }
}

TEST_CASE("zero fraction corrupts nothing") {
  DataSpec s = spec_for(Family::kUniformBall, 10, 3, 2, 1.0, 0.0, 37);
  UserDataset ds = generate(s);
  const UserDataset pristine = ds;
  AdversarySpec adv;
  adv.fraction = 0.0;
  CHECK(corrupt(ds, adv).empty());
  CHECK(ds.data == pristine.data);
  adv.fraction = 1.0;
  CHECK_THROWS_AS(corrupt(ds, adv), std::invalid_argument);
}

}  // TEST_SUITE
