#include <set>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "userdp/random.hpp"

using userdp::RandomStream;
using userdp::derive_seed;

TEST_SUITE("random") {

TEST_CASE("identical seeds give identical streams") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 2000; ++i) REQUIRE(a.next_u64() == b.next_u64());
  RandomStream c(43);
  bool differs = false;
  RandomStream a2(42);
  for (int i = 0; i < 64 && !differs; ++i) differs = a2.next_u64() != c.next_u64();
  CHECK(differs);
}

TEST_CASE("uniform ranges") {
  RandomStream rng(7);
  std::size_t bad = 0;
  for (int i = 0; i < 200000; ++i) {
    const double u = rng.uniform();
    const double v = rng.uniform_open();
    if (!(u >= 0.0 && u < 1.0)) ++bad;
    if (!(v > 0.0 && v < 1.0)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("uniform moments") {
  RandomStream rng(11);
  std::vector<double> xs(200000);
  for (double& x : xs) x = rng.uniform();
  CHECK(std::abs(testsupport::mean(xs) - 0.5) < 0.004);        // se ~ 0.00065
  CHECK(std::abs(testsupport::variance(xs) - 1.0 / 12) < 0.003);
}

TEST_CASE("gaussian moments") {
  RandomStream rng(13);
  std::vector<double> xs(200000);
  for (double& x : xs) x = rng.gaussian();
  CHECK(std::abs(testsupport::mean(xs)) < 0.012);      // se ~ 0.0022
  CHECK(std::abs(testsupport::variance(xs) - 1.0) < 0.02);
}

TEST_CASE("uniform_index bounds and balance") {
  RandomStream rng(17);
  std::vector<std::size_t> counts(10, 0);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t k = rng.uniform_index(10);
    REQUIRE(k < 10);
    ++counts[k];
  }
  for (std::size_t c : counts) {
    CHECK(c > 10000 - 475);  // 5 sigma
    CHECK(c < 10000 + 475);
  }
  CHECK(rng.uniform_index(1) == 0);
}

TEST_CASE("derive_seed separates paths") {
  std::set<std::uint64_t> seen;
  seen.insert(derive_seed(1, {0}));
  seen.insert(derive_seed(1, {1}));
  seen.insert(derive_seed(2, {0}));
  seen.insert(derive_seed(1, {0, 0}));
  seen.insert(derive_seed(1, {0, 1}));
  seen.insert(derive_seed(1, {1, 0}));
  seen.insert(derive_seed(1, {}));
  CHECK(seen.size() == 7);
  CHECK(derive_seed(99, {3, 4}) == derive_seed(99, {3, 4}));
}

}  // TEST_SUITE
