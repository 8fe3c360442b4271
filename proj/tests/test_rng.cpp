// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "fadecast/errors.hpp"
#include "fadecast/rng.hpp"

using fadecast::rand_stream;
using fadecast::rng_stream;
using fadecast::splitmix64;

TEST_CASE("splitmix64 matches the published test vector") {
  // First three outputs of the reference implementation seeded with 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafull);
  CHECK(splitmix64(0x9e3779b97f4a7c15ull) == 0x6e789e6aa1b965f4ull);
  CHECK(splitmix64(2 * 0x9e3779b97f4a7c15ull) == 0x06c45d188009454full);
}

TEST_CASE("identical seed and stream reproduce the sequence") {
  rand_stream a(42, rng_stream::noise);
  rand_stream b(42, rng_stream::noise);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.uniform() == b.uniform());
  rand_stream c(42, rng_stream::noise);
  rand_stream d(42, rng_stream::noise);
  for (int i = 0; i < 1000; ++i) REQUIRE(c.normal() == d.normal());
}

TEST_CASE("different streams from one master seed are distinct") {
  rand_stream a(42, rng_stream::positions);
  rand_stream b(42, rng_stream::velocities);
  int equal = 0;
  for (int i = 0; i < 100; ++i)
    if (a.uniform() == b.uniform()) ++equal;
  CHECK(equal == 0);
}

TEST_CASE("different master seeds are distinct") {
  rand_stream a(1, rng_stream::noise);
  rand_stream b(2, rng_stream::noise);
  int equal = 0;
  for (int i = 0; i < 100; ++i)
    if (a.uniform() == b.uniform()) ++equal;
  CHECK(equal == 0);
}

TEST_CASE("uniform range and moments") {
  rand_stream rs(7, rng_stream::noise);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rs.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 0.005);
  CHECK(std::abs(var - 1.0 / 12.0) < 0.005);
}

TEST_CASE("standard normal moments") {
  rand_stream rs(11, rng_stream::noise);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rs.normal();
    sum += x;
    sum2 += x * x;
    sum4 += x * x * x * x;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);
  CHECK(std::abs(sum4 / n - 3.0) < 0.15);  // normal kurtosis
}

TEST_CASE("scaled normal draws") {
  rand_stream rs(3, rng_stream::noise);
  const double mu = 5.0, sigma2 = 9.0;
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rs.normal(mu, sigma2);
    sum += x;
    sum2 += (x - mu) * (x - mu);
  }
  CHECK(std::abs(sum / n - mu) < 0.03);
  CHECK(std::abs(sum2 / n - sigma2) < 0.1);
}

TEST_CASE("zero variance collapses exactly to the mean") {
  rand_stream rs(3, rng_stream::noise);
  for (int i = 0; i < 10; ++i) CHECK(rs.normal(1.25, 0.0) == 1.25);
}

TEST_CASE("negative variance is rejected") {
  rand_stream rs(3, rng_stream::noise);
  CHECK_THROWS_AS(rs.normal(0.0, -1.0), fadecast::config_error);
}

TEST_CASE("bounded draws stay in range and cover all values") {
  rand_stream rs(9, rng_stream::shuffle);
  std::vector<int> hits(10, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto v = rs.bounded(10);
    REQUIRE(v < 10);
    ++hits[static_cast<std::size_t>(v)];
  }
  for (const int h : hits) CHECK(h > 800);  // ~1000 expected per value
}

TEST_CASE("permutation is a bijection and deterministic") {
  rand_stream rs(5, rng_stream::shuffle);
  auto p = rs.permutation(257);
  auto sorted = p;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> iota(257);
  std::iota(iota.begin(), iota.end(), std::size_t{0});
  CHECK(sorted == iota);

  rand_stream rs2(5, rng_stream::shuffle);
  CHECK(rs2.permutation(257) == p);

  rand_stream rs3(5, rng_stream::shuffle);
  CHECK(rs3.permutation(0).empty());
  rand_stream rs4(5, rng_stream::shuffle);
  CHECK(rs4.permutation(1) == std::vector<std::size_t>{0});
}

TEST_CASE("permutation first element is roughly uniform") {
  rand_stream rs(17, rng_stream::shuffle);
  std::vector<int> hits(8, 0);
  for (int i = 0; i < 8000; ++i) ++hits[rs.permutation(8)[0]];
  for (const int h : hits) CHECK(h > 800);  // ~1000 expected
}
