// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cpwave/approx.hpp"
#include "cpwave/dct.hpp"
#include "cpwave/errors.hpp"
#include "cpwave/haar.hpp"
#include "test_support.hpp"

using namespace cpwave;
using cpwave::testing::path_of;

namespace {

// Orthonormal DCT-II straight from its definition.
std::vector<double> naive_dct2(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      sum += static_cast<long double>(x[i]) *
             std::cos(std::numbers::pi_v<long double> * (static_cast<long double>(i) + 0.5L) *
                      static_cast<long double>(k) / static_cast<long double>(n));
    }
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
    out[k] = scale * static_cast<double>(sum);
  }
  return out;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  RandomStream s(seed, n);
  std::vector<double> x(n);
  for (auto& v : x) v = s.normal();
  return x;
}

}  // namespace

TEST_CASE("constant signal maps to the DC coefficient") {
  for (std::size_t n : {1u, 2u, 16u, 256u}) {
    const auto c = dct2_forward(std::vector<double>(n, 1.5));
    CHECK(c[0] == doctest::Approx(1.5 * std::sqrt(static_cast<double>(n))).epsilon(1e-14));
    for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(c[k]) < 1e-13);
  }
}

TEST_CASE("fast transform matches the definition") {
  for (std::size_t n : {2u, 8u, 64u, 1024u}) {
    const auto x = random_vector(n, 51);
    const auto fast = dct2_forward(x);
    const auto slow = naive_dct2(x);
    for (std::size_t k = 0; k < n; ++k) REQUIRE(std::abs(fast[k] - slow[k]) < 1e-10);
  }
}

TEST_CASE("round trip and energy") {
  for (std::size_t n : {1u, 4u, 64u, 4096u}) {
    const auto x = random_vector(n, 52);
    const auto c = dct2_forward(x);
    const auto back = dct2_inverse(c);
    double ex = 0.0;
    double ec = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(std::abs(back[i] - x[i]) < 1e-12);
      ex += x[i] * x[i];
      ec += c[i] * c[i];
    }
    CHECK(std::abs(ex - ec) <= 1e-10 * ex);
  }
  SampledPath sp{random_vector(32, 53), 5, ProcessKind::kBrownian};
  const auto dc = dct2_forward(sp);
  CHECK(dc.grid_log2 == 5);
  const auto back = dct2_inverse(dc);
  for (std::size_t i = 0; i < 32; ++i) CHECK(back.values[i] == doctest::Approx(sp.values[i]));
}

TEST_CASE("invalid lengths") {
  CHECK_THROWS_AS(dct2_forward(std::vector<double>(12, 0.0)), InvalidParameter);
  CHECK_THROWS_AS(dct2_forward(std::vector<double>{}), InvalidParameter);
  CHECK_THROWS_AS(dct2_inverse(std::vector<double>(3, 0.0)), InvalidParameter);
}

TEST_CASE("best-M error") {
  const auto grid = sample_grid(path_of({0.3}, {1.0}), 10);
  CHECK(dct_best_m_error(grid, 1024) == 0.0);
  CHECK_THROWS_AS(dct_best_m_error(grid, 1025), InvalidParameter);
  SampledPath constant{std::vector<double>(64, -2.0), 6, ProcessKind::kCompoundPoisson};
  CHECK(dct_best_m_error(constant, 1) < 1e-28);

  double prev = INFINITY;
  for (std::size_t m = 0; m <= 1024; m += 16) {
    const double e = dct_best_m_error(grid, m);
    REQUIRE(e <= prev);
    prev = e;
  }

  // A single jump is sparse in Haar and spread out in cosines.
  const auto haar = discrete_haar_forward(grid.values);
  for (std::size_t m : {8u, 11u, 16u, 64u}) {
    const double h = select_best_discrete(haar, m).error_sq / 1024.0;
    CHECK(dct_best_m_error(grid, m) > h);
  }
}

TEST_CASE("grid energy approximates the path energy") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    RandomStream s(54, i);
    const double tau = 0.74 * s.uniform_open();
    const auto p = path_of({tau}, {s.normal()});
    for (int L : {6, 10, 14}) {
      const auto g = sample_grid(p, L);
      double e = 0.0;
      for (double v : g.values) e += v * v;
      e = std::ldexp(e, -L);
      const double exact = path_l2_norm_sq(p);
      REQUIRE(std::abs(e - exact) <= std::ldexp(exact, -L + 2));
    }
  }
}
