// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cpwave/errors.hpp"
#include "cpwave/haar.hpp"
#include "test_support.hpp"

using namespace cpwave;
using cpwave::testing::path_of;
using cpwave::testing::pieces_of;
using cpwave::testing::random_path;

namespace {

// Direct integral of the piecewise-constant path against psi_{j,k}.
double integral_against_psi(const CompoundPoissonPath& path, int j, std::uint64_t k) {
  const auto pc = pieces_of(path);
  const double h = std::ldexp(1.0, -j);
  const double a = static_cast<double>(k) * h;
  const double mid = a + 0.5 * h;
  const double b = a + h;
  const double amp = std::sqrt(std::ldexp(1.0, j));
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pc.edges.size(); ++i) {
    const double lo = pc.edges[i];
    const double hi = pc.edges[i + 1];
    const double pos = std::max(0.0, std::min(hi, mid) - std::max(lo, a));
    const double neg = std::max(0.0, std::min(hi, b) - std::max(lo, mid));
    sum += pc.values[i] * (pos - neg);
  }
  return amp * sum;
}

double integral_against_phi(const CompoundPoissonPath& path) {
  const auto pc = pieces_of(path);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < pc.edges.size(); ++i) {
    sum += pc.values[i] * (pc.edges[i + 1] - pc.edges[i]);
  }
  return sum;
}

double abs_sum(const CompoundPoissonPath& path) {
  double s = 0.0;
  for (double a : path.heights()) s += std::abs(a);
  return s;
}

}  // namespace

TEST_CASE("ind enumeration") {
  CHECK(ind(AtomId::scaling()) == 0);
  CHECK(ind(AtomId::wavelet(0, 0)) == 1);
  CHECK(ind(AtomId::wavelet(3, 5)) == 13);
  for (std::uint64_t i = 0; i <= (std::uint64_t{1} << 20); ++i) {
    const AtomId a = AtomId::from_ind(i);
    REQUIRE(ind(a) == i);
    if (i > 0) REQUIRE(AtomId::from_ind(i - 1) < a);
  }
  CHECK_THROWS_AS(AtomId::wavelet(2, 4), DomainError);
  CHECK_THROWS_AS(AtomId::wavelet(-1, 0), DomainError);
  const auto deep = AtomId::wavelet_containing(100, DyadicPoint::from_double(0.3));
  CHECK(deep.scale() == 100);
  CHECK_THROWS_AS(deep.shift(), DomainError);
  CHECK_THROWS_AS(ind(deep), DomainError);
}

TEST_CASE("auxiliary functions") {
  CHECK(phi_tilde(0.25) == 0.75);
  CHECK(psi_tilde(0, 0, 0.25) == -0.25);
  CHECK(psi_tilde(1, 1, 0.25) == 0.0);
  CHECK_THROWS_AS(phi_tilde(1.5), DomainError);
  CHECK_THROWS_AS(psi_tilde(0, 0, -0.1), DomainError);
  // Support and peak magnitude on a fine grid.
  for (int j = 0; j <= 6; ++j) {
    const double peak = std::pow(2.0, -0.5 * j - 1.0);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
      double observed_peak = 0.0;
      for (int i = 0; i <= 4096; ++i) {
        const double t = i / 4096.0;
        const double v = psi_tilde(j, k, t);
        observed_peak = std::max(observed_peak, std::abs(v));
        const double lo = std::ldexp(static_cast<double>(k), -j);
        const double hi = std::ldexp(static_cast<double>(k + 1), -j);
        if (t < lo || t >= hi) REQUIRE(v == 0.0);
      }
      CHECK(observed_peak == doctest::Approx(peak).epsilon(1e-12));
    }
  }
}

TEST_CASE("jumps_in_support uses half-open supports") {
  const auto empty = path_of({}, {});
  CHECK(jumps_in_support(empty, AtomId::wavelet(2, 1)) == 0);
  const auto p = path_of({0.3}, {1.0});
  CHECK(jumps_in_support(p, AtomId::wavelet(1, 0)) == 1);
  CHECK(jumps_in_support(p, AtomId::wavelet(1, 1)) == 0);
  CHECK(jumps_in_support(p, AtomId::scaling()) == 1);
  const auto edge = path_of({0.5}, {1.0});
  CHECK(jumps_in_support(edge, AtomId::wavelet(1, 0)) == 0);
  CHECK(jumps_in_support(edge, AtomId::wavelet(1, 1)) == 1);
}

TEST_CASE("coeff: hand values") {
  const auto p = path_of({0.25}, {1.0});
  CHECK(coeff(p, AtomId::wavelet(0, 0)).value == -0.25);
  CHECK(coeff(p, AtomId::scaling()).value == 0.75);
  const auto z = coeff(p, AtomId::wavelet(1, 1));
  CHECK(z.value == 0.0);
  CHECK(z.jump_count == 0);
}

TEST_CASE("coeff matches direct integration on random paths") {
  for (std::uint64_t i = 0; i < 40; ++i) {
    const auto p = random_path(10.0, 21, i);
    const double scale = std::max(abs_sum(p), 1e-300);
    CHECK(std::abs(coeff(p, AtomId::scaling()).value - integral_against_phi(p)) <= 1e-13 * scale);
    for (int j = 0; j <= 8; ++j) {
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
        const double want = integral_against_psi(p, j, k);
        const double got = coeff(p, AtomId::wavelet(j, k)).value;
        REQUIRE(std::abs(got - want) <= 1e-13 * scale);
      }
    }
  }
}

TEST_CASE("zero structure: value vanishes exactly when the support holds no jump") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto p = random_path(10.0, 22, i);
    for (int j = 0; j <= 10; ++j) {
      const auto level = nonzero_at_scale(p, j);
      std::size_t next = 0;
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) {
        const auto c = coeff(p, AtomId::wavelet(j, k));
        REQUIRE((c.value == 0.0) == (c.jump_count == 0));
        if (c.jump_count > 0) {
          REQUIRE(next < level.size());
          REQUIRE(level[next].atom == c.atom);
          REQUIRE(level[next].value == c.value);
          ++next;
        }
      }
      REQUIRE(next == level.size());
    }
  }
}

TEST_CASE("per-scale nonzero counts obey the spacing bounds") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto p = random_path(10.0, 23, i);
    const double n = static_cast<double>(p.jump_count());
    if (p.jump_count() == 0) continue;
    const double delta = min_spacing(p);
    for (int j = 1; j <= 40; ++j) {
      const double nj = static_cast<double>(nonzero_at_scale(p, j).size());
      REQUIRE(nj <= n);
      // A half-open cell of width h holds at most ceil(h / delta) jumps.
      const double per_cell = std::max(1.0, std::ceil(std::ldexp(1.0, -j) / delta * (1.0 - 1e-12)));
      REQUIRE(nj >= n / per_cell);
    }
  }
}

TEST_CASE("coeff_envelope bounds every coefficient") {
  CHECK(coeff_envelope(3, path_of({}, {})) == 0.0);
  CHECK(coeff_envelope(0, path_of({0.4}, {2.0})) == 1.0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto p = random_path(10.0, 24, i);
    for (int j = 0; j <= 60; j += 3) {
      const double env = coeff_envelope(j, p);
      REQUIRE(coeff_envelope(j + 1, p) <= env);
      for (const auto& c : nonzero_at_scale(p, j)) REQUIRE(std::abs(c.value) <= env);
    }
  }
}

TEST_CASE("energy_beyond_scale equals the energy not captured by coarser atoms") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto p = random_path(10.0, 25, i);
    const double total = path_l2_norm_sq(p);
    double captured = std::pow(coeff(p, AtomId::scaling()).value, 2);
    CHECK(energy_beyond_scale(p, -1) == doctest::Approx(total - captured).epsilon(1e-9));
    for (int j = 0; j <= 12; ++j) {
      for (const auto& c : nonzero_at_scale(p, j)) captured += c.value * c.value;
      const double tail = energy_beyond_scale(p, j);
      REQUIRE(tail >= 0.0);
      REQUIRE(std::abs(tail - (total - captured)) <= 1e-12 * std::max(total, 1e-300) + 1e-15);
    }
    // Deep tails keep relative precision: consecutive levels shrink by about half.
    if (p.jump_count() > 0) {
      const double t200 = energy_beyond_scale(p, 200);
      const double t201 = energy_beyond_scale(p, 201);
      CHECK(t200 > 0.0);
      CHECK(t201 > 0.0);
      CHECK(t201 < t200);
    }
  }
}

TEST_CASE("expand") {
  const auto empty = expand(path_of({}, {}), 5);
  for (double v : empty.dense()) CHECK(v == 0.0);
  CHECK_THROWS_AS(expand(path_of({}, {}), 31), InvalidParameter);
  CHECK_THROWS_AS(expand(path_of({}, {}), -1), InvalidParameter);

  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto p = random_path(10.0, 26, i);
    const auto e = expand(p, 10);
    CHECK(e.energy() <= path_l2_norm_sq(p) * (1.0 + 1e-12));
    const auto dense = e.dense();
    REQUIRE(dense.size() == 2048);
    for (std::uint64_t k = 0; k < dense.size(); k += 37) {
      CHECK(dense[k] == e.value_at(k));
      CHECK(dense[k] == coeff(p, AtomId::from_ind(k)).value);
    }
    for (std::size_t k = 1; k < e.nonzero().size(); ++k) {
      CHECK(e.nonzero()[k - 1].atom < e.nonzero()[k].atom);
    }
  }
}

TEST_CASE("expand: mean energy deficit at J = 12 matches the geometric tail") {
  const int paths = 10000;
  const int J = 12;
  double sum = 0.0;
  for (int i = 0; i < paths; ++i) {
    const auto p = random_path(10.0, 27, static_cast<std::uint64_t>(i));
    const auto e = expand(p, J);
    const double deficit = path_l2_norm_sq(p) - e.energy();
    REQUIRE(deficit >= -1e-12);
    REQUIRE(std::abs(deficit - energy_beyond_scale(p, J)) <= 1e-10);
    sum += energy_beyond_scale(p, J);
  }
  // Sum over j > J of 2^j * 2^{-2j} / 12.
  const double want = std::ldexp(1.0, -(J + 1)) / 6.0;
  CHECK(std::abs(sum / paths - want) < 0.1 * want);
}

TEST_CASE("discrete Haar transform") {
  const std::vector<double> ones{1, 1, 1, 1};
  const auto c = discrete_haar_forward(ones);
  CHECK(c[0] == doctest::Approx(2.0));
  for (std::size_t i = 1; i < 4; ++i) CHECK(c[i] == 0.0);
  const auto d = discrete_haar_forward(std::vector<double>{1, -1});
  CHECK(d[0] == doctest::Approx(0.0));
  CHECK(d[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(discrete_haar_forward(std::vector<double>{1, 2, 3}), InvalidParameter);
  CHECK_THROWS_AS(discrete_haar_inverse(std::vector<double>(6, 0.0)), InvalidParameter);

  RandomStream s(28, 0);
  for (std::size_t n : {1u, 2u, 8u, 1024u}) {
    std::vector<double> x(n);
    for (auto& v : x) v = s.normal();
    const auto f = discrete_haar_forward(x);
    const auto back = discrete_haar_inverse(f);
    double ex = 0.0;
    double ef = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(std::abs(back[i] - x[i]) < 1e-12);
      ex += x[i] * x[i];
      ef += f[i] * f[i];
    }
    CHECK(std::abs(ex - ef) <= 1e-10 * ex);
  }
}

TEST_CASE("discrete Haar on a fine grid approximates the analytic coefficients") {
  const int L = 16;
  const double root_n = std::sqrt(std::ldexp(1.0, L));
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto p = random_path(10.0, 29, i);
    const auto disc = discrete_haar_forward(sample_grid(p, L).values);
    const double tol = std::ldexp(abs_sum(p), -12);
    CHECK(std::abs(disc[0] / root_n - coeff(p, AtomId::scaling()).value) <= tol);
    for (std::uint64_t k = 1; k < 1024; ++k) {
      REQUIRE(std::abs(disc[k] / root_n - coeff(p, AtomId::from_ind(k)).value) <= tol);
    }
  }
}
