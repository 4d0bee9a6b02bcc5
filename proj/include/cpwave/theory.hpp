// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cpwave {

/// Expected squared error of the M-term linear Haar approximation of any
/// finite-variance Levy process on [0, 1]:
///   (sigma0^2 / 12) 2^-J (2 - m 2^-J),  J = floor(log2 M), m = M - 2^J.
double linear_mse(std::uint64_t m, double sigma0_sq);

/// P(Delta >= delta | N = n) = (1 - n delta / L)^n on an interval of length L.
/// delta must lie in [0, L / n].
double spacing_survival(std::uint64_t n, double delta, double interval_length = 1.0);

/// Poisson(lambda) probability mass at n, evaluated in log space.
double poisson_pmf(std::uint64_t n, double lambda);

struct SeriesValue {
  double value = 0.0;
  /// Certified bound on the truncated remainder.
  double tail_bound = 0.0;
  std::uint64_t terms = 0;
};

/// E[2^{-M/N}] for N ~ Poisson(lambda), with the N = 0 term read as 0 for
/// M >= 1 and as 1 for M = 0. The series stops at the first n* with
/// e^{lambda(e-1)} e^{-n*} <= tol (a Chernoff bound on P(N > n*)).
SeriesValue expected_two_pow(double lambda, std::uint64_t m, double tol = 1e-300);

/// Closed-form quantities at one M for the greedy-error envelope
///   C1 M^-1 E[2^{-M/N}] <= MSE_greedy <= C2 M E[2^{-M/N}].
struct TheoryPoint {
  std::uint64_t m = 0;
  double linear_mse = 0.0;
  double e2mn = 0.0;
  double e2mn_tail_bound = 0.0;
  double envelope_lo = 0.0;
  double envelope_hi = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

inline constexpr double kMaxEnvelopeLambda = 350.0;

double envelope_c1(double lambda, double sigma0_sq);
double envelope_c2(double lambda, double sigma0_sq);

/// Throws InvalidParameter for lambda > 350, where e^{2 lambda} overflows.
TheoryPoint theorem1_envelope(std::uint64_t m, double lambda, double sigma0_sq);

struct JmBounds {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

/// ceil((M-2)/N) <= J_M <= floor((M-1)/N + log2(1/Delta)).
JmBounds jm_bounds(std::uint64_t m, std::uint64_t n, double delta);

/// Expected energy of all wavelet coefficients above scale J:
/// sigma0^2 2^-(J+1) / 6.
double tail_linear_variance(int j, double sigma0_sq);

/// M^k E[2^{-M/N}] for each M.
std::vector<double> superpoly_probe(double lambda, int k, std::span<const std::uint64_t> m_values);

/// e^{alpha M} E[2^{-M/N}] for each M, evaluated in log space.
std::vector<double> subexp_probe(double lambda, double alpha,
                                 std::span<const std::uint64_t> m_values);

}  // namespace cpwave
