// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include "cpwave/theory.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "cpwave/errors.hpp"

namespace cpwave {

namespace {

void require_sigma(double sigma0_sq) {
  if (!(sigma0_sq > 0.0) || !std::isfinite(sigma0_sq)) {
    throw InvalidParameter("sigma0_sq must be positive and finite");
  }
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter("lambda must be positive and finite");
  }
}

}  // namespace

double linear_mse(std::uint64_t m, double sigma0_sq) {
  if (m < 1) throw InvalidParameter("linear_mse: M must be >= 1");
  require_sigma(sigma0_sq);
  const int j = 63 - std::countl_zero(m);
  const double pow_j = std::ldexp(1.0, j);
  const double rem = static_cast<double>(m - (std::uint64_t{1} << j));
  return sigma0_sq / 12.0 / pow_j * (2.0 - rem / pow_j);
}

double spacing_survival(std::uint64_t n, double delta, double interval_length) {
  if (n < 1) throw InvalidParameter("spacing_survival: n must be >= 1");
  if (!(interval_length > 0.0)) throw InvalidParameter("spacing_survival: interval must be positive");
  const double limit = interval_length / static_cast<double>(n);
  if (!(delta >= 0.0 && delta <= limit)) {
    throw DomainError("spacing_survival: delta " + std::to_string(delta) + " outside [0, " +
                      std::to_string(limit) + "]");
  }
  const double base = 1.0 - static_cast<double>(n) * delta / interval_length;
  return std::pow(std::max(0.0, base), static_cast<double>(n));
}

double poisson_pmf(std::uint64_t n, double lambda) {
  require_lambda(lambda);
  const double k = static_cast<double>(n);
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

SeriesValue expected_two_pow(double lambda, std::uint64_t m, double tol) {
  require_lambda(lambda);
  if (!(tol > 0.0)) throw InvalidParameter("expected_two_pow: tol must be positive");
  if (m == 0) return {1.0, 0.0, 0};
  const double log_mgf = lambda * (std::numbers::e - 1.0);
  const auto n_star =
      static_cast<std::uint64_t>(std::max(1.0, std::ceil(log_mgf - std::log(tol))));
  const double log_lambda = std::log(lambda);
  const double md = static_cast<double>(m);
  double sum = 0.0;
  double comp = 0.0;
  for (std::uint64_t n = 1; n <= n_star; ++n) {
    const double k = static_cast<double>(n);
    const double term = std::exp(k * log_lambda - lambda - std::lgamma(k + 1.0) -
                                 md / k * std::numbers::ln2);
    // Neumaier summation.
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return {sum + comp, std::exp(log_mgf - static_cast<double>(n_star)), n_star};
}

double envelope_c1(double lambda, double sigma0_sq) {
  require_lambda(lambda);
  require_sigma(sigma0_sq);
  if (lambda > kMaxEnvelopeLambda) {
    throw InvalidParameter("envelope constants overflow for lambda > 350; log-space evaluation "
                           "is not supported");
  }
  return sigma0_sq / (48.0 * std::numbers::e * lambda * (1.0 + std::exp(2.0 * lambda)));
}

double envelope_c2(double lambda, double sigma0_sq) {
  require_lambda(lambda);
  require_sigma(sigma0_sq);
  if (lambda > kMaxEnvelopeLambda) {
    throw InvalidParameter("envelope constants overflow for lambda > 350; log-space evaluation "
                           "is not supported");
  }
  return 2.0 * sigma0_sq / (3.0 * lambda) * (1.0 + std::exp(2.0 * lambda));
}

TheoryPoint theorem1_envelope(std::uint64_t m, double lambda, double sigma0_sq) {
  if (m < 1) throw InvalidParameter("theorem1_envelope: M must be >= 1");
  TheoryPoint p;
  p.m = m;
  p.c1 = envelope_c1(lambda, sigma0_sq);
  p.c2 = envelope_c2(lambda, sigma0_sq);
  p.linear_mse = linear_mse(m, sigma0_sq);
  const auto series = expected_two_pow(lambda, m);
  p.e2mn = series.value;
  p.e2mn_tail_bound = series.tail_bound;
  const double md = static_cast<double>(m);
  p.envelope_lo = p.c1 / md * p.e2mn;
  p.envelope_hi = p.c2 * md * p.e2mn;
  return p;
}

JmBounds jm_bounds(std::uint64_t m, std::uint64_t n, double delta) {
  if (m < 2) throw DomainError("jm_bounds: M must be >= 2");
  if (n < 1) throw DomainError("jm_bounds: N must be >= 1");
  const double limit = 1.0 / static_cast<double>(n);
  if (!(delta > 0.0 && delta <= limit * (1.0 + 1e-12))) {
    throw DomainError("jm_bounds: Delta must lie in (0, 1/N]");
  }
  JmBounds b;
  b.lower = static_cast<std::int64_t>((m - 2 + n - 1) / n);
  const double upper = static_cast<double>(m - 1) / static_cast<double>(n) + std::log2(1.0 / delta);
  b.upper = static_cast<std::int64_t>(std::floor(upper));
  return b;
}

double tail_linear_variance(int j, double sigma0_sq) {
  if (j < 0) throw InvalidParameter("tail_linear_variance: J must be >= 0");
  require_sigma(sigma0_sq);
  return sigma0_sq * std::ldexp(1.0, -(j + 1)) / 6.0;
}

std::vector<double> superpoly_probe(double lambda, int k, std::span<const std::uint64_t> m_values) {
  if (k < 0) throw InvalidParameter("superpoly_probe: k must be >= 0");
  std::vector<double> out;
  out.reserve(m_values.size());
  for (auto m : m_values) {
    out.push_back(std::pow(static_cast<double>(m), k) * expected_two_pow(lambda, m).value);
  }
  return out;
}

std::vector<double> subexp_probe(double lambda, double alpha,
                                 std::span<const std::uint64_t> m_values) {
  if (!(alpha > 0.0)) throw InvalidParameter("subexp_probe: alpha must be positive");
  std::vector<double> out;
  out.reserve(m_values.size());
  for (auto m : m_values) {
    const double e = expected_two_pow(lambda, m).value;
    out.push_back(std::exp(alpha * static_cast<double>(m) + std::log(e)));
  }
  return out;
}

}  // namespace cpwave
