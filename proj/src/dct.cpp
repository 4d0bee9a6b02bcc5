// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include "cpwave/dct.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "cpwave/approx.hpp"
#include "cpwave/errors.hpp"

namespace cpwave {

namespace {

void require_power_of_two(std::size_t n, const char* what) {
  if (n == 0 || !std::has_single_bit(n)) {
    throw InvalidParameter(std::string(what) + ": length " + std::to_string(n) +
                           " is not a power of two");
  }
}

// FFTW planning is not thread-safe; execution with the new-array interface is.
fftw_plan cached_plan(std::size_t n, fftw_r2r_kind kind) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard lock(mutex);
  auto& plan = plans[{n, static_cast<int>(kind)}];
  if (plan == nullptr) {
    std::vector<double> in(n), out(n);
    plan = fftw_plan_r2r_1d(static_cast<int>(n), in.data(), out.data(), kind,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw InvariantViolation("FFTW failed to create a DCT plan");
  }
  return plan;
}

}  // namespace

std::vector<double> dct2_forward(std::span<const double> samples) {
  const std::size_t n = samples.size();
  require_power_of_two(n, "dct2_forward");
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<double> out(n);
  if (n == 1) return in;
  fftw_execute_r2r(cached_plan(n, FFTW_REDFT10), in.data(), out.data());
  // FFTW's REDFT10 is 2 sum_n x_n cos(...).
  const double c0 = std::sqrt(1.0 / static_cast<double>(n)) / 2.0;
  const double ck = std::sqrt(2.0 / static_cast<double>(n)) / 2.0;
  out[0] *= c0;
  for (std::size_t k = 1; k < n; ++k) out[k] *= ck;
  return out;
}

std::vector<double> dct2_inverse(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  require_power_of_two(n, "dct2_inverse");
  std::vector<double> in(coeffs.begin(), coeffs.end());
  std::vector<double> out(n);
  if (n == 1) return in;
  // REDFT01 computes y_j = X_0 + 2 sum_{k>=1} X_k cos(...).
  in[0] *= std::sqrt(1.0 / static_cast<double>(n));
  const double ck = std::sqrt(2.0 / static_cast<double>(n)) / 2.0;
  for (std::size_t k = 1; k < n; ++k) in[k] *= ck;
  fftw_execute_r2r(cached_plan(n, FFTW_REDFT01), in.data(), out.data());
  return out;
}

DctCoeffs dct2_forward(const SampledPath& samples) {
  return {dct2_forward(std::span<const double>(samples.values)), samples.grid_log2};
}

SampledPath dct2_inverse(const DctCoeffs& coeffs) {
  SampledPath out;
  out.values = dct2_inverse(std::span<const double>(coeffs.values));
  out.grid_log2 = coeffs.grid_log2;
  return out;
}

double dct_best_m_error(const SampledPath& samples, std::size_t m) {
  const auto coeffs = dct2_forward(std::span<const double>(samples.values));
  if (m > coeffs.size()) {
    throw InvalidParameter("dct_best_m_error: M exceeds the number of samples");
  }
  return select_best_discrete(coeffs, m).error_sq / static_cast<double>(coeffs.size());
}

}  // namespace cpwave
