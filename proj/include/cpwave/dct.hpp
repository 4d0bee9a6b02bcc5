// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cpwave/levy_sim.hpp"

namespace cpwave {

struct DctCoeffs {
  std::vector<double> values;
  int grid_log2 = 0;
};

/// Orthonormal DCT-II:
///   X_k = c_k sum_n x_n cos(pi (n + 1/2) k / n_total),
///   c_0 = sqrt(1/n_total), c_k = sqrt(2/n_total).
/// Length must be a power of two.
std::vector<double> dct2_forward(std::span<const double> samples);
/// Orthonormal DCT-III, the inverse of dct2_forward.
std::vector<double> dct2_inverse(std::span<const double> coeffs);

DctCoeffs dct2_forward(const SampledPath& samples);
SampledPath dct2_inverse(const DctCoeffs& coeffs);

/// Energy outside the M largest DCT coefficients, divided by the sample
/// count so that it estimates an L2([0, 1]) squared error.
double dct_best_m_error(const SampledPath& samples, std::size_t m);

}  // namespace cpwave
