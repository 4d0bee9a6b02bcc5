// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cpwave/dyadic.hpp"
#include "cpwave/random.hpp"

namespace cpwave {

enum class ProcessKind { kCompoundPoisson, kBrownian };

std::string_view to_string(ProcessKind kind);

enum class JumpLawKind { kGaussian };

/// Distribution of jump heights. Always zero mean and absolutely continuous.
class JumpLaw {
 public:
  /// Zero-mean Gaussian; throws InvalidParameter unless variance > 0.
  static JumpLaw gaussian(double variance);

  JumpLawKind kind() const { return kind_; }
  double variance() const { return variance_; }

  double sample(RandomStream& stream) const;

  friend bool operator==(const JumpLaw&, const JumpLaw&) = default;

 private:
  JumpLaw(JumpLawKind kind, double variance) : kind_(kind), variance_(variance) {}

  JumpLawKind kind_;
  double variance_;
};

/// Exact compound Poisson trajectory on [0, 1]:
/// s(t) = sum of heights[i] over jumps with position[i] <= t.
class CompoundPoissonPath {
 public:
  /// Validates ordering (strictly increasing, inside (0, 1)) and lengths.
  CompoundPoissonPath(double lambda, JumpLaw law, std::vector<DyadicPoint> positions,
                      std::vector<double> heights);

  /// Convenience for hand-built paths with double-precision jump times.
  static CompoundPoissonPath from_times(double lambda, JumpLaw law,
                                        std::span<const double> times,
                                        std::span<const double> heights);

  double lambda() const { return lambda_; }
  const JumpLaw& law() const { return law_; }
  std::size_t jump_count() const { return positions_.size(); }
  std::span<const DyadicPoint> positions() const { return positions_; }
  std::span<const double> heights() const { return heights_; }

  /// Jump times rounded to double.
  std::vector<double> jump_times() const;

  /// Sum of |heights|.
  double total_variation() const;

 private:
  double lambda_;
  JumpLaw law_;
  std::vector<DyadicPoint> positions_;
  std::vector<double> heights_;
};

/// Samples on the grid i / 2^grid_log2, i = 0 .. 2^grid_log2 - 1.
struct SampledPath {
  std::vector<double> values;
  int grid_log2 = 0;
  ProcessKind origin = ProcessKind::kCompoundPoisson;
};

inline constexpr int kMaxGridLog2 = 24;

/// N ~ Poisson(lambda). Sequential inversion for lambda <= 30, otherwise
/// Hoermann's transformed rejection (PTRS).
std::uint64_t poisson_count(double lambda, RandomStream& stream);

/// n sorted i.i.d. uniform positions in (0, 1); colliding draws are redrawn.
std::vector<DyadicPoint> sorted_uniform_positions(std::size_t n, RandomStream& stream);

CompoundPoissonPath sample_path(double lambda, const JumpLaw& law, RandomStream& stream);

/// Right-continuous evaluation; throws DomainError outside [0, 1].
double eval(const CompoundPoissonPath& path, double t);

/// Minimum gap between consecutive jumps, with 0 as a virtual first jump;
/// 1 when there are no jumps.
double min_spacing(const CompoundPoissonPath& path);
double min_spacing(std::span<const DyadicPoint> sorted_positions);

/// Exact integral of s(t)^2 over [0, 1].
double path_l2_norm_sq(const CompoundPoissonPath& path);

SampledPath sample_grid(const CompoundPoissonPath& path, int grid_log2);

/// Brownian motion with variance sigma0_sq at t = 1, sampled through
/// cumulative Gaussian increments of variance sigma0_sq * 2^-grid_log2.
SampledPath brownian_grid(double sigma0_sq, int grid_log2, RandomStream& stream);

}  // namespace cpwave
