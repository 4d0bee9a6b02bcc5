// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include "cpwave/levy_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cpwave/errors.hpp"

namespace cpwave {

std::string_view to_string(ProcessKind kind) {
  return kind == ProcessKind::kCompoundPoisson ? "cp" : "bm";
}

JumpLaw JumpLaw::gaussian(double variance) {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw InvalidParameter("jump law variance must be positive and finite, got " +
                           std::to_string(variance));
  }
  return JumpLaw(JumpLawKind::kGaussian, variance);
}

double JumpLaw::sample(RandomStream& stream) const {
  return std::sqrt(variance_) * stream.normal();
}

CompoundPoissonPath::CompoundPoissonPath(double lambda, JumpLaw law,
                                         std::vector<DyadicPoint> positions,
                                         std::vector<double> heights)
    : lambda_(lambda), law_(law), positions_(std::move(positions)), heights_(std::move(heights)) {
  if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) {
    throw InvalidParameter("path rate must be finite and non-negative");
  }
  if (positions_.size() != heights_.size()) {
    throw InvalidParameter("jump positions and heights differ in length");
  }
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (positions_[i].is_zero()) throw InvalidParameter("jump position must lie in (0, 1)");
    if (i > 0 && !(positions_[i - 1] < positions_[i])) {
      throw InvalidParameter("jump positions must be strictly increasing");
    }
    if (!std::isfinite(heights_[i])) throw InvalidParameter("jump height must be finite");
  }
}

CompoundPoissonPath CompoundPoissonPath::from_times(double lambda, JumpLaw law,
                                                    std::span<const double> times,
                                                    std::span<const double> heights) {
  std::vector<DyadicPoint> positions;
  positions.reserve(times.size());
  for (double t : times) {
    if (!(t > 0.0 && t < 1.0)) throw InvalidParameter("jump time must lie in (0, 1)");
    positions.push_back(DyadicPoint::from_double(t));
  }
  return CompoundPoissonPath(lambda, law, std::move(positions),
                             std::vector<double>(heights.begin(), heights.end()));
}

std::vector<double> CompoundPoissonPath::jump_times() const {
  std::vector<double> out;
  out.reserve(positions_.size());
  for (const auto& p : positions_) out.push_back(p.to_double());
  return out;
}

double CompoundPoissonPath::total_variation() const {
  double sum = 0.0;
  for (double a : heights_) sum += std::abs(a);
  return sum;
}

namespace {

std::uint64_t poisson_inversion(double lambda, RandomStream& stream) {
  const double u = stream.uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  std::uint64_t k = 0;
  // Past ~10 sd above the mean the remaining mass is below double resolution.
  const auto cap = static_cast<std::uint64_t>(lambda + 20.0 * std::sqrt(lambda) + 50.0);
  while (u >= cdf && k < cap) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::uint64_t poisson_ptrs(double lambda, RandomStream& stream) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = stream.uniform() - 0.5;
    const double v = stream.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t poisson_count(double lambda, RandomStream& stream) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter("Poisson rate must be finite and non-negative");
  }
  if (lambda == 0.0) return 0;
  return lambda <= 30.0 ? poisson_inversion(lambda, stream) : poisson_ptrs(lambda, stream);
}

std::vector<DyadicPoint> sorted_uniform_positions(std::size_t n, RandomStream& stream) {
  std::vector<DyadicPoint> positions(n);
  for (auto& p : positions) p = DyadicPoint::uniform(stream);
  for (;;) {
    std::sort(positions.begin(), positions.end());
    bool redrawn = false;
    for (std::size_t i = 0; i < n; ++i) {
      const bool collides = positions[i].is_zero() || (i > 0 && positions[i] == positions[i - 1]);
      if (collides) {
        positions[i] = DyadicPoint::uniform(stream);
        redrawn = true;
      }
    }
    if (!redrawn) return positions;
  }
}

CompoundPoissonPath sample_path(double lambda, const JumpLaw& law, RandomStream& stream) {
  if (!(lambda > 0.0)) throw InvalidParameter("compound Poisson rate must be positive");
  const auto n = static_cast<std::size_t>(poisson_count(lambda, stream));
  auto positions = sorted_uniform_positions(n, stream);
  std::vector<double> heights(n);
  for (auto& a : heights) a = law.sample(stream);
  return CompoundPoissonPath(lambda, law, std::move(positions), std::move(heights));
}

double eval(const CompoundPoissonPath& path, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("eval: t must lie in [0, 1]");
  const auto positions = path.positions();
  const auto heights = path.heights();
  std::size_t upto = positions.size();
  if (t < 1.0) {
    const DyadicPoint at = DyadicPoint::from_double(t);
    upto = static_cast<std::size_t>(
        std::upper_bound(positions.begin(), positions.end(), at) - positions.begin());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < upto; ++i) sum += heights[i];
  return sum;
}

double min_spacing(std::span<const DyadicPoint> sorted_positions) {
  if (sorted_positions.empty()) return 1.0;
  double delta = sorted_positions[0].to_double();
  for (std::size_t i = 1; i < sorted_positions.size(); ++i) {
    delta = std::min(delta, sorted_positions[i].minus(sorted_positions[i - 1]));
  }
  return delta;
}

double min_spacing(const CompoundPoissonPath& path) { return min_spacing(path.positions()); }

double path_l2_norm_sq(const CompoundPoissonPath& path) {
  const auto positions = path.positions();
  const auto heights = path.heights();
  const std::size_t n = positions.size();
  double value = 0.0;
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    value += heights[i];
    const double length =
        i + 1 < n ? positions[i + 1].minus(positions[i]) : positions[i].complement_to_double();
    energy += value * value * length;
  }
  return energy;
}

SampledPath sample_grid(const CompoundPoissonPath& path, int grid_log2) {
  if (grid_log2 < 1 || grid_log2 > kMaxGridLog2) {
    throw InvalidParameter("grid_log2 must lie in [1, " + std::to_string(kMaxGridLog2) + "]");
  }
  const std::size_t n = std::size_t{1} << grid_log2;
  SampledPath out;
  out.grid_log2 = grid_log2;
  out.origin = ProcessKind::kCompoundPoisson;
  out.values.resize(n);
  const auto positions = path.positions();
  const auto heights = path.heights();
  std::size_t next = 0;
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Grid point i / 2^L is the dyadic point whose first L bits spell i.
    std::array<std::uint64_t, DyadicPoint::kWords> w{};
    w[0] = static_cast<std::uint64_t>(i) << (64 - grid_log2);
    const DyadicPoint grid_point = DyadicPoint::from_words(w);
    while (next < positions.size() && positions[next] <= grid_point) value += heights[next++];
    out.values[i] = value;
  }
  return out;
}

SampledPath brownian_grid(double sigma0_sq, int grid_log2, RandomStream& stream) {
  if (!(sigma0_sq > 0.0) || !std::isfinite(sigma0_sq)) {
    throw InvalidParameter("sigma0_sq must be positive and finite");
  }
  if (grid_log2 < 1 || grid_log2 > kMaxGridLog2) {
    throw InvalidParameter("grid_log2 must lie in [1, " + std::to_string(kMaxGridLog2) + "]");
  }
  const std::size_t n = std::size_t{1} << grid_log2;
  const double step_sd = std::sqrt(std::ldexp(sigma0_sq, -grid_log2));
  SampledPath out;
  out.grid_log2 = grid_log2;
  out.origin = ProcessKind::kBrownian;
  out.values.resize(n);
  out.values[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) out.values[i] = out.values[i - 1] + step_sd * stream.normal();
  return out;
}

}  // namespace cpwave
