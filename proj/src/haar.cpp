// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include "cpwave/haar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "cpwave/errors.hpp"

namespace cpwave {

namespace {

// 2^{-j/2}
double inv_sqrt_pow2(int scale) {
  return std::ldexp(scale % 2 == 0 ? 1.0 : std::numbers::sqrt2 / 2.0, -(scale / 2));
}

void require_scale(int scale) {
  if (scale < 0 || scale > DyadicPoint::kMaxScale) {
    throw DomainError("scale " + std::to_string(scale) + " outside [0, " +
                      std::to_string(DyadicPoint::kMaxScale) + "]");
  }
}

// psi_tilde_{j,k}(tau) for a jump known to lie in the support of psi_{j,k}.
double psi_tilde_in_cell(int scale, const DyadicPoint& position) {
  const bool first_half = (position.bits(scale) >> 63) == 0;
  const double g = first_half ? -position.offset_in_cell(scale) : -position.offset_complement(scale);
  return inv_sqrt_pow2(scale) * g;
}

template <typename Fn>
void for_each_cell(const CompoundPoissonPath& path, int level, Fn&& fn) {
  const auto positions = path.positions();
  std::size_t begin = 0;
  while (begin < positions.size()) {
    std::size_t end = begin + 1;
    while (end < positions.size() && positions[end].same_cell(positions[begin], level)) ++end;
    fn(begin, end);
    begin = end;
  }
}

}  // namespace

AtomId AtomId::wavelet(int scale, std::uint64_t shift) {
  if (scale < 0 || scale > 63) throw DomainError("AtomId::wavelet: scale must lie in [0, 63]");
  if (shift >= (std::uint64_t{1} << scale)) {
    throw DomainError("AtomId::wavelet: shift must lie in [0, 2^scale)");
  }
  AtomId a;
  a.kind_ = AtomKind::kWavelet;
  a.scale_ = scale;
  std::array<std::uint64_t, DyadicPoint::kWords> w{};
  if (scale > 0) w[0] = shift << (64 - scale);
  a.origin_ = DyadicPoint::from_words(w);
  return a;
}

AtomId AtomId::wavelet_containing(int scale, const DyadicPoint& point) {
  require_scale(scale);
  AtomId a;
  a.kind_ = AtomKind::kWavelet;
  a.scale_ = scale;
  a.origin_ = point.cell_origin(scale);
  return a;
}

AtomId AtomId::from_ind(std::uint64_t index) {
  if (index == 0) return scaling();
  const int scale = 63 - std::countl_zero(index);
  return wavelet(scale, index - (std::uint64_t{1} << scale));
}

std::uint64_t AtomId::shift() const {
  if (scale_ > 63) throw DomainError("AtomId::shift: scale above 63 has no 64-bit shift");
  if (kind_ == AtomKind::kScaling || scale_ == 0) return 0;
  return origin_.words()[0] >> (64 - scale_);
}

std::uint64_t ind(const AtomId& atom) {
  if (atom.is_scaling()) return 0;
  if (atom.scale() > 63) throw DomainError("ind: scale above 63 overflows 64 bits");
  return (std::uint64_t{1} << atom.scale()) + atom.shift();
}

double phi_tilde(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("phi_tilde: t must lie in [0, 1]");
  return 1.0 - t;
}

double psi_tilde(int scale, std::uint64_t shift, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("psi_tilde: t must lie in [0, 1]");
  if (scale < 0 || scale > 63 || shift >= (std::uint64_t{1} << scale)) {
    throw DomainError("psi_tilde: invalid (scale, shift)");
  }
  const double width = std::ldexp(1.0, -scale);
  const double left = static_cast<double>(shift) * width;
  const double mid = left + 0.5 * width;
  const double right = left + width;
  const double amp = std::ldexp(scale % 2 == 0 ? 1.0 : std::numbers::sqrt2, scale / 2);
  if (t >= left && t < mid) return amp * (left - t);
  if (t >= mid && t < right) return amp * (t - right);
  return 0.0;
}

std::size_t jumps_in_support(const CompoundPoissonPath& path, const AtomId& atom) {
  if (atom.is_scaling()) return path.jump_count();
  const auto positions = path.positions();
  auto it = std::lower_bound(positions.begin(), positions.end(), atom.origin());
  std::size_t count = 0;
  for (; it != positions.end() && it->same_cell(atom.origin(), atom.scale()); ++it) ++count;
  return count;
}

WaveletCoefficient coeff(const CompoundPoissonPath& path, const AtomId& atom) {
  const auto positions = path.positions();
  const auto heights = path.heights();
  WaveletCoefficient out{atom, 0.0, 0};
  if (atom.is_scaling()) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
      out.value += heights[i] * positions[i].complement_to_double();
    }
    out.jump_count = positions.size();
    return out;
  }
  require_scale(atom.scale());
  auto first = std::lower_bound(positions.begin(), positions.end(), atom.origin());
  auto i = static_cast<std::size_t>(first - positions.begin());
  double sum = 0.0;
  for (; i < positions.size() && positions[i].same_cell(atom.origin(), atom.scale()); ++i) {
    sum += heights[i] * psi_tilde_in_cell(atom.scale(), positions[i]);
    ++out.jump_count;
  }
  out.value = sum;
  return out;
}

std::vector<WaveletCoefficient> nonzero_at_scale(const CompoundPoissonPath& path, int scale) {
  require_scale(scale);
  const auto positions = path.positions();
  const auto heights = path.heights();
  std::vector<WaveletCoefficient> out;
  for_each_cell(path, scale, [&](std::size_t begin, std::size_t end) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      sum += heights[i] * psi_tilde_in_cell(scale, positions[i]);
    }
    out.push_back({AtomId::wavelet_containing(scale, positions[begin]), sum, end - begin});
  });
  return out;
}

double energy_beyond_scale(const CompoundPoissonPath& path, int scale) {
  if (scale < -1) throw DomainError("energy_beyond_scale: scale must be >= -1");
  const int level = scale + 1;
  require_scale(level);
  const auto positions = path.positions();
  const auto heights = path.heights();
  double total = 0.0;
  // Inside one cell, s minus its value at the cell's left end is
  // sum_i a_i 1[x >= u_i] in cell coordinates x in [0, 1); its variance is
  // sum_i a_i^2 u_i (1 - u_i) + 2 sum_{i<l} a_i a_l u_i (1 - u_l).
  for_each_cell(path, level, [&](std::size_t begin, std::size_t end) {
    double diag = 0.0;
    double cross = 0.0;
    double prefix = 0.0;  // sum_{i<l} a_i u_i
    for (std::size_t l = begin; l < end; ++l) {
      const double u = positions[l].offset_in_cell(level);
      const double v = positions[l].offset_complement(level);
      const double a = heights[l];
      diag += a * a * u * v;
      cross += a * v * prefix;
      prefix += a * u;
    }
    total += diag + 2.0 * cross;
  });
  return std::max(0.0, std::ldexp(total, -level));
}

double coeff_envelope(int scale, const CompoundPoissonPath& path) {
  if (scale < 0) throw DomainError("coeff_envelope: scale must be >= 0");
  return path.total_variation() * 0.5 * inv_sqrt_pow2(scale);
}

Expansion::Expansion(const CompoundPoissonPath& path, int max_scale)
    : max_scale_(max_scale),
      lambda_(path.lambda()),
      sigma0_sq_(path.lambda() * path.law().variance()),
      scaling_(coeff(path, AtomId::scaling())) {
  if (max_scale < 0) throw InvalidParameter("expansion max_scale must be >= 0");
  if (max_scale > kMaxExpansionScale) {
    throw InvalidParameter("expansion max_scale above " + std::to_string(kMaxExpansionScale) +
                           " would need a dense vector beyond 2^31 entries");
  }
  nonzero_.reserve(path.jump_count() * static_cast<std::size_t>(max_scale + 1));
  for (int j = 0; j <= max_scale; ++j) {
    auto level = nonzero_at_scale(path, j);
    nonzero_.insert(nonzero_.end(), level.begin(), level.end());
  }
}

double Expansion::value_at(std::uint64_t index) const {
  if (index == 0) return scaling_.value;
  const AtomId atom = AtomId::from_ind(index);
  if (atom.scale() > max_scale_) throw DomainError("Expansion::value_at: beyond max_scale");
  auto it = std::lower_bound(nonzero_.begin(), nonzero_.end(), atom,
                             [](const WaveletCoefficient& c, const AtomId& a) { return c.atom < a; });
  return (it != nonzero_.end() && it->atom == atom) ? it->value : 0.0;
}

std::vector<double> Expansion::dense() const {
  std::vector<double> out(std::size_t{1} << (max_scale_ + 1), 0.0);
  out[0] = scaling_.value;
  for (const auto& c : nonzero_) out[ind(c.atom)] = c.value;
  return out;
}

double Expansion::energy() const {
  double sum = scaling_.value * scaling_.value;
  for (const auto& c : nonzero_) sum += c.value * c.value;
  return sum;
}

Expansion expand(const CompoundPoissonPath& path, int max_scale) {
  return Expansion(path, max_scale);
}

namespace {

void require_power_of_two(std::size_t n, const char* what) {
  if (n == 0 || !std::has_single_bit(n)) {
    throw InvalidParameter(std::string(what) + ": length " + std::to_string(n) +
                           " is not a power of two");
  }
}

}  // namespace

std::vector<double> discrete_haar_forward(std::span<const double> samples) {
  require_power_of_two(samples.size(), "discrete_haar_forward");
  const double r = std::numbers::sqrt2 / 2.0;
  std::vector<double> out(samples.size());
  std::vector<double> approx(samples.begin(), samples.end());
  for (std::size_t len = samples.size(); len > 1; len /= 2) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) {
      const double a = approx[2 * i];
      const double b = approx[2 * i + 1];
      out[half + i] = (a - b) * r;
      approx[i] = (a + b) * r;
    }
  }
  out[0] = approx[0];
  return out;
}

std::vector<double> discrete_haar_inverse(std::span<const double> coeffs) {
  require_power_of_two(coeffs.size(), "discrete_haar_inverse");
  const double r = std::numbers::sqrt2 / 2.0;
  std::vector<double> approx(coeffs.size());
  std::vector<double> next(coeffs.size());
  approx[0] = coeffs[0];
  for (std::size_t half = 1; half < coeffs.size(); half *= 2) {
    for (std::size_t i = 0; i < half; ++i) {
      const double s = approx[i];
      const double d = coeffs[half + i];
      next[2 * i] = (s + d) * r;
      next[2 * i + 1] = (s - d) * r;
    }
    std::copy_n(next.begin(), 2 * half, approx.begin());
  }
  return approx;
}

}  // namespace cpwave
