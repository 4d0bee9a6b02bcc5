// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "cpwave/dyadic.hpp"
#include "cpwave/levy_sim.hpp"

namespace cpwave {

enum class AtomKind : std::uint8_t { kScaling = 0, kWavelet = 1 };

/// One element of the Haar basis of L2([0, 1]): the scaling function
/// phi = 1_[0,1], or psi_{j,k} = 2^{j/2} psi(2^j t - k).
///
/// The shift is held as the left end of the support so that atoms at scales
/// beyond 63 (reached by sparse selections) remain representable. Ordering
/// follows the enumeration Ind(phi) = 0, Ind(psi_{j,k}) = 2^j + k.
class AtomId {
 public:
  static AtomId scaling() { return AtomId(); }
  /// Requires 0 <= scale <= 63 and 0 <= shift < 2^scale.
  static AtomId wavelet(int scale, std::uint64_t shift);
  /// The scale-j atom whose support contains `point`.
  static AtomId wavelet_containing(int scale, const DyadicPoint& point);
  /// Inverse of ind().
  static AtomId from_ind(std::uint64_t ind);

  bool is_scaling() const { return kind_ == AtomKind::kScaling; }
  AtomKind kind() const { return kind_; }
  /// Scale j; 0 for the scaling atom.
  int scale() const { return scale_; }
  /// k; throws DomainError for scales above 63.
  std::uint64_t shift() const;
  /// Left end of the support (0 for the scaling atom).
  const DyadicPoint& origin() const { return origin_; }

  friend std::strong_ordering operator<=>(const AtomId& a, const AtomId& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.scale_ <=> b.scale_; c != 0) return c;
    return a.origin_ <=> b.origin_;
  }
  friend bool operator==(const AtomId&, const AtomId&) = default;

 private:
  AtomId() = default;

  AtomKind kind_ = AtomKind::kScaling;
  int scale_ = 0;
  DyadicPoint origin_;
};

/// Ind(phi) = 0, Ind(psi_{j,k}) = 2^j + k. Throws DomainError above scale 63.
std::uint64_t ind(const AtomId& atom);

struct WaveletCoefficient {
  AtomId atom;
  double value = 0.0;
  /// Jumps inside the support; N for the scaling atom.
  std::size_t jump_count = 0;
};

/// (1 - t) on [0, 1].
double phi_tilde(double t);

/// Antiderivative-type companion of psi_{j,k}: <s, psi_{j,k}> equals the sum
/// of a_i * psi_tilde_{j,k}(tau_i) over the jumps of s. Requires j <= 63.
double psi_tilde(int scale, std::uint64_t shift, double t);

/// Number of jumps in the half-open support [k 2^-j, (k+1) 2^-j).
std::size_t jumps_in_support(const CompoundPoissonPath& path, const AtomId& atom);

/// Exact coefficient <s, atom> evaluated through the jump representation.
WaveletCoefficient coeff(const CompoundPoissonPath& path, const AtomId& atom);

/// All coefficients of scale `scale` whose support holds at least one jump,
/// in shift order. Every other coefficient of that scale is exactly zero.
std::vector<WaveletCoefficient> nonzero_at_scale(const CompoundPoissonPath& path, int scale);

/// Squared L2 distance between s and its projection on functions constant on
/// the dyadic cells of size 2^-(scale+1): the energy of all wavelet
/// coefficients of scale > `scale`. scale = -1 drops every wavelet term.
/// Computed cell by cell from jump offsets, so it keeps full relative
/// precision however small it is.
double energy_beyond_scale(const CompoundPoissonPath& path, int scale);

/// (sum_i |a_i|) 2^{-j/2-1}: bounds |<s, psi_{j,k}>| for every k at scale j.
double coeff_envelope(int scale, const CompoundPoissonPath& path);

inline constexpr int kMaxExpansionScale = 30;

/// Coefficients of scale <= max_scale. Only atoms whose support holds a jump
/// are stored; the rest are zero and reported as such by the accessors.
class Expansion {
 public:
  Expansion(const CompoundPoissonPath& path, int max_scale);

  int max_scale() const { return max_scale_; }
  double lambda() const { return lambda_; }
  double sigma0_sq() const { return sigma0_sq_; }

  const WaveletCoefficient& scaling() const { return scaling_; }
  /// Nonzero wavelet coefficients in Ind order.
  std::span<const WaveletCoefficient> nonzero() const { return nonzero_; }

  /// Value at Ind position; zero for atoms without a jump in their support.
  double value_at(std::uint64_t ind) const;

  /// Dense vector of all 2^(max_scale+1) values, in Ind order.
  std::vector<double> dense() const;

  /// Sum of squares of all stored values.
  double energy() const;

 private:
  int max_scale_;
  double lambda_;
  double sigma0_sq_;
  WaveletCoefficient scaling_;
  std::vector<WaveletCoefficient> nonzero_;
};

Expansion expand(const CompoundPoissonPath& path, int max_scale);

/// Orthonormal discrete Haar transform; output in Ind order
/// [scaling, (0,0), (1,0), (1,1), ...]. Length must be a power of two.
std::vector<double> discrete_haar_forward(std::span<const double> samples);
std::vector<double> discrete_haar_inverse(std::span<const double> coeffs);

}  // namespace cpwave
