// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <cstdint>

namespace cpwave {

class RandomStream;

/// A point of [0, 1) held as a 512-bit binary fraction.
///
/// Jump locations are stored this way so that dyadic questions (which cell
/// of scale j holds the point, where inside that cell it sits) have exact
/// answers down to scale kMaxScale. A double-precision location is itself a
/// dyadic rational with at most 53 significant bits, so past scale ~53 it
/// always sits on a cell boundary and every Haar coefficient it generates
/// vanishes. Greedy selections on sparse paths routinely reach scales far
/// beyond that (the stopping scale grows like M / N).
class DyadicPoint {
 public:
  static constexpr int kWords = 8;
  static constexpr int kBits = 64 * kWords;
  /// Deepest scale at which the in-cell offset still carries 64 bits.
  static constexpr int kMaxScale = kBits - 64;

  constexpr DyadicPoint() = default;

  /// Exact conversion of t in [0, 1). Bits below 2^-512 are truncated.
  static DyadicPoint from_double(double t);

  /// Uniform draw; every bit is random.
  static DyadicPoint uniform(RandomStream& stream);

  static DyadicPoint from_words(const std::array<std::uint64_t, kWords>& w);

  /// Nearest double (accurate to the last bit of the double).
  double to_double() const;

  /// 1 - t as a double, computed without cancellation.
  double complement_to_double() const;

  /// (this - lower) as a double; requires lower <= *this.
  double minus(const DyadicPoint& lower) const;

  /// 64 bits starting at bit `offset` (bit 0 has weight 1/2).
  std::uint64_t bits(int offset) const;

  /// True when both points lie in the same dyadic cell of size 2^-scale.
  bool same_cell(const DyadicPoint& other, int scale) const;

  /// The left end of the dyadic cell of size 2^-scale containing the point.
  DyadicPoint cell_origin(int scale) const;

  /// frac(t * 2^scale), in [0, 1).
  double offset_in_cell(int scale) const;

  /// 1 - frac(t * 2^scale), in (0, 1], accurate when the offset is near 1.
  double offset_complement(int scale) const;

  bool is_zero() const;

  const std::array<std::uint64_t, kWords>& words() const { return words_; }

  friend auto operator<=>(const DyadicPoint&, const DyadicPoint&) = default;
  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;

 private:
  // words_[0] is the most significant word.
  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace cpwave
