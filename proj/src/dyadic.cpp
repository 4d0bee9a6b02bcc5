// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include "cpwave/dyadic.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "cpwave/errors.hpp"
#include "cpwave/random.hpp"

namespace cpwave {

namespace {

// Value of the 128-bit fraction hi * 2^-64 + lo * 2^-128, scaled by 2^-shift.
double fraction_to_double(std::uint64_t hi, std::uint64_t lo, int shift) {
  if (hi == 0) {
    if (lo == 0) return 0.0;
    hi = lo;
    lo = 0;
    shift += 64;
  }
  const int lz = std::countl_zero(hi);
  std::uint64_t top = hi;
  if (lz > 0) top = (hi << lz) | (lo >> (64 - lz));
  const std::uint64_t rest = lz > 0 ? (lo << lz) : lo;
  // Round to 53 bits by hand so the discarded low word acts as a sticky bit.
  std::uint64_t mant = top >> 11;
  const std::uint64_t dropped = top & 0x7FFu;
  const bool sticky = rest != 0;
  if (dropped > 0x400u || (dropped == 0x400u && (sticky || (mant & 1u)))) ++mant;
  return std::ldexp(static_cast<double>(mant), -53 - lz - shift);
}

}  // namespace

DyadicPoint DyadicPoint::from_double(double t) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw DomainError("DyadicPoint::from_double: value outside [0, 1)");
  }
  DyadicPoint p;
  if (t == 0.0) return p;
  int e = 0;
  const double m = std::frexp(t, &e);
  auto mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
  // Most significant bit of `mant` has weight 2^(e-1), i.e. bit index -e.
  for (int b = 0; b < 53; ++b) {
    if (((mant >> (52 - b)) & 1u) == 0) continue;
    const int index = -e + b;
    if (index >= kBits) break;
    p.words_[index / 64] |= std::uint64_t{1} << (63 - index % 64);
  }
  return p;
}

DyadicPoint DyadicPoint::uniform(RandomStream& stream) {
  DyadicPoint p;
  for (auto& w : p.words_) w = stream.next_u64();
  return p;
}

DyadicPoint DyadicPoint::from_words(const std::array<std::uint64_t, kWords>& w) {
  DyadicPoint p;
  p.words_ = w;
  return p;
}

double DyadicPoint::to_double() const {
  for (int q = 0; q < kWords; ++q) {
    if (words_[q] == 0) continue;
    const std::uint64_t lo = q + 1 < kWords ? words_[q + 1] : 0;
    return fraction_to_double(words_[q], lo, 64 * q);
  }
  return 0.0;
}

double DyadicPoint::complement_to_double() const {
  DyadicPoint c;
  bool carry = true;
  for (int q = kWords - 1; q >= 0; --q) {
    c.words_[q] = ~words_[q] + (carry ? 1u : 0u);
    carry = carry && c.words_[q] == 0;
  }
  if (carry) return 1.0;  // t == 0
  return c.to_double();
}

double DyadicPoint::minus(const DyadicPoint& lower) const {
  DyadicPoint d;
  std::uint64_t borrow = 0;
  for (int q = kWords - 1; q >= 0; --q) {
    const std::uint64_t a = words_[q];
    const std::uint64_t b = lower.words_[q];
    d.words_[q] = a - b - borrow;
    borrow = (a < b || (a == b && borrow)) ? 1u : 0u;
  }
  if (borrow) throw InvariantViolation("DyadicPoint::minus: negative difference");
  return d.to_double();
}

std::uint64_t DyadicPoint::bits(int offset) const {
  if (offset < 0 || offset >= kBits) return 0;
  const int q = offset / 64;
  const int r = offset % 64;
  std::uint64_t out = words_[q] << r;
  if (r != 0 && q + 1 < kWords) out |= words_[q + 1] >> (64 - r);
  return out;
}

bool DyadicPoint::same_cell(const DyadicPoint& other, int scale) const {
  const int full = scale / 64;
  for (int q = 0; q < full && q < kWords; ++q) {
    if (words_[q] != other.words_[q]) return false;
  }
  const int r = scale % 64;
  if (r == 0 || full >= kWords) return true;
  const std::uint64_t mask = ~std::uint64_t{0} << (64 - r);
  return (words_[full] & mask) == (other.words_[full] & mask);
}

DyadicPoint DyadicPoint::cell_origin(int scale) const {
  DyadicPoint p;
  const int full = scale / 64;
  for (int q = 0; q < full && q < kWords; ++q) p.words_[q] = words_[q];
  const int r = scale % 64;
  if (r != 0 && full < kWords) {
    p.words_[full] = words_[full] & (~std::uint64_t{0} << (64 - r));
  }
  return p;
}

double DyadicPoint::offset_in_cell(int scale) const {
  const double f = fraction_to_double(bits(scale), bits(scale + 64), 0);
  return f < 1.0 ? f : std::nextafter(1.0, 0.0);
}

double DyadicPoint::offset_complement(int scale) const {
  std::uint64_t hi = ~bits(scale);
  std::uint64_t lo = ~bits(scale + 64) + 1u;
  if (lo == 0) ++hi;
  if (hi == 0 && lo == 0) return 1.0;
  return fraction_to_double(hi, lo, 0);
}

bool DyadicPoint::is_zero() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

}  // namespace cpwave
