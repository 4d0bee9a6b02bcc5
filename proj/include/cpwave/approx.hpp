// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cpwave/haar.hpp"
#include "cpwave/levy_sim.hpp"

namespace cpwave {

enum class Scheme { kLinear, kGreedy, kBest };

std::string_view to_string(Scheme scheme);
/// Parses "linear", "greedy" or "best"; throws InvalidParameter otherwise.
Scheme parse_scheme(std::string_view name);

struct KeptTerm {
  AtomId atom;
  double value = 0.0;
};

/// An M-term approximation of an analytic compound Poisson path.
struct Selection {
  Scheme scheme = Scheme::kLinear;
  std::uint64_t m = 0;
  /// Ordered by Ind.
  std::vector<KeptTerm> kept;
  /// Exact ||s - P_M s||^2.
  double error_sq = 0.0;
  /// False when the scan hit the deepest resolved scale first. error_sq is
  /// still exact for the kept set; greedy may then keep fewer than m atoms
  /// and best is not proven optimal.
  bool certified = true;
  /// Scale of the last kept atom (the scaling atom counts as scale 0). For
  /// the greedy scheme this is J_M. Empty when nothing is kept.
  std::optional<int> stop_scale;
};

/// Keeps every atom with Ind < M, zero-valued ones included.
Selection select_linear(const CompoundPoissonPath& path, std::uint64_t m);

/// Keeps the first M atoms, in Ind order, whose support holds a jump.
Selection select_greedy(const CompoundPoissonPath& path, std::uint64_t m);

/// Exact best M-term selection over the whole (infinite) basis. Scales are
/// scanned until coeff_envelope drops below the M-th largest magnitude seen;
/// magnitude ties go to the smaller Ind.
Selection select_best(const CompoundPoissonPath& path, std::uint64_t m);

Selection select(Scheme scheme, const CompoundPoissonPath& path, std::uint64_t m);

/// An M-term approximation over a finite coefficient vector (discrete Haar
/// or DCT). error_sq is the plain sum of dropped squares.
struct DiscreteSelection {
  Scheme scheme = Scheme::kLinear;
  std::size_t m = 0;
  std::vector<std::size_t> kept_indices;  // increasing
  std::vector<double> kept_values;
  double error_sq = 0.0;
  bool certified = false;
};

DiscreteSelection select_linear_discrete(std::span<const double> coeffs, std::size_t m);
/// First M entries that are exactly nonzero.
DiscreteSelection select_greedy_discrete(std::span<const double> coeffs, std::size_t m);
DiscreteSelection select_best_discrete(std::span<const double> coeffs, std::size_t m);
DiscreteSelection select_discrete(Scheme scheme, std::span<const double> coeffs, std::size_t m);

/// Relative slack used when comparing errors that are mathematically ordered
/// but were summed along different paths.
inline constexpr double kErrorOrderingRelTol = 1e-12;

inline bool error_leq(double a, double b) { return a <= b + kErrorOrderingRelTol * b; }

}  // namespace cpwave
