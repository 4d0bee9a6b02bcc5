// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "cpwave/levy_sim.hpp"
#include "cpwave/random.hpp"

namespace cpwave::testing {

inline CompoundPoissonPath path_of(std::vector<double> times, std::vector<double> heights,
                                   double lambda = 1.0) {
  return CompoundPoissonPath::from_times(lambda, JumpLaw::gaussian(1.0), times, heights);
}

/// Unit-variance-normalized path (jump variance 1/lambda).
inline CompoundPoissonPath random_path(double lambda, std::uint64_t seed, std::uint64_t index) {
  RandomStream stream(seed, index);
  return sample_path(lambda, JumpLaw::gaussian(1.0 / lambda), stream);
}

inline double relative_error(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Values of a path on each of its constant pieces, with the piece edges.
struct Pieces {
  std::vector<double> edges;   // 0 = e_0 < e_1 < ... < e_K = 1
  std::vector<double> values;  // value on [e_i, e_{i+1})
};

inline Pieces pieces_of(const CompoundPoissonPath& path) {
  Pieces p;
  p.edges.push_back(0.0);
  double level = 0.0;
  p.values.push_back(0.0);
  const auto times = path.jump_times();
  for (std::size_t i = 0; i < times.size(); ++i) {
    level += path.heights()[i];
    p.edges.push_back(times[i]);
    p.values.push_back(level);
  }
  p.edges.push_back(1.0);
  return p;
}

}  // namespace cpwave::testing
