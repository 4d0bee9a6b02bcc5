// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include "cpwave/approx.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <string>

#include "cpwave/errors.hpp"

namespace cpwave {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kLinear: return "linear";
    case Scheme::kGreedy: return "greedy";
    case Scheme::kBest: return "best";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "linear") return Scheme::kLinear;
  if (name == "greedy") return Scheme::kGreedy;
  if (name == "best") return Scheme::kBest;
  throw InvalidParameter("unknown scheme '" + std::string(name) +
                         "' (expected linear, greedy or best)");
}

namespace {

// Linear selections materialize every kept atom.
constexpr std::uint64_t kMaxLinearTerms = std::uint64_t{1} << 26;

// Error of a selection whose deepest kept atom sits at `stop_scale`: the
// dropped nonzero atoms at scales <= stop_scale plus everything deeper.
// Dropped squares are accumulated in Ind order before the tail is added, so
// two schemes that keep the same set produce bit-identical errors.
double error_from_dropped(const CompoundPoissonPath& path, std::span<const double> dropped,
                          int stop_scale) {
  if (stop_scale + 1 > DyadicPoint::kMaxScale) {
    throw DomainError("selection reaches scale " + std::to_string(stop_scale) +
                      ", deeper than the " + std::to_string(DyadicPoint::kMaxScale) +
                      " resolved by jump positions");
  }
  double sum = 0.0;
  for (double v : dropped) sum += v * v;
  return sum + energy_beyond_scale(path, stop_scale);
}

Selection empty_selection(Scheme scheme, std::uint64_t m, double error_sq) {
  Selection s;
  s.scheme = scheme;
  s.m = m;
  s.error_sq = error_sq;
  s.certified = true;
  return s;
}

int scale_of(const AtomId& atom) { return atom.is_scaling() ? 0 : atom.scale(); }

}  // namespace

Selection select_linear(const CompoundPoissonPath& path, std::uint64_t m) {
  if (m == 0) return empty_selection(Scheme::kLinear, 0, path_l2_norm_sq(path));
  if (m > kMaxLinearTerms) {
    throw InvalidParameter("linear selection limited to 2^26 terms, got " + std::to_string(m));
  }
  Selection out = empty_selection(Scheme::kLinear, m, 0.0);
  const int stop = m == 1 ? 0 : 63 - std::countl_zero(m - 1);
  out.stop_scale = stop;
  out.kept.reserve(m);
  out.kept.push_back({AtomId::scaling(), coeff(path, AtomId::scaling()).value});
  std::vector<double> dropped;
  for (int j = 0; j <= stop; ++j) {
    const auto level = nonzero_at_scale(path, j);
    std::size_t next = 0;
    const std::uint64_t first = std::uint64_t{1} << j;
    const std::uint64_t last = std::min<std::uint64_t>(first << 1, m);  // exclusive
    for (std::uint64_t index = first; index < last; ++index) {
      const AtomId atom = AtomId::from_ind(index);
      double value = 0.0;
      if (next < level.size() && level[next].atom == atom) value = level[next++].value;
      out.kept.push_back({atom, value});
    }
    for (; next < level.size(); ++next) dropped.push_back(level[next].value);
  }
  out.error_sq = error_from_dropped(path, dropped, stop);
  return out;
}

Selection select_greedy(const CompoundPoissonPath& path, std::uint64_t m) {
  if (path.jump_count() == 0) return empty_selection(Scheme::kGreedy, m, 0.0);
  if (m == 0) return empty_selection(Scheme::kGreedy, 0, path_l2_norm_sq(path));
  Selection out = empty_selection(Scheme::kGreedy, m, 0.0);
  out.kept.reserve(m);
  out.kept.push_back({AtomId::scaling(), coeff(path, AtomId::scaling()).value});
  std::vector<double> dropped;
  int scale = 0;
  for (;; ++scale) {
    if (scale > DyadicPoint::kMaxScale - 1) {
      // Budget outlasts the resolved depth: every nonzero atom down to the
      // last resolved scale is kept and the error is the exact residual tail.
      scale = DyadicPoint::kMaxScale - 1;
      out.certified = false;
      break;
    }
    if (out.kept.size() == m) break;  // only when m == 1: phi alone
    const auto level = nonzero_at_scale(path, scale);
    std::size_t next = 0;
    for (; next < level.size() && out.kept.size() < m; ++next) {
      out.kept.push_back({level[next].atom, level[next].value});
    }
    if (out.kept.size() == m) {
      for (; next < level.size(); ++next) dropped.push_back(level[next].value);
      break;
    }
  }
  if (m == 1) {
    // phi is kept; scale 0 holds psi_{0,0}, which is nonzero whenever N >= 1.
    for (const auto& c : nonzero_at_scale(path, 0)) dropped.push_back(c.value);
  }
  out.stop_scale = scale;
  out.error_sq = error_from_dropped(path, dropped, scale);
  return out;
}

Selection select_best(const CompoundPoissonPath& path, std::uint64_t m) {
  if (path.jump_count() == 0) return empty_selection(Scheme::kBest, m, 0.0);
  if (m == 0) return empty_selection(Scheme::kBest, 0, path_l2_norm_sq(path));

  struct Candidate {
    AtomId atom;
    double value;
    std::size_t slot;  // position in `seen`
  };
  // True when a is strictly preferable to b.
  const auto better = [](const Candidate& a, const Candidate& b) {
    const double ma = std::abs(a.value);
    const double mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    return a.atom < b.atom;
  };
  // Top of the queue is the weakest of the current M leaders.
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(better)> leaders(better);
  std::vector<WaveletCoefficient> seen;

  const auto offer = [&](const WaveletCoefficient& c) {
    seen.push_back(c);
    Candidate cand{c.atom, c.value, seen.size() - 1};
    if (leaders.size() < m) {
      leaders.push(cand);
    } else if (better(cand, leaders.top())) {
      leaders.pop();
      leaders.push(cand);
    }
  };

  // Scale 0 is always scanned: the scaling atom is booked at scale 0, and the
  // error accounting needs every atom of the deepest kept scale.
  bool certified = true;
  offer(coeff(path, AtomId::scaling()));
  for (const auto& c : nonzero_at_scale(path, 0)) offer(c);
  for (int scale = 1;; ++scale) {
    if (leaders.size() == m &&
        coeff_envelope(scale, path) < std::abs(leaders.top().value)) {
      break;
    }
    if (scale > DyadicPoint::kMaxScale - 1) {
      certified = false;
      break;
    }
    for (const auto& c : nonzero_at_scale(path, scale)) offer(c);
  }

  std::vector<bool> is_kept(seen.size(), false);
  int stop = 0;
  while (!leaders.empty()) {
    is_kept[leaders.top().slot] = true;
    stop = std::max(stop, scale_of(leaders.top().atom));
    leaders.pop();
  }
  Selection out = empty_selection(Scheme::kBest, m, 0.0);
  out.certified = certified;
  out.stop_scale = stop;
  std::vector<double> dropped;
  // `seen` is already in Ind order.
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (is_kept[i]) {
      out.kept.push_back({seen[i].atom, seen[i].value});
    } else if (scale_of(seen[i].atom) <= stop) {
      dropped.push_back(seen[i].value);
    }
  }
  out.error_sq = error_from_dropped(path, dropped, stop);
  return out;
}

Selection select(Scheme scheme, const CompoundPoissonPath& path, std::uint64_t m) {
  switch (scheme) {
    case Scheme::kLinear: return select_linear(path, m);
    case Scheme::kGreedy: return select_greedy(path, m);
    case Scheme::kBest: return select_best(path, m);
  }
  throw InvariantViolation("select: unknown scheme");
}

namespace {

void require_terms(std::span<const double> coeffs, std::size_t m) {
  if (m > coeffs.size()) {
    throw InvalidParameter("M = " + std::to_string(m) + " exceeds the " +
                           std::to_string(coeffs.size()) + " available coefficients");
  }
}

DiscreteSelection finish_discrete(Scheme scheme, std::span<const double> coeffs, std::size_t m,
                                  const std::vector<bool>& keep) {
  DiscreteSelection out;
  out.scheme = scheme;
  out.m = m;
  double sum = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (keep[i]) {
      out.kept_indices.push_back(i);
      out.kept_values.push_back(coeffs[i]);
    } else {
      sum += coeffs[i] * coeffs[i];
    }
  }
  out.error_sq = sum;
  out.certified = false;
  return out;
}

}  // namespace

DiscreteSelection select_linear_discrete(std::span<const double> coeffs, std::size_t m) {
  require_terms(coeffs, m);
  std::vector<bool> keep(coeffs.size(), false);
  std::fill_n(keep.begin(), m, true);
  return finish_discrete(Scheme::kLinear, coeffs, m, keep);
}

DiscreteSelection select_greedy_discrete(std::span<const double> coeffs, std::size_t m) {
  require_terms(coeffs, m);
  std::vector<bool> keep(coeffs.size(), false);
  std::size_t taken = 0;
  for (std::size_t i = 0; i < coeffs.size() && taken < m; ++i) {
    if (coeffs[i] != 0.0) {
      keep[i] = true;
      ++taken;
    }
  }
  return finish_discrete(Scheme::kGreedy, coeffs, m, keep);
}

DiscreteSelection select_best_discrete(std::span<const double> coeffs, std::size_t m) {
  require_terms(coeffs, m);
  std::vector<std::size_t> order(coeffs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double ma = std::abs(coeffs[a]);
                      const double mb = std::abs(coeffs[b]);
                      return ma != mb ? ma > mb : a < b;
                    });
  std::vector<bool> keep(coeffs.size(), false);
  for (std::size_t i = 0; i < m; ++i) keep[order[i]] = true;
  return finish_discrete(Scheme::kBest, coeffs, m, keep);
}

DiscreteSelection select_discrete(Scheme scheme, std::span<const double> coeffs, std::size_t m) {
  switch (scheme) {
    case Scheme::kLinear: return select_linear_discrete(coeffs, m);
    case Scheme::kGreedy: return select_greedy_discrete(coeffs, m);
    case Scheme::kBest: return select_best_discrete(coeffs, m);
  }
  throw InvariantViolation("select_discrete: unknown scheme");
}

}  // namespace cpwave
