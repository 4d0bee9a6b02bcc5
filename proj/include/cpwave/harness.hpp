// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpwave/approx.hpp"
#include "cpwave/levy_sim.hpp"
#include "cpwave/theory.hpp"

namespace cpwave {

enum class Dictionary { kHaarAnalytic, kHaarDiscrete, kDct };

/// "haar", "haar-discrete", "dct".
std::string_view to_string(Dictionary dictionary);
Dictionary parse_dictionary(std::string_view name);
ProcessKind parse_process(std::string_view name);

struct ExperimentConfig {
  ProcessKind process = ProcessKind::kCompoundPoisson;
  /// Required for compound Poisson, ignored for Brownian motion.
  std::optional<double> lambda;
  double sigma0_sq = 1.0;
  /// Jump variance override. When absent the jumps get sigma0_sq / lambda,
  /// which normalizes the process variance at t = 1 to sigma0_sq.
  std::optional<double> jump_variance;
  std::vector<Scheme> schemes{Scheme::kGreedy};
  Dictionary dictionary = Dictionary::kHaarAnalytic;
  std::vector<std::uint64_t> m_values;
  int grid_log2 = 10;
  std::uint64_t trials = 1000;
  std::uint64_t master_seed = 0;
  std::string output_path;

  /// Throws InvalidParameter with an actionable message.
  void validate() const;

  /// Process variance at t = 1 (lambda * jump variance for compound Poisson).
  double effective_sigma0_sq() const;
  JumpLaw jump_law() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct CurveRecord {
  ProcessKind process = ProcessKind::kCompoundPoisson;
  Scheme scheme = Scheme::kGreedy;
  Dictionary dictionary = Dictionary::kHaarAnalytic;
  std::optional<double> lambda;
  double sigma0_sq = 1.0;
  std::uint64_t m = 0;
  double log2_m = 0.0;
  double mse_mean = 0.0;
  /// 10 log10(mse_mean); -infinity when mse_mean == 0.
  double mse_db = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

struct RunOptions {
  /// Worker threads; 0 picks the hardware concurrency. Results never depend
  /// on this value.
  unsigned threads = 0;
};

/// Squared errors of one trial, laid out [scheme][m] in config order.
std::vector<double> trial_errors(const ExperimentConfig& config, std::uint64_t trial);

/// Squared errors of every trial: result[trial][scheme * |m_values| + m_index].
std::vector<std::vector<double>> run_trials(const ExperimentConfig& config,
                                            const RunOptions& options = {});

struct OrderingReport {
  std::uint64_t trials_checked = 0;
  /// best <= greedy <= linear, per trial and M (schemes present in config).
  std::uint64_t ordering_violations = 0;
  /// Non-increasing in M, per trial and scheme.
  std::uint64_t monotonicity_violations = 0;
};

OrderingReport check_ordering(const ExperimentConfig& config,
                              const std::vector<std::vector<double>>& errors);

/// Mean with a 95% normal-approximation interval.
struct MeanEstimate {
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

/// Compensated mean; the interval is mean +- 1.96 * stderr.
MeanEstimate estimate_mean(const std::vector<double>& samples);

std::vector<CurveRecord> aggregate(const ExperimentConfig& config,
                                   const std::vector<std::vector<double>>& errors);

/// Simulates, checks per-trial ordering (throws InvariantViolation on any
/// violation) and aggregates.
std::vector<CurveRecord> run_mse_curve(const ExperimentConfig& config,
                                       const RunOptions& options = {});

struct LemmaRow {
  std::uint64_t n = 0;
  double delta = 0.0;
  double empirical = 0.0;
  double theory = 0.0;
  double abs_deviation = 0.0;
};

struct LemmaReport {
  std::vector<LemmaRow> rows;
  /// Largest |empirical - theory| per n, aligned with n_values.
  std::vector<double> sup_deviation;
  std::vector<std::uint64_t> n_values;
  /// Unconditioned paths at rate lambda checked for Delta <= 1/N.
  std::uint64_t paths_checked = 0;
  std::uint64_t spacing_violations = 0;
};

/// Default spacing grid for a given n: {0, 0.05, 0.1, 1/(2n), 1/n} within
/// [0, 1/n].
std::vector<double> default_delta_grid(std::uint64_t n);

/// Empirical P(Delta >= delta | N = n) from `samples` conditioned draws per
/// n, against (1 - n delta)^n. An empty delta_grid selects the default grid;
/// entries above 1/n are skipped.
LemmaReport run_lemma_check(double lambda, const std::vector<std::uint64_t>& n_values,
                            const std::vector<double>& delta_grid, std::uint64_t samples,
                            std::uint64_t seed, const RunOptions& options = {});

struct Theorem1Row {
  std::uint64_t m = 0;
  MeanEstimate greedy;
  TheoryPoint theory;
  bool mean_inside = false;
  bool ci_intersects = false;
};

std::vector<Theorem1Row> run_theorem1_check(double lambda, const std::vector<std::uint64_t>& m_values,
                                            std::uint64_t trials, std::uint64_t seed,
                                            double sigma0_sq = 1.0,
                                            const RunOptions& options = {});

/// Best-M curves for {cp lambda, bm} x {haar-discrete, dct} on one grid.
std::vector<CurveRecord> run_dict_compare(double lambda, const std::vector<std::uint64_t>& m_values,
                                          int grid_log2, std::uint64_t trials, std::uint64_t seed,
                                          double sigma0_sq = 1.0, const RunOptions& options = {});

}  // namespace cpwave
