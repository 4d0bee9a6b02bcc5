// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include "cpwave/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "cpwave/dct.hpp"
#include "cpwave/errors.hpp"
#include "cpwave/haar.hpp"

namespace cpwave {

std::string_view to_string(Dictionary dictionary) {
  switch (dictionary) {
    case Dictionary::kHaarAnalytic: return "haar";
    case Dictionary::kHaarDiscrete: return "haar-discrete";
    case Dictionary::kDct: return "dct";
  }
  return "?";
}

Dictionary parse_dictionary(std::string_view name) {
  if (name == "haar") return Dictionary::kHaarAnalytic;
  if (name == "haar-discrete") return Dictionary::kHaarDiscrete;
  if (name == "dct") return Dictionary::kDct;
  throw InvalidParameter("unknown dictionary '" + std::string(name) +
                         "' (expected haar, haar-discrete or dct)");
}

ProcessKind parse_process(std::string_view name) {
  if (name == "cp") return ProcessKind::kCompoundPoisson;
  if (name == "bm") return ProcessKind::kBrownian;
  throw InvalidParameter("unknown process '" + std::string(name) + "' (expected cp or bm)");
}

namespace {

constexpr double kMaxLambda = 1e6;
constexpr std::uint64_t kMaxAnalyticM = std::uint64_t{1} << 26;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// Runs body(i) for i in [0, count) on `threads` workers. The first exception
// thrown by any worker is rethrown after all workers stop.
template <typename Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double to_db(double mean) {
  if (mean == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(mean);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (process == ProcessKind::kCompoundPoisson) {
    if (!lambda) throw InvalidParameter("--lambda is required for process cp");
    if (!positive_finite(*lambda) || *lambda > kMaxLambda) {
      throw InvalidParameter("--lambda must be in (0, 1e6], got " + std::to_string(*lambda));
    }
    if (jump_variance && !positive_finite(*jump_variance)) {
      throw InvalidParameter("jump variance must be positive and finite");
    }
  } else if (dictionary == Dictionary::kHaarAnalytic) {
    throw InvalidParameter(
        "process bm has no jump representation; use --dictionary haar-discrete or dct");
  }
  if (!positive_finite(sigma0_sq)) throw InvalidParameter("--sigma0-sq must be positive and finite");
  if (schemes.empty()) throw InvalidParameter("--schemes must list at least one scheme");
  if (std::set<Scheme>(schemes.begin(), schemes.end()).size() != schemes.size()) {
    throw InvalidParameter("--schemes lists a scheme twice");
  }
  if (m_values.empty()) throw InvalidParameter("--m must list at least one term count");
  if (!std::is_sorted(m_values.begin(), m_values.end(), std::less_equal<>{})) {
    throw InvalidParameter("--m values must be strictly increasing");
  }
  const bool discrete = dictionary != Dictionary::kHaarAnalytic;
  if (discrete || process == ProcessKind::kBrownian) {
    if (grid_log2 < 1 || grid_log2 > kMaxGridLog2) {
      throw InvalidParameter("--grid-log2 must be in [1, " + std::to_string(kMaxGridLog2) + "]");
    }
  }
  for (std::uint64_t m : m_values) {
    if (m == 0) throw InvalidParameter("--m values must be >= 1");
    if (discrete && m > (std::uint64_t{1} << grid_log2)) {
      throw InvalidParameter("M = " + std::to_string(m) + " exceeds the 2^" +
                             std::to_string(grid_log2) + " grid coefficients");
    }
    if (!discrete && m > kMaxAnalyticM) {
      throw InvalidParameter("M = " + std::to_string(m) + " exceeds 2^26");
    }
  }
  if (trials == 0) throw InvalidParameter("--trials must be >= 1");
}

double ExperimentConfig::effective_sigma0_sq() const {
  if (process == ProcessKind::kCompoundPoisson && jump_variance) return *lambda * *jump_variance;
  return sigma0_sq;
}

JumpLaw ExperimentConfig::jump_law() const {
  if (process != ProcessKind::kCompoundPoisson || !lambda) {
    throw InvalidParameter("jump law is defined only for process cp");
  }
  return JumpLaw::gaussian(jump_variance ? *jump_variance : sigma0_sq / *lambda);
}

std::vector<double> trial_errors(const ExperimentConfig& config, std::uint64_t trial) {
  RandomStream stream(config.master_seed, trial);
  const std::size_t nm = config.m_values.size();
  std::vector<double> out(config.schemes.size() * nm);

  if (config.dictionary == Dictionary::kHaarAnalytic) {
    const auto path = sample_path(*config.lambda, config.jump_law(), stream);
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
      for (std::size_t k = 0; k < nm; ++k) {
        out[s * nm + k] = select(config.schemes[s], path, config.m_values[k]).error_sq;
      }
    }
    return out;
  }

  const SampledPath grid =
      config.process == ProcessKind::kBrownian
          ? brownian_grid(config.sigma0_sq, config.grid_log2, stream)
          : sample_grid(sample_path(*config.lambda, config.jump_law(), stream), config.grid_log2);
  const std::vector<double> coeffs = config.dictionary == Dictionary::kDct
                                         ? dct2_forward(grid.values)
                                         : discrete_haar_forward(grid.values);
  const double scale = 1.0 / static_cast<double>(grid.values.size());
  for (std::size_t s = 0; s < config.schemes.size(); ++s) {
    for (std::size_t k = 0; k < nm; ++k) {
      out[s * nm + k] =
          select_discrete(config.schemes[s], coeffs, config.m_values[k]).error_sq * scale;
    }
  }
  return out;
}

std::vector<std::vector<double>> run_trials(const ExperimentConfig& config,
                                            const RunOptions& options) {
  config.validate();
  std::vector<std::vector<double>> errors(config.trials);
  parallel_for(config.trials, options.threads,
               [&](std::uint64_t t) { errors[t] = trial_errors(config, t); });
  return errors;
}

OrderingReport check_ordering(const ExperimentConfig& config,
                              const std::vector<std::vector<double>>& errors) {
  OrderingReport report;
  const std::size_t nm = config.m_values.size();
  const auto index_of = [&](Scheme scheme) -> std::optional<std::size_t> {
    const auto it = std::find(config.schemes.begin(), config.schemes.end(), scheme);
    if (it == config.schemes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - config.schemes.begin());
  };
  const auto linear = index_of(Scheme::kLinear);
  const auto greedy = index_of(Scheme::kGreedy);
  const auto best = index_of(Scheme::kBest);

  for (const auto& row : errors) {
    ++report.trials_checked;
    const auto at = [&](std::size_t s, std::size_t k) { return row[s * nm + k]; };
    for (std::size_t k = 0; k < nm; ++k) {
      if (best && greedy && !error_leq(at(*best, k), at(*greedy, k))) ++report.ordering_violations;
      if (greedy && linear && !error_leq(at(*greedy, k), at(*linear, k))) ++report.ordering_violations;
      if (best && linear && !error_leq(at(*best, k), at(*linear, k))) ++report.ordering_violations;
    }
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
      for (std::size_t i = 1; i < nm; ++i) {
        if (!error_leq(at(s, i), at(s, i - 1))) ++report.monotonicity_violations;
      }
    }
  }
  return report;
}

MeanEstimate estimate_mean(const std::vector<double>& samples) {
  MeanEstimate est;
  if (samples.empty()) return est;
  double sum = 0.0;
  double comp = 0.0;
  for (double x : samples) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  const double n = static_cast<double>(samples.size());
  est.mean = (sum + comp) / n;
  if (samples.size() < 2) {
    est.ci_lo = est.ci_hi = est.mean;
    return est;
  }
  double ss = 0.0;
  for (double x : samples) ss += (x - est.mean) * (x - est.mean);
  const double half = 1.96 * std::sqrt(ss / (n - 1.0) / n);
  est.ci_lo = est.mean - half;
  est.ci_hi = est.mean + half;
  return est;
}

std::vector<CurveRecord> aggregate(const ExperimentConfig& config,
                                   const std::vector<std::vector<double>>& errors) {
  const std::size_t nm = config.m_values.size();
  std::vector<CurveRecord> records;
  records.reserve(config.schemes.size() * nm);
  std::vector<double> column(errors.size());
  for (std::size_t s = 0; s < config.schemes.size(); ++s) {
    for (std::size_t k = 0; k < nm; ++k) {
      for (std::size_t t = 0; t < errors.size(); ++t) column[t] = errors[t][s * nm + k];
      const MeanEstimate est = estimate_mean(column);
      CurveRecord r;
      r.process = config.process;
      r.scheme = config.schemes[s];
      r.dictionary = config.dictionary;
      if (config.process == ProcessKind::kCompoundPoisson) r.lambda = config.lambda;
      r.sigma0_sq = config.effective_sigma0_sq();
      r.m = config.m_values[k];
      r.log2_m = std::log2(static_cast<double>(r.m));
      r.mse_mean = est.mean;
      r.mse_db = to_db(est.mean);
      r.ci_lo = est.ci_lo;
      r.ci_hi = est.ci_hi;
      r.trials = errors.size();
      r.seed = config.master_seed;
      records.push_back(r);
    }
  }
  return records;
}

std::vector<CurveRecord> run_mse_curve(const ExperimentConfig& config, const RunOptions& options) {
  const auto errors = run_trials(config, options);
  const OrderingReport report = check_ordering(config, errors);
  if (report.ordering_violations != 0 || report.monotonicity_violations != 0) {
    throw InvariantViolation("per-trial error ordering violated: " +
                             std::to_string(report.ordering_violations) + " scheme, " +
                             std::to_string(report.monotonicity_violations) + " monotonicity");
  }
  return aggregate(config, errors);
}

std::vector<double> default_delta_grid(std::uint64_t n) {
  if (n == 0) throw InvalidParameter("spacing check needs n >= 1");
  const double inv = 1.0 / static_cast<double>(n);
  std::vector<double> grid;
  for (double d : {0.0, 0.05, 0.1, 0.5 * inv, inv}) {
    if (d <= inv) grid.push_back(d);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

LemmaReport run_lemma_check(double lambda, const std::vector<std::uint64_t>& n_values,
                            const std::vector<double>& delta_grid, std::uint64_t samples,
                            std::uint64_t seed, const RunOptions& options) {
  if (!positive_finite(lambda) || lambda > kMaxLambda) {
    throw InvalidParameter("--lambda must be in (0, 1e6]");
  }
  if (n_values.empty()) throw InvalidParameter("spacing check needs at least one n");
  if (samples < 1000) throw InvalidParameter("spacing check needs at least 1000 samples");
  for (double d : delta_grid) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidParameter("delta values must be >= 0");
  }
  LemmaReport report;
  report.n_values = n_values;
  for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
    const std::uint64_t n = n_values[ni];
    if (n == 0 || n > (std::uint64_t{1} << 24)) throw InvalidParameter("n must be in [1, 2^24]");
    const double inv = 1.0 / static_cast<double>(n);
    std::vector<double> grid;
    if (delta_grid.empty()) {
      grid = default_delta_grid(n);
    } else {
      for (double d : delta_grid) {
        if (d <= inv) grid.push_back(d);
      }
    }
    std::vector<double> spacing(samples);
    parallel_for(samples, options.threads, [&](std::uint64_t s) {
      RandomStream stream(seed, (static_cast<std::uint64_t>(ni) << 40) | s);
      spacing[s] = min_spacing(sorted_uniform_positions(n, stream));
    });
    double sup = 0.0;
    for (double d : grid) {
      const auto hits = std::count_if(spacing.begin(), spacing.end(),
                                      [&](double x) { return x >= d; });
      LemmaRow row;
      row.n = n;
      row.delta = d;
      row.empirical = static_cast<double>(hits) / static_cast<double>(samples);
      row.theory = spacing_survival(n, d);
      row.abs_deviation = std::abs(row.empirical - row.theory);
      sup = std::max(sup, row.abs_deviation);
      report.rows.push_back(row);
    }
    report.sup_deviation.push_back(sup);
  }

  // Unconditioned paths: Delta <= 1/N whenever N >= 1.
  std::vector<char> violated(samples, 0);
  parallel_for(samples, options.threads, [&](std::uint64_t s) {
    RandomStream stream(seed, (std::uint64_t{1} << 63) | s);
    const std::uint64_t n = poisson_count(lambda, stream);
    if (n == 0) return;
    const double delta = min_spacing(sorted_uniform_positions(n, stream));
    if (delta * static_cast<double>(n) > 1.0 + 1e-12) violated[s] = 1;
  });
  report.paths_checked = samples;
  report.spacing_violations =
      static_cast<std::uint64_t>(std::count(violated.begin(), violated.end(), 1));
  return report;
}

std::vector<Theorem1Row> run_theorem1_check(double lambda, const std::vector<std::uint64_t>& m_values,
                                            std::uint64_t trials, std::uint64_t seed,
                                            double sigma0_sq, const RunOptions& options) {
  if (!positive_finite(lambda) || lambda > kMaxEnvelopeLambda) {
    throw InvalidParameter("theorem1-check needs --lambda in (0, 350]");
  }
  ExperimentConfig config;
  config.process = ProcessKind::kCompoundPoisson;
  config.lambda = lambda;
  config.sigma0_sq = sigma0_sq;
  config.schemes = {Scheme::kGreedy};
  config.dictionary = Dictionary::kHaarAnalytic;
  config.m_values = m_values;
  config.trials = trials;
  config.master_seed = seed;
  const auto errors = run_trials(config, options);

  std::vector<Theorem1Row> rows;
  std::vector<double> column(errors.size());
  for (std::size_t k = 0; k < m_values.size(); ++k) {
    for (std::size_t t = 0; t < errors.size(); ++t) column[t] = errors[t][k];
    Theorem1Row row;
    row.m = m_values[k];
    row.greedy = estimate_mean(column);
    row.theory = theorem1_envelope(row.m, lambda, sigma0_sq);
    row.mean_inside = row.theory.envelope_lo <= row.greedy.mean &&
                      row.greedy.mean <= row.theory.envelope_hi;
    row.ci_intersects = row.greedy.ci_lo <= row.theory.envelope_hi &&
                        row.theory.envelope_lo <= row.greedy.ci_hi;
    rows.push_back(row);
  }
  return rows;
}

std::vector<CurveRecord> run_dict_compare(double lambda, const std::vector<std::uint64_t>& m_values,
                                          int grid_log2, std::uint64_t trials, std::uint64_t seed,
                                          double sigma0_sq, const RunOptions& options) {
  std::vector<CurveRecord> out;
  for (ProcessKind process : {ProcessKind::kCompoundPoisson, ProcessKind::kBrownian}) {
    for (Dictionary dictionary : {Dictionary::kHaarDiscrete, Dictionary::kDct}) {
      ExperimentConfig config;
      config.process = process;
      if (process == ProcessKind::kCompoundPoisson) config.lambda = lambda;
      config.sigma0_sq = sigma0_sq;
      config.schemes = {Scheme::kBest};
      config.dictionary = dictionary;
      config.m_values = m_values;
      config.grid_log2 = grid_log2;
      config.trials = trials;
      config.master_seed = seed;
      const auto records = run_mse_curve(config, options);
      out.insert(out.end(), records.begin(), records.end());
    }
  }
  return out;
}

}  // namespace cpwave
