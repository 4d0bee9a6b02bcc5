// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: Monte Carlo curves, spacing and envelope checks,
// closed-form tables and single-path dumps.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cpwave/errors.hpp"
#include "cpwave/harness.hpp"
#include "cpwave/report.hpp"
#include "cpwave/theory.hpp"

namespace {

using namespace cpwave;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

struct CommonFlags {
  std::string out = "-";
  std::string format = "csv";
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void add_output_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--out", f.out, "Output file, '-' for stdout")->capture_default_str();
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_run_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "Master seed")->capture_default_str();
  cmd->add_option("--threads", f.threads, "Worker threads, 0 for all cores")->capture_default_str();
}

void emit_table(const CommonFlags& f, const Table& table, const nlohmann::json& meta) {
  if (f.format == "json") {
    write_text(f.out, table_json(table, meta).dump(2) + "\n");
  } else {
    std::ostringstream out;
    write_table_csv(out, table);
    write_text(f.out, out.str());
  }
}

void emit_curves(const CommonFlags& f, const ExperimentConfig& config,
                 const std::vector<CurveRecord>& records) {
  if (f.format == "json") {
    write_curve_json(f.out, config, records);
  } else {
    write_curve_csv(f.out, records);
  }
}

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names) {
  std::vector<Scheme> out;
  for (const auto& n : names) out.push_back(parse_scheme(n));
  return out;
}

const std::vector<std::uint64_t> kDefaultM{4, 8, 16, 32, 64, 128, 256};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compound Poisson and Brownian paths under Haar and DCT M-term approximation"};
  app.require_subcommand(1);

  CommonFlags flags;

  // mse-curve
  ExperimentConfig curve;
  curve.m_values = kDefaultM;
  std::string process = "cp";
  std::string dictionary = "haar";
  std::vector<std::string> schemes{"linear", "greedy", "best"};
  std::optional<double> lambda;
  std::optional<double> jump_variance;
  auto* mse = app.add_subcommand("mse-curve", "Monte Carlo MSE per scheme and M");
  mse->add_option("--process", process, "cp or bm")->capture_default_str();
  mse->add_option("--lambda", lambda, "Jump rate (cp)");
  mse->add_option("--sigma0-sq", curve.sigma0_sq, "Variance at t = 1")->capture_default_str();
  mse->add_option("--jump-variance", jump_variance, "Jump variance (cp), overrides sigma0-sq/lambda");
  mse->add_option("--schemes", schemes, "linear,greedy,best")->delimiter(',')->capture_default_str();
  mse->add_option("--dictionary", dictionary, "haar, haar-discrete or dct")->capture_default_str();
  mse->add_option("--m", curve.m_values, "Term counts, strictly increasing")
      ->delimiter(',')
      ->capture_default_str();
  mse->add_option("--grid-log2", curve.grid_log2, "Grid size 2^L for discrete dictionaries")
      ->capture_default_str();
  mse->add_option("--trials", curve.trials, "Monte Carlo trials")->capture_default_str();
  add_run_flags(mse, flags);
  add_output_flags(mse, flags);

  // lemma-check
  double lemma_lambda = 10.0;
  std::vector<std::uint64_t> lemma_n{1, 2, 5};
  std::vector<double> lemma_delta;
  std::uint64_t lemma_samples = 100000;
  auto* lemma = app.add_subcommand("lemma-check", "Minimum-spacing survival against its closed form");
  lemma->add_option("--lambda", lemma_lambda, "Rate for the unconditioned spacing check")
      ->capture_default_str();
  lemma->add_option("--n", lemma_n, "Conditioning jump counts")->delimiter(',')->capture_default_str();
  lemma->add_option("--delta", lemma_delta, "Spacing thresholds (default grid per n)")->delimiter(',');
  lemma->add_option("--trials", lemma_samples, "Samples per n")->capture_default_str();
  add_run_flags(lemma, flags);
  add_output_flags(lemma, flags);

  // theorem1-check
  double t1_lambda = 10.0;
  double t1_sigma0_sq = 1.0;
  std::vector<std::uint64_t> t1_m = kDefaultM;
  std::uint64_t t1_trials = 1000;
  auto* t1 = app.add_subcommand("theorem1-check", "Greedy MSE against its two-sided envelope");
  t1->add_option("--lambda", t1_lambda, "Jump rate, at most 350")->capture_default_str();
  t1->add_option("--sigma0-sq", t1_sigma0_sq, "Variance at t = 1")->capture_default_str();
  t1->add_option("--m", t1_m, "Term counts")->delimiter(',')->capture_default_str();
  t1->add_option("--trials", t1_trials, "Monte Carlo trials")->capture_default_str();
  add_run_flags(t1, flags);
  add_output_flags(t1, flags);

  // dict-compare
  double dc_lambda = 10.0;
  double dc_sigma0_sq = 1.0;
  std::vector<std::uint64_t> dc_m{16, 32, 64, 128, 256};
  int dc_grid = 10;
  std::uint64_t dc_trials = 1000;
  auto* dc = app.add_subcommand("dict-compare", "Best-M error of Haar versus DCT on a grid");
  dc->add_option("--lambda", dc_lambda, "Jump rate of the cp process")->capture_default_str();
  dc->add_option("--sigma0-sq", dc_sigma0_sq, "Variance at t = 1")->capture_default_str();
  dc->add_option("--m", dc_m, "Term counts")->delimiter(',')->capture_default_str();
  dc->add_option("--grid-log2", dc_grid, "Grid size 2^L")->capture_default_str();
  dc->add_option("--trials", dc_trials, "Monte Carlo trials")->capture_default_str();
  add_run_flags(dc, flags);
  add_output_flags(dc, flags);

  // theory-table
  double th_lambda = 10.0;
  double th_sigma0_sq = 1.0;
  std::vector<std::uint64_t> th_m = kDefaultM;
  auto* th = app.add_subcommand("theory-table", "Closed-form linear MSE and greedy envelope");
  th->add_option("--lambda", th_lambda, "Jump rate, at most 350")->capture_default_str();
  th->add_option("--sigma0-sq", th_sigma0_sq, "Variance at t = 1")->capture_default_str();
  th->add_option("--m", th_m, "Term counts")->delimiter(',')->capture_default_str();
  add_output_flags(th, flags);

  // simulate
  std::string sim_process = "cp";
  std::optional<double> sim_lambda;
  double sim_sigma0_sq = 1.0;
  std::optional<double> sim_jump_variance;
  int sim_grid = 10;
  std::uint64_t sim_trial = 0;
  auto* sim = app.add_subcommand("simulate", "Dump one path: jumps for cp, grid samples for bm");
  sim->add_option("--process", sim_process, "cp or bm")->capture_default_str();
  sim->add_option("--lambda", sim_lambda, "Jump rate (cp)");
  sim->add_option("--sigma0-sq", sim_sigma0_sq, "Variance at t = 1")->capture_default_str();
  sim->add_option("--jump-variance", sim_jump_variance, "Jump variance (cp)");
  sim->add_option("--grid-log2", sim_grid, "Grid size 2^L (bm)")->capture_default_str();
  sim->add_option("--trial", sim_trial, "Stream index; matches trial t of mse-curve")
      ->capture_default_str();
  add_run_flags(sim, flags);
  add_output_flags(sim, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const RunOptions options{flags.threads};
    if (mse->parsed()) {
      curve.process = parse_process(process);
      curve.dictionary = parse_dictionary(dictionary);
      curve.schemes = parse_schemes(schemes);
      curve.lambda = lambda;
      curve.jump_variance = jump_variance;
      curve.master_seed = flags.seed;
      curve.output_path = flags.out;
      emit_curves(flags, curve, run_mse_curve(curve, options));
    } else if (lemma->parsed()) {
      const auto report =
          run_lemma_check(lemma_lambda, lemma_n, lemma_delta, lemma_samples, flags.seed, options);
      emit_table(flags, lemma_table(report),
                 {{"lambda", lemma_lambda}, {"samples", lemma_samples}, {"seed", flags.seed}});
    } else if (t1->parsed()) {
      const auto rows = run_theorem1_check(t1_lambda, t1_m, t1_trials, flags.seed, t1_sigma0_sq,
                                           options);
      emit_table(flags, theorem1_table(rows, t1_lambda),
                 {{"lambda", t1_lambda}, {"sigma0_sq", t1_sigma0_sq}, {"trials", t1_trials},
                  {"seed", flags.seed}});
    } else if (dc->parsed()) {
      const auto records =
          run_dict_compare(dc_lambda, dc_m, dc_grid, dc_trials, flags.seed, dc_sigma0_sq, options);
      if (flags.format == "json") {
        nlohmann::json doc;
        doc["meta"] = {{"lambda", dc_lambda}, {"sigma0_sq", dc_sigma0_sq}, {"m_values", dc_m},
                       {"grid_log2", dc_grid}, {"trials", dc_trials}, {"seed", flags.seed}};
        doc["records"] = nlohmann::json::array();
        for (const auto& r : records) doc["records"].push_back(to_json(r));
        write_text(flags.out, doc.dump(2) + "\n");
      } else {
        write_curve_csv(flags.out, records);
      }
    } else if (th->parsed()) {
      std::vector<TheoryPoint> points;
      for (std::uint64_t m : th_m) points.push_back(theorem1_envelope(m, th_lambda, th_sigma0_sq));
      emit_table(flags, theory_table(points, th_lambda, th_sigma0_sq),
                 {{"lambda", th_lambda}, {"sigma0_sq", th_sigma0_sq}});
    } else if (sim->parsed()) {
      ExperimentConfig c;
      c.process = parse_process(sim_process);
      c.lambda = sim_lambda;
      c.sigma0_sq = sim_sigma0_sq;
      c.jump_variance = sim_jump_variance;
      c.dictionary = c.process == ProcessKind::kBrownian ? Dictionary::kHaarDiscrete
                                                         : Dictionary::kHaarAnalytic;
      c.m_values = {1};
      c.grid_log2 = sim_grid;
      c.trials = 1;
      c.validate();
      RandomStream stream(flags.seed, sim_trial);
      nlohmann::json meta = {{"process", std::string(to_string(c.process))},
                             {"seed", flags.seed}, {"trial", sim_trial}};
      if (c.process == ProcessKind::kBrownian) {
        meta["sigma0_sq"] = c.sigma0_sq;
        meta["grid_log2"] = c.grid_log2;
        emit_table(flags, grid_table(brownian_grid(c.sigma0_sq, c.grid_log2, stream)), meta);
      } else {
        const auto path = sample_path(*c.lambda, c.jump_law(), stream);
        meta["lambda"] = *c.lambda;
        meta["jump_variance"] = c.jump_law().variance();
        emit_table(flags, path_table(path), meta);
      }
    }
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
