// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cpwave/harness.hpp"
#include "cpwave/levy_sim.hpp"
#include "cpwave/theory.hpp"

namespace cpwave {

inline constexpr std::string_view kCurveCsvHeader =
    "process,scheme,dictionary,lambda,sigma0_sq,M,log2_M,mse_mean,mse_db,ci_lo,ci_hi,trials,seed";

/// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);
/// Inverse of format_number. Throws InvalidParameter on malformed input.
double parse_number(std::string_view text);

void write_curve_csv(std::ostream& out, const std::vector<CurveRecord>& records);
void write_curve_csv(const std::string& path, const std::vector<CurveRecord>& records);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CurveRecord& record);
CurveRecord record_from_json(const nlohmann::json& j);

struct CurveDocument {
  ExperimentConfig config;
  std::vector<CurveRecord> records;
};

std::string curve_json(const ExperimentConfig& config, const std::vector<CurveRecord>& records);
void write_curve_json(const std::string& path, const ExperimentConfig& config,
                      const std::vector<CurveRecord>& records);
CurveDocument parse_curve_json(std::string_view text);
CurveDocument read_curve_json(const std::string& path);

/// Rectangular table of preformatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table lemma_table(const LemmaReport& report);
Table theorem1_table(const std::vector<Theorem1Row>& rows, double lambda);
Table theory_table(const std::vector<TheoryPoint>& points, double lambda, double sigma0_sq);
Table path_table(const CompoundPoissonPath& path);
Table grid_table(const SampledPath& grid);

void write_table_csv(std::ostream& out, const Table& table);
/// {"meta": meta, "header": [...], "rows": [[...], ...]}; cells stay strings.
nlohmann::json table_json(const Table& table, const nlohmann::json& meta);

/// Writes `contents` to `path`, "-" meaning stdout. Throws IoError.
void write_text(const std::string& path, std::string_view contents);
std::string read_text(const std::string& path);

}  // namespace cpwave
