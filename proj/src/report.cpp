// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include "cpwave/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cpwave/errors.hpp"

namespace cpwave {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidParameter("malformed number '" + std::string(text) + "'");
  }
  return value;
}

namespace {

std::string format_u64(std::uint64_t x) { return std::to_string(x); }

json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

double number_from_json(const json& j) {
  if (j.is_string()) return parse_number(j.get<std::string>());
  return j.get<double>();
}

json optional_json(const std::optional<double>& x) {
  if (!x) return nullptr;
  return number_json(*x);
}

std::optional<double> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return number_from_json(j);
}

}  // namespace

void write_curve_csv(std::ostream& out, const std::vector<CurveRecord>& records) {
  out << kCurveCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.process) << ',' << to_string(r.scheme) << ',' << to_string(r.dictionary)
        << ',' << (r.lambda ? format_number(*r.lambda) : std::string()) << ','
        << format_number(r.sigma0_sq) << ',' << format_u64(r.m) << ',' << format_number(r.log2_m)
        << ',' << format_number(r.mse_mean) << ',' << format_number(r.mse_db) << ','
        << format_number(r.ci_lo) << ',' << format_number(r.ci_hi) << ',' << format_u64(r.trials)
        << ',' << format_u64(r.seed) << '\n';
  }
}

void write_curve_csv(const std::string& path, const std::vector<CurveRecord>& records) {
  std::ostringstream out;
  write_curve_csv(out, records);
  write_text(path, out.str());
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["process"] = std::string(to_string(c.process));
  j["lambda"] = optional_json(c.lambda);
  j["sigma0_sq"] = number_json(c.sigma0_sq);
  j["jump_variance"] = optional_json(c.jump_variance);
  if (c.process == ProcessKind::kCompoundPoisson && c.lambda) {
    const JumpLaw law = c.jump_law();
    j["jump_law"] = {{"kind", "gaussian"}, {"variance", number_json(law.variance())}};
  } else {
    j["jump_law"] = nullptr;
  }
  json schemes = json::array();
  for (Scheme s : c.schemes) schemes.push_back(std::string(to_string(s)));
  j["schemes"] = schemes;
  j["dictionary"] = std::string(to_string(c.dictionary));
  j["m_values"] = c.m_values;
  j["grid_log2"] = c.grid_log2;
  j["trials"] = c.trials;
  j["master_seed"] = c.master_seed;
  j["output_path"] = c.output_path;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  try {
    ExperimentConfig c;
    c.process = parse_process(j.at("process").get<std::string>());
    c.lambda = optional_from_json(j.at("lambda"));
    c.sigma0_sq = number_from_json(j.at("sigma0_sq"));
    c.jump_variance = optional_from_json(j.at("jump_variance"));
    c.schemes.clear();
    for (const auto& s : j.at("schemes")) c.schemes.push_back(parse_scheme(s.get<std::string>()));
    c.dictionary = parse_dictionary(j.at("dictionary").get<std::string>());
    c.m_values = j.at("m_values").get<std::vector<std::uint64_t>>();
    c.grid_log2 = j.at("grid_log2").get<int>();
    c.trials = j.at("trials").get<std::uint64_t>();
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    c.output_path = j.at("output_path").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("malformed config JSON: ") + e.what());
  }
}

json to_json(const CurveRecord& r) {
  return {{"process", std::string(to_string(r.process))},
          {"scheme", std::string(to_string(r.scheme))},
          {"dictionary", std::string(to_string(r.dictionary))},
          {"lambda", optional_json(r.lambda)},
          {"sigma0_sq", number_json(r.sigma0_sq)},
          {"M", r.m},
          {"log2_M", number_json(r.log2_m)},
          {"mse_mean", number_json(r.mse_mean)},
          {"mse_db", number_json(r.mse_db)},
          {"ci_lo", number_json(r.ci_lo)},
          {"ci_hi", number_json(r.ci_hi)},
          {"trials", r.trials},
          {"seed", r.seed}};
}

CurveRecord record_from_json(const json& j) {
  try {
    CurveRecord r;
    r.process = parse_process(j.at("process").get<std::string>());
    r.scheme = parse_scheme(j.at("scheme").get<std::string>());
    r.dictionary = parse_dictionary(j.at("dictionary").get<std::string>());
    r.lambda = optional_from_json(j.at("lambda"));
    r.sigma0_sq = number_from_json(j.at("sigma0_sq"));
    r.m = j.at("M").get<std::uint64_t>();
    r.log2_m = number_from_json(j.at("log2_M"));
    r.mse_mean = number_from_json(j.at("mse_mean"));
    r.mse_db = number_from_json(j.at("mse_db"));
    r.ci_lo = number_from_json(j.at("ci_lo"));
    r.ci_hi = number_from_json(j.at("ci_hi"));
    r.trials = j.at("trials").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("malformed record JSON: ") + e.what());
  }
}

std::string curve_json(const ExperimentConfig& config, const std::vector<CurveRecord>& records) {
  json doc;
  doc["config"] = to_json(config);
  json rows = json::array();
  for (const auto& r : records) rows.push_back(to_json(r));
  doc["records"] = rows;
  return doc.dump(2) + "\n";
}

void write_curve_json(const std::string& path, const ExperimentConfig& config,
                      const std::vector<CurveRecord>& records) {
  write_text(path, curve_json(config, records));
}

CurveDocument parse_curve_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidParameter(std::string("malformed JSON: ") + e.what());
  }
  CurveDocument out;
  if (!doc.contains("config") || !doc.contains("records")) {
    throw InvalidParameter("JSON document lacks config or records");
  }
  out.config = config_from_json(doc["config"]);
  for (const auto& r : doc["records"]) out.records.push_back(record_from_json(r));
  return out;
}

CurveDocument read_curve_json(const std::string& path) { return parse_curve_json(read_text(path)); }

Table lemma_table(const LemmaReport& report) {
  Table t;
  t.header = {"n", "delta", "empirical", "theory", "abs_deviation", "sup_deviation",
              "paths_checked", "spacing_violations"};
  for (const auto& row : report.rows) {
    double sup = 0.0;
    for (std::size_t i = 0; i < report.n_values.size(); ++i) {
      if (report.n_values[i] == row.n) sup = report.sup_deviation[i];
    }
    t.rows.push_back({format_u64(row.n), format_number(row.delta), format_number(row.empirical),
                      format_number(row.theory), format_number(row.abs_deviation),
                      format_number(sup), format_u64(report.paths_checked),
                      format_u64(report.spacing_violations)});
  }
  return t;
}

Table theorem1_table(const std::vector<Theorem1Row>& rows, double lambda) {
  Table t;
  t.header = {"lambda", "M", "mse_mean", "ci_lo", "ci_hi", "envelope_lo", "envelope_hi",
              "e2mn", "mean_inside", "ci_intersects"};
  for (const auto& r : rows) {
    t.rows.push_back({format_number(lambda), format_u64(r.m), format_number(r.greedy.mean),
                      format_number(r.greedy.ci_lo), format_number(r.greedy.ci_hi),
                      format_number(r.theory.envelope_lo), format_number(r.theory.envelope_hi),
                      format_number(r.theory.e2mn), r.mean_inside ? "1" : "0",
                      r.ci_intersects ? "1" : "0"});
  }
  return t;
}

Table theory_table(const std::vector<TheoryPoint>& points, double lambda, double sigma0_sq) {
  Table t;
  t.header = {"lambda", "sigma0_sq", "M", "linear_mse", "e2mn", "e2mn_tail_bound",
              "envelope_lo", "envelope_hi", "c1", "c2"};
  for (const auto& p : points) {
    t.rows.push_back({format_number(lambda), format_number(sigma0_sq), format_u64(p.m),
                      format_number(p.linear_mse), format_number(p.e2mn),
                      format_number(p.e2mn_tail_bound), format_number(p.envelope_lo),
                      format_number(p.envelope_hi), format_number(p.c1), format_number(p.c2)});
  }
  return t;
}

Table path_table(const CompoundPoissonPath& path) {
  Table t;
  t.header = {"index", "time", "height", "value_after"};
  const auto times = path.jump_times();
  double level = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    level += path.heights()[i];
    t.rows.push_back({format_u64(i), format_number(times[i]), format_number(path.heights()[i]),
                      format_number(level)});
  }
  return t;
}

Table grid_table(const SampledPath& grid) {
  Table t;
  t.header = {"index", "t", "value"};
  const double h = std::ldexp(1.0, -grid.grid_log2);
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    t.rows.push_back({format_u64(i), format_number(static_cast<double>(i) * h),
                      format_number(grid.values[i])});
  }
  return t;
}

void write_table_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

json table_json(const Table& table, const json& meta) {
  return {{"meta", meta}, {"header", table.header}, {"rows", table.rows}};
}

void write_text(const std::string& path, std::string_view contents) {
  if (path == "-") {
    std::cout << contents;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return buf.str();
}

}  // namespace cpwave
