// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "cpwave/errors.hpp"
#include "cpwave/report.hpp"

using namespace cpwave;

namespace {

std::string csv_of(const std::vector<CurveRecord>& r) {
  std::ostringstream out;
  write_curve_csv(out, r);
  return out.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cpwave_test_" + name);
}

CurveRecord sample_record() {
  CurveRecord r;
  r.process = ProcessKind::kCompoundPoisson;
  r.scheme = Scheme::kBest;
  r.dictionary = Dictionary::kHaarAnalytic;
  r.lambda = 10.0;
  r.sigma0_sq = 1.0;
  r.m = 12;
  r.log2_m = std::log2(12.0);
  r.mse_mean = 0.1 / 3.0;
  r.mse_db = 10.0 * std::log10(r.mse_mean);
  r.ci_lo = 0.03;
  r.ci_hi = 0.0366;
  r.trials = 1000;
  r.seed = 18446744073709551615ull;
  return r;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(std::nan("")) == "nan");
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5}) CHECK(parse_number(format_number(x)) == x);
  CHECK(std::isinf(parse_number("-inf")));
  CHECK_THROWS_AS(parse_number("1.5x"), InvalidParameter);
}

TEST_CASE("CSV layout") {
  CHECK(csv_of({}) == std::string(kCurveCsvHeader) + "\n");
  const auto one = csv_of({sample_record()});
  CHECK(std::count(one.begin(), one.end(), '\n') == 2);
  CHECK(one.substr(one.find('\n') + 1) ==
        "cp,best,haar,10,1,12,3.5849625007211561,0.033333333333333333,-14.771212547196624,"
        "0.029999999999999999,0.036600000000000001,1000,18446744073709551615\n");
  auto bm = sample_record();
  bm.process = ProcessKind::kBrownian;
  bm.lambda.reset();
  bm.mse_mean = 0.0;
  bm.mse_db = -std::numeric_limits<double>::infinity();
  const auto row = csv_of({bm});
  CHECK(row.find("bm,best,haar,,1,") != std::string::npos);
  CHECK(row.find(",0,-inf,") != std::string::npos);
}

TEST_CASE("JSON round trip reproduces config and records") {
  ExperimentConfig c;
  c.process = ProcessKind::kCompoundPoisson;
  c.lambda = 0.1 + 0.2;
  c.sigma0_sq = 1.0 / 3.0;
  c.jump_variance = 0.7;
  c.schemes = {Scheme::kBest, Scheme::kLinear};
  c.dictionary = Dictionary::kDct;
  c.m_values = {1, 5, 1024};
  c.grid_log2 = 11;
  c.trials = 77;
  c.master_seed = 18446744073709551615ull;
  c.output_path = "out.json";
  auto zero = sample_record();
  zero.mse_mean = 0.0;
  zero.mse_db = -std::numeric_limits<double>::infinity();
  const std::vector<CurveRecord> records{sample_record(), zero};

  const auto path = temp_file("roundtrip.json").string();
  write_curve_json(path, c, records);
  const auto doc = read_curve_json(path);
  CHECK(doc.config == c);
  CHECK(doc.records == records);
  CHECK(curve_json(doc.config, doc.records) == read_text(path));
  std::filesystem::remove(path);

  ExperimentConfig bm;
  bm.process = ProcessKind::kBrownian;
  bm.dictionary = Dictionary::kHaarDiscrete;
  bm.m_values = {4};
  const auto again = parse_curve_json(curve_json(bm, {}));
  CHECK(again.config == bm);
  CHECK(again.records.empty());
  CHECK_THROWS_AS(parse_curve_json("{\"config\": 3}"), InvalidParameter);
  CHECK_THROWS_AS(parse_curve_json("not json"), InvalidParameter);
}

TEST_CASE("I/O failures carry the path") {
  try {
    write_text("/nonexistent-dir/x.csv", "a");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(read_text("/nonexistent-dir/y.json"), IoError);
}

TEST_CASE("tables") {
  Table t{{"a", "b"}, {{"1", "2"}, {"3", "4"}}};
  std::ostringstream out;
  write_table_csv(out, t);
  CHECK(out.str() == "a,b\n1,2\n3,4\n");
  const auto j = table_json(t, {{"k", 1}});
  CHECK(j["rows"][1][0] == "3");
  CHECK(j["meta"]["k"] == 1);
  const auto th = theory_table({theorem1_envelope(4, 1.0, 1.0)}, 1.0, 1.0);
  CHECK(th.header.size() == th.rows[0].size());
}
