// Copyright 2026 The cpwave Authors
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cpwave/approx.hpp"
#include "cpwave/dct.hpp"
#include "cpwave/errors.hpp"
#include "cpwave/haar.hpp"
#include "cpwave/harness.hpp"
#include "cpwave/levy_sim.hpp"
#include "cpwave/report.hpp"
#include "cpwave/theory.hpp"

namespace py = pybind11;
using namespace cpwave;

namespace {

py::dict atom_dict(const AtomId& atom) {
  py::dict d;
  d["kind"] = atom.is_scaling() ? "scaling" : "wavelet";
  d["scale"] = atom.scale();
  d["ind"] = atom.scale() <= 63 ? py::cast(ind(atom)) : py::none();
  d["origin"] = atom.origin().to_double();
  return d;
}

py::dict record_dict(const CurveRecord& r) {
  py::dict d;
  d["process"] = std::string(to_string(r.process));
  d["scheme"] = std::string(to_string(r.scheme));
  d["dictionary"] = std::string(to_string(r.dictionary));
  d["lambda"] = r.lambda ? py::cast(*r.lambda) : py::none();
  d["sigma0_sq"] = r.sigma0_sq;
  d["M"] = r.m;
  d["log2_M"] = r.log2_m;
  d["mse_mean"] = r.mse_mean;
  d["mse_db"] = r.mse_db;
  d["ci_lo"] = r.ci_lo;
  d["ci_hi"] = r.ci_hi;
  d["trials"] = r.trials;
  d["seed"] = r.seed;
  return d;
}

ExperimentConfig make_config(const std::string& process, std::optional<double> lambda,
                             const std::vector<std::string>& schemes,
                             const std::string& dictionary,
                             const std::vector<std::uint64_t>& m_values, int grid_log2,
                             std::uint64_t trials, std::uint64_t seed, double sigma0_sq,
                             std::optional<double> jump_variance) {
  ExperimentConfig c;
  c.process = parse_process(process);
  c.lambda = lambda;
  c.schemes.clear();
  for (const auto& s : schemes) c.schemes.push_back(parse_scheme(s));
  c.dictionary = parse_dictionary(dictionary);
  c.m_values = m_values;
  c.grid_log2 = grid_log2;
  c.trials = trials;
  c.master_seed = seed;
  c.sigma0_sq = sigma0_sq;
  c.jump_variance = jump_variance;
  return c;
}

}  // namespace

PYBIND11_MODULE(_cpwave, m) {
  m.doc() = "Compound Poisson paths, exact Haar coefficients and M-term approximation";

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::class_<CompoundPoissonPath>(m, "CompoundPoissonPath")
      .def_property_readonly("lambda_", &CompoundPoissonPath::lambda)
      .def_property_readonly("jump_count", &CompoundPoissonPath::jump_count)
      .def_property_readonly("jump_times", &CompoundPoissonPath::jump_times)
      .def_property_readonly("heights",
                             [](const CompoundPoissonPath& p) {
                               return std::vector<double>(p.heights().begin(), p.heights().end());
                             })
      .def_property_readonly("jump_variance",
                             [](const CompoundPoissonPath& p) { return p.law().variance(); })
      .def("total_variation", &CompoundPoissonPath::total_variation)
      .def("eval", [](const CompoundPoissonPath& p, double t) { return eval(p, t); }, py::arg("t"))
      .def("min_spacing", [](const CompoundPoissonPath& p) { return min_spacing(p); })
      .def("l2_norm_sq", [](const CompoundPoissonPath& p) { return path_l2_norm_sq(p); })
      .def("sample_grid",
           [](const CompoundPoissonPath& p, int grid_log2) { return sample_grid(p, grid_log2).values; },
           py::arg("grid_log2"));

  m.def(
      "sample_path",
      [](double lambda, std::uint64_t seed, std::uint64_t stream_index,
         std::optional<double> jump_variance) {
        RandomStream stream(seed, stream_index);
        return sample_path(lambda, JumpLaw::gaussian(jump_variance.value_or(1.0 / lambda)), stream);
      },
      py::arg("lambda_"), py::arg("seed"), py::arg("stream_index") = 0,
      py::arg("jump_variance") = py::none(),
      "Draws the path of trial `stream_index`; jump variance defaults to 1/lambda.");
  m.def(
      "path_from_times",
      [](double lambda, const std::vector<double>& times, const std::vector<double>& heights,
         double jump_variance) {
        return CompoundPoissonPath::from_times(lambda, JumpLaw::gaussian(jump_variance), times,
                                               heights);
      },
      py::arg("lambda_"), py::arg("times"), py::arg("heights"), py::arg("jump_variance") = 1.0);
  m.def(
      "brownian_grid",
      [](double sigma0_sq, int grid_log2, std::uint64_t seed, std::uint64_t stream_index) {
        RandomStream stream(seed, stream_index);
        return brownian_grid(sigma0_sq, grid_log2, stream).values;
      },
      py::arg("sigma0_sq"), py::arg("grid_log2"), py::arg("seed"), py::arg("stream_index") = 0);

  m.def(
      "coeff",
      [](const CompoundPoissonPath& p, std::optional<int> scale, std::uint64_t shift) {
        const AtomId atom = scale ? AtomId::wavelet(*scale, shift) : AtomId::scaling();
        const auto c = coeff(p, atom);
        return py::make_tuple(c.value, c.jump_count);
      },
      py::arg("path"), py::arg("scale") = py::none(), py::arg("shift") = 0,
      "(value, jump_count) of psi_{scale,shift}, or of phi when scale is None.");
  m.def(
      "expand_dense",
      [](const CompoundPoissonPath& p, int max_scale) { return expand(p, max_scale).dense(); },
      py::arg("path"), py::arg("max_scale"), "All coefficients of scale <= max_scale in Ind order.");
  m.def("energy_beyond_scale", &energy_beyond_scale, py::arg("path"), py::arg("scale"));
  m.def("coeff_envelope", &coeff_envelope, py::arg("scale"), py::arg("path"));
  m.def("phi_tilde", &phi_tilde, py::arg("t"));
  m.def("psi_tilde", &psi_tilde, py::arg("scale"), py::arg("shift"), py::arg("t"));
  m.def("ind", [](int scale, std::uint64_t shift) { return ind(AtomId::wavelet(scale, shift)); },
        py::arg("scale"), py::arg("shift"));
  m.def("discrete_haar_forward",
        [](const std::vector<double>& x) { return discrete_haar_forward(x); }, py::arg("samples"));
  m.def("discrete_haar_inverse",
        [](const std::vector<double>& x) { return discrete_haar_inverse(x); }, py::arg("coeffs"));
  m.def("dct2_forward", [](const std::vector<double>& x) { return dct2_forward(x); },
        py::arg("samples"));
  m.def("dct2_inverse", [](const std::vector<double>& x) { return dct2_inverse(x); },
        py::arg("coeffs"));

  m.def(
      "select",
      [](const std::string& scheme, const CompoundPoissonPath& p, std::uint64_t m_terms) {
        const auto s = select(parse_scheme(scheme), p, m_terms);
        py::list kept;
        for (const auto& k : s.kept) {
          py::dict d = atom_dict(k.atom);
          d["value"] = k.value;
          kept.append(d);
        }
        py::dict out;
        out["scheme"] = std::string(to_string(s.scheme));
        out["M"] = s.m;
        out["kept"] = kept;
        out["error_sq"] = s.error_sq;
        out["certified"] = s.certified;
        out["stop_scale"] = s.stop_scale ? py::cast(*s.stop_scale) : py::none();
        return out;
      },
      py::arg("scheme"), py::arg("path"), py::arg("m"));
  m.def(
      "select_discrete",
      [](const std::string& scheme, const std::vector<double>& coeffs, std::size_t m_terms) {
        const auto s = select_discrete(parse_scheme(scheme), coeffs, m_terms);
        py::dict out;
        out["scheme"] = std::string(to_string(s.scheme));
        out["M"] = s.m;
        out["kept_indices"] = s.kept_indices;
        out["kept_values"] = s.kept_values;
        out["error_sq"] = s.error_sq;
        return out;
      },
      py::arg("scheme"), py::arg("coeffs"), py::arg("m"));

  m.def("linear_mse", &linear_mse, py::arg("m"), py::arg("sigma0_sq") = 1.0);
  m.def("spacing_survival", &spacing_survival, py::arg("n"), py::arg("delta"),
        py::arg("interval_length") = 1.0);
  m.def(
      "expected_two_pow",
      [](double lambda, std::uint64_t m_terms, double tol) {
        const auto v = expected_two_pow(lambda, m_terms, tol);
        return py::make_tuple(v.value, v.tail_bound);
      },
      py::arg("lambda_"), py::arg("m"), py::arg("tol") = 1e-300);
  m.def(
      "theorem1_envelope",
      [](std::uint64_t m_terms, double lambda, double sigma0_sq) {
        const auto t = theorem1_envelope(m_terms, lambda, sigma0_sq);
        py::dict d;
        d["M"] = t.m;
        d["linear_mse"] = t.linear_mse;
        d["e2mn"] = t.e2mn;
        d["e2mn_tail_bound"] = t.e2mn_tail_bound;
        d["envelope_lo"] = t.envelope_lo;
        d["envelope_hi"] = t.envelope_hi;
        d["c1"] = t.c1;
        d["c2"] = t.c2;
        return d;
      },
      py::arg("m"), py::arg("lambda_"), py::arg("sigma0_sq") = 1.0);
  m.def(
      "jm_bounds",
      [](std::uint64_t m_terms, std::uint64_t n, double delta) {
        const auto b = jm_bounds(m_terms, n, delta);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("m"), py::arg("n"), py::arg("delta"));
  m.def("tail_linear_variance", &tail_linear_variance, py::arg("j"), py::arg("sigma0_sq") = 1.0);

  m.def(
      "run_mse_curve",
      [](const std::string& process, std::optional<double> lambda,
         const std::vector<std::string>& schemes, const std::string& dictionary,
         const std::vector<std::uint64_t>& m_values, int grid_log2, std::uint64_t trials,
         std::uint64_t seed, double sigma0_sq, std::optional<double> jump_variance,
         unsigned threads) {
        const auto config = make_config(process, lambda, schemes, dictionary, m_values, grid_log2,
                                         trials, seed, sigma0_sq, jump_variance);
        std::vector<CurveRecord> records;
        {
          py::gil_scoped_release release;
          records = run_mse_curve(config, RunOptions{threads});
        }
        py::list out;
        for (const auto& r : records) out.append(record_dict(r));
        return out;
      },
      py::arg("process") = "cp", py::arg("lambda_") = py::none(),
      py::arg("schemes") = std::vector<std::string>{"linear", "greedy", "best"},
      py::arg("dictionary") = "haar", py::arg("m_values") = std::vector<std::uint64_t>{4, 8, 16},
      py::arg("grid_log2") = 10, py::arg("trials") = 1000, py::arg("seed") = 0,
      py::arg("sigma0_sq") = 1.0, py::arg("jump_variance") = py::none(), py::arg("threads") = 0,
      "Monte Carlo MSE records, one dict per (scheme, M).");
  m.def(
      "mse_curve_csv",
      [](const std::string& process, std::optional<double> lambda,
         const std::vector<std::string>& schemes, const std::string& dictionary,
         const std::vector<std::uint64_t>& m_values, int grid_log2, std::uint64_t trials,
         std::uint64_t seed, double sigma0_sq, std::optional<double> jump_variance,
         unsigned threads) {
        const auto config = make_config(process, lambda, schemes, dictionary, m_values, grid_log2,
                                         trials, seed, sigma0_sq, jump_variance);
        std::ostringstream out;
        {
          py::gil_scoped_release release;
          write_curve_csv(out, run_mse_curve(config, RunOptions{threads}));
        }
        return out.str();
      },
      py::arg("process") = "cp", py::arg("lambda_") = py::none(),
      py::arg("schemes") = std::vector<std::string>{"linear", "greedy", "best"},
      py::arg("dictionary") = "haar", py::arg("m_values") = std::vector<std::uint64_t>{4, 8, 16},
      py::arg("grid_log2") = 10, py::arg("trials") = 1000, py::arg("seed") = 0,
      py::arg("sigma0_sq") = 1.0, py::arg("jump_variance") = py::none(), py::arg("threads") = 0,
      "Same as run_mse_curve, rendered as the CLI's CSV.");
}
