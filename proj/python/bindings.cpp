#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "urel/bounds.hpp"
#include "urel/cli.hpp"
#include "urel/decomposition.hpp"
#include "urel/ensembles.hpp"
#include "urel/errors.hpp"
#include "urel/oscillator.hpp"

namespace py = pybind11;
using namespace urel;

namespace {

py::dict report_dict(const UncertaintyReport& r) {
  py::dict d;
  d["commutator_term"] = r.commutator_term;
  d["anticommutator_term"] = r.anticommutator_term;
  d["skew_product_term"] = r.skew_product_term;
  d["m1_fwd"] = r.m1_fwd;
  d["m1_rev"] = r.m1_rev;
  d["m2_fwd"] = r.m2_fwd;
  d["m2_rev"] = r.m2_rev;
  d["m3_fwd"] = r.m3_fwd;
  d["m3_rev"] = r.m3_rev;
  d["M_thm22"] = r.M_thm22;
  d["M_tilde_thm41"] = r.M_tilde_thm41;
  d["lhs_heisenberg"] = r.lhs_heisenberg;
  d["lhs_schrodinger"] = r.lhs_schrodinger;
  d["lhs_thm21"] = r.lhs_thm21;
  d["lhs_thm22"] = r.lhs_thm22;
  d["lhs_thm41"] = r.lhs_thm41;
  d["rhs"] = r.rhs;
  py::dict margins;
  for (Bound b : kAllBounds) margins[py::str(std::string(bound_name(b)))] = r.margins.get(b);
  d["margins"] = margins;
  d["skew_info_A"] = r.skew_info_A;
  d["skew_info_B"] = r.skew_info_B;
  d["centered"] = r.centered;
  d["notes"] = r.notes;
  return d;
}

EnsembleKind parse_kind(const std::string& kind) {
  if (kind == "hilbert_schmidt_state") return EnsembleKind::hilbert_schmidt_state;
  if (kind == "pure_state") return EnsembleKind::pure_state;
  if (kind == "gaussian_hermitian") return EnsembleKind::gaussian_hermitian;
  throw ParameterError("unknown ensemble kind: " + kind);
}

}  // namespace

PYBIND11_MODULE(_urel, m) {
  m.doc() = "Uncertainty-relation bounds for mixed states";

  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<NotHermitianError>(m, "NotHermitianError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<NotPsdError>(m, "NotPsdError", PyExc_ValueError);
  py::register_exception<InvalidStateError>(m, "InvalidStateError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("hs_inner", &hs_inner, py::arg("t"), py::arg("s"));
  m.def("matrix_sqrt", [](const ComplexMatrix& rho) { return DensityMatrix(rho).sqrt(); },
        py::arg("rho"), "Principal square root of a density matrix.");
  m.def("skew_information",
        [](const ComplexMatrix& rho, const ComplexMatrix& a) {
          return skew_information(DensityMatrix(rho), HermitianOperator(a));
        },
        py::arg("rho"), py::arg("a"));
  m.def("evaluate_all",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& rho,
           bool centered) {
          return report_dict(
              evaluate_all(HermitianOperator(a), HermitianOperator(b), DensityMatrix(rho), centered));
        },
        py::arg("a"), py::arg("b"), py::arg("rho"), py::arg("centered") = true,
        "All bound terms, left-hand sides, rhs and margins as a dict.");
  m.def("verify",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& rho, double tol,
           bool centered) {
          return verify(evaluate_all(HermitianOperator(a), HermitianOperator(b),
                                     DensityMatrix(rho), centered),
                        tol)
              .pass;
        },
        py::arg("a"), py::arg("b"), py::arg("rho"), py::arg("tol") = 1e-9,
        py::arg("centered") = true);
  m.def("sample_density",
        [](Eigen::Index dim, Eigen::Index rank, std::uint64_t seed, const std::string& kind) {
          return sample_density({dim, rank, seed, parse_kind(kind)}).matrix();
        },
        py::arg("dim"), py::arg("rank"), py::arg("seed"),
        py::arg("kind") = "hilbert_schmidt_state");
  m.def("sample_hermitian",
        [](Eigen::Index dim, std::uint64_t seed) {
          return sample_hermitian({dim, dim, seed, EnsembleKind::gaussian_hermitian}).matrix();
        },
        py::arg("dim"), py::arg("seed"));

  m.def("pq_ops",
        [](Eigen::Index dim) {
          const auto pq = oscillator::pq_ops(oscillator::FockSpace(dim));
          return py::make_tuple(pq.p.matrix(), pq.q.matrix());
        },
        py::arg("dim"), "Truncated (P, Q) on the first dim Fock levels.");
  m.def("thermal_state",
        [](double beta, Eigen::Index dim) {
          return oscillator::thermal_state(beta, oscillator::FockSpace(dim)).matrix();
        },
        py::arg("beta"), py::arg("dim"));
  m.def("closed_forms",
        [](double beta) {
          const auto c = oscillator::closed_forms(beta);
          py::dict d;
          d["beta"] = c.beta;
          d["mean_occupation"] = c.mean_occupation;
          d["q_var"] = c.q_var;
          d["p_var"] = c.p_var;
          d["q_skew_trace"] = c.q_skew_trace;
          d["p_skew_trace"] = c.p_skew_trace;
          d["rhs"] = c.rhs;
          d["lhs_21"] = c.lhs_21;
          d["lhs_22"] = c.lhs_22;
          d["m1_pq"] = c.m1_pq;
          d["skew_info_q"] = c.skew_info_q;
          return d;
        },
        py::arg("beta"));
  m.def("convergence_sweep",
        [](double beta, const std::vector<Eigen::Index>& dims) {
          py::list out;
          for (const auto& row : oscillator::convergence_sweep(beta, dims)) {
            py::dict d = report_dict(row.report);
            d["dim"] = row.dim;
            d["max_deviation"] = row.max_deviation();
            out.append(d);
          }
          return out;
        },
        py::arg("beta"), py::arg("dims"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::vector<std::string> full{"urel"};
          full.insert(full.end(), args.begin(), args.end());
          std::vector<const char*> argv;
          for (const auto& a : full) argv.push_back(a.c_str());
          cli::RunConfig config;
          const int code = cli::parse_args(static_cast<int>(argv.size()), argv.data(), config);
          if (code >= 0) return py::make_tuple(code, std::string());
          cli::validate(config);
          const cli::CommandResult r = cli::run(config);
          return py::make_tuple(r.exit_code, cli::render(r, config.output_format));
        },
        py::arg("args"),
        "Run a CLI subcommand in process; returns (exit_code, rendered output).");
}
