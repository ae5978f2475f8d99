#include <sstream>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gma/cli/app.hpp"
#include "gma/errors.hpp"
#include "gma/kernel/cone.hpp"
#include "gma/kernel/constants.hpp"
#include "gma/kernel/symmetric.hpp"
#include "gma/pde/solver.hpp"
#include "gma/psh/psh.hpp"
#include "gma/toric/criterion.hpp"

namespace py = pybind11;
using namespace gma;

namespace {

Eigen::MatrixXd matrix_or_identity(const std::optional<Eigen::MatrixXd>& m, int n) {
  return m ? *m : Eigen::MatrixXd::Identity(n, n);
}

toric::Polytope polytope(const std::vector<std::vector<std::string>>& vertices) {
  if (vertices.empty()) throw ValidationError("polytope needs vertices");
  std::vector<toric::Point> pts;
  for (const auto& v : vertices) {
    toric::Point p;
    for (const auto& x : v) p.push_back(toric::parse_rational(x));
    pts.push_back(std::move(p));
  }
  return toric::Polytope::from_points(static_cast<int>(vertices[0].size()), pts);
}

psh::RadialMollifier mollifier(const std::string& kind, int n) {
  if (kind == "constant") return psh::RadialMollifier::constant(n);
  if (kind == "polynomial") return psh::RadialMollifier::polynomial(n);
  throw ValidationError("kernel must be 'constant' or 'polynomial'");
}

}  // namespace

PYBIND11_MODULE(gmalab, m) {
  m.doc() = "Generalised Monge-Ampere numerics: kernel, solver, toric checker and psh tools";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def("elem_sym", [](const std::vector<double>& lam, int k) { return kernel::elem_sym(lam, k); }, py::arg("lam"), py::arg("k"));
  m.def("elem_sym_all", [](const std::vector<double>& lam) { return kernel::elem_sym_all(lam); }, py::arg("lam"));

  m.def(
      "cone_margin",
      [](int n, const std::vector<double>& c, const std::vector<double>& lam, double t) {
        const auto r = kernel::cone_margin(kernel::CoefficientSet(n, c), t, kernel::EigenProfile(lam));
        py::dict d;
        d["margin"] = r.margin;
        d["satisfied"] = r.satisfied;
        d["per_index_load"] = r.perIndexLoad;
        return d;
      },
      py::arg("n"), py::arg("c"), py::arg("lam"), py::arg("t") = 1.0);

  m.def(
      "compute_fm",
      [](int n, const std::vector<double>& c, double classRatio) {
        return kernel::compute_fm(kernel::CoefficientSet(n, c), classRatio).fm;
      },
      py::arg("n"), py::arg("c"), py::arg("class_ratio") = 1.0);
  m.def("min_eig_EI", &kernel::min_eig_EI, py::arg("n"), py::arg("zeta"));

  m.def(
      "continuity_solve",
      [](int n, const std::vector<int>& shape, const std::vector<double>& c, const std::vector<double>& f,
         const std::optional<Eigen::MatrixXd>& W0, const std::optional<Eigen::MatrixXd>& X, const std::string& scheme) {
        pde::TorusGeometry g;
        g.n = n;
        g.gridShape = shape;
        g.W0 = matrix_or_identity(W0, n);
        g.X = matrix_or_identity(X, n);
        g.scheme = pde::scheme_from_string(scheme);
        pde::SolveState st;
        {
          py::gil_scoped_release release;
          st = pde::continuity_solve(g, kernel::CoefficientSet(n, c), f);
        }
        py::dict d;
        d["phi"] = py::array_t<double>(static_cast<py::ssize_t>(st.phi.size()), st.phi.data());
        d["slack"] = st.slack;
        d["c0"] = st.c0;
        d["residual_sup"] = st.residualSup;
        d["min_cone_margin"] = st.minConeMargin;
        d["stages"] = st.stages.size();
        return d;
      },
      py::arg("n"), py::arg("shape"), py::arg("c"), py::arg("f"), py::arg("W0") = py::none(), py::arg("X") = py::none(),
      py::arg("scheme") = "spectral");

  m.def(
      "toric_check",
      [](const std::vector<std::vector<std::string>>& omega, const std::vector<std::vector<std::string>>& chi,
         const std::vector<std::string>& c, const std::map<std::string, std::string>& labels) {
        const toric::ClassPolytopePair pair(polytope(omega), polytope(chi), labels);
        toric::ToricCoefficients tc{pair.dim(), {}};
        for (const auto& x : c) tc.c.push_back(toric::parse_rational(x));
        const auto rep = toric::check_criterion(pair, tc);
        py::list faces;
        for (const auto& f : rep.perFace) {
          py::dict fd;
          fd["face"] = f.face;
          fd["codim"] = f.codim;
          fd["lhs"] = toric::to_string(f.lhs);
          fd["ratio"] = toric::to_string(f.ratio);
          fd["conditioned"] = f.conditioned;
          faces.append(fd);
        }
        py::dict d;
        d["pass"] = rep.pass;
        d["epsilon_uniform"] = toric::to_string(rep.epsilonUniform);
        d["worst_face"] = rep.worstFace;
        d["faces"] = faces;
        return d;
      },
      py::arg("omega"), py::arg("chi"), py::arg("c"), py::arg("labels") = std::map<std::string, std::string>{});
  m.def(
      "jequation_constant",
      [](const std::vector<std::vector<std::string>>& omega, const std::vector<std::vector<std::string>>& chi, int k) {
        return toric::to_string(toric::jequation_constant(toric::ClassPolytopePair(polytope(omega), polytope(chi)), k));
      },
      py::arg("omega"), py::arg("chi"), py::arg("k") = 1);
  m.def(
      "mixed_volume",
      [](const std::vector<std::vector<std::vector<std::string>>>& ps) {
        std::vector<toric::Polytope> list;
        for (const auto& p : ps) list.push_back(polytope(p));
        return toric::to_string(toric::mixed_volume(list));
      },
      py::arg("polytopes"));

  m.def(
      "regularized_max", [](double a, double b, double eta) { return psh::regularized_max(a, b, eta); }, py::arg("a"),
      py::arg("b"), py::arg("eta"));
  m.def(
      "compute_cn", [](int n, const std::string& kind) { return psh::compute_cn(mollifier(kind, n), n); }, py::arg("n"),
      py::arg("kernel") = "constant");
  m.def(
      "lelong_table",
      [](int n, double gamma, double r, const std::vector<double>& deltas) {
        const auto sp = psh::SingularPotential::log_pole(n, gamma, Eigen::VectorXd::Zero(2 * n));
        return psh::lelong_level(sp, sp.center, deltas, r).nuAtDelta;
      },
      py::arg("n"), py::arg("gamma"), py::arg("r"), py::arg("deltas"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one gma command; returns (exit code, stdout, stderr).");
}
