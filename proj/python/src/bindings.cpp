#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dcomp/error.hpp"
#include "dcomp/io.hpp"
#include "dcomp/parallel.hpp"
#include "dcomp/sampling.hpp"
#include "dcomp/version.hpp"

namespace py = pybind11;
using namespace dcomp;

namespace {

// Round-trips through the JSON text so Python gets plain dicts and lists.
py::object json_to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

DirichletPolynomial poly_from_dict(const std::map<Index, Complex>& coeffs) {
  for (const auto& [n, a] : coeffs) {
    (void)a;
    if (n == 0) throw InvalidArgument("Dirichlet indices start at 1");
  }
  return DirichletPolynomial(coeffs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dirichlet-series symbols, counting functions and composition operators";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "DcompError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<CertificationFailure>(m, "CertificationFailure", base.ptr());
  py::register_exception<BoundaryHit>(m, "BoundaryHit", base.ptr());
  py::register_exception<AdaptiveBoundFailure>(m, "AdaptiveBoundFailure", base.ptr());
  py::register_exception<TailNotNegligible>(m, "TailNotNegligible", base.ptr());

  py::class_<DirichletPolynomial>(m, "DirichletPolynomial")
      .def(py::init<>())
      .def(py::init(&poly_from_dict), py::arg("coeffs"))
      .def("coefficient", &DirichletPolynomial::coefficient)
      .def("to_dict", &DirichletPolynomial::to_map)
      .def("support_primes", &DirichletPolynomial::support_primes)
      .def("__len__", &DirichletPolynomial::size)
      .def("__call__", [](const DirichletPolynomial& f, Complex s) { return evaluate(f, s); })
      .def("__add__", [](const DirichletPolynomial& f, const DirichletPolynomial& g) { return f + g; })
      .def("__sub__", [](const DirichletPolynomial& f, const DirichletPolynomial& g) { return f - g; })
      .def("__mul__", [](const DirichletPolynomial& f, const DirichletPolynomial& g) { return multiply(f, g); })
      .def("__eq__", [](const DirichletPolynomial& f, const DirichletPolynomial& g) { return f == g; })
      .def("__repr__", [](const DirichletPolynomial& f) { return "DirichletPolynomial(" + to_json(f).dump() + ")"; });

  py::class_<Character>(m, "Character")
      .def(py::init<>())
      .def(py::init<const std::map<Index, Complex>&>(), py::arg("values"))
      .def_static("from_angles", &Character::from_angles)
      .def_static("vertical_translate", &Character::vertical_translate, py::arg("tau"), py::arg("primes"))
      .def("__call__", &Character::operator())
      .def("values", &Character::values)
      .def("angles", &Character::angles)
      .def("conj", &Character::conj);

  py::class_<SpaceTag>(m, "SpaceTag")
      .def_static("hardy", &SpaceTag::hardy)
      .def_static("bergman", &SpaceTag::bergman, py::arg("alpha"))
      .def_property_readonly("is_hardy", &SpaceTag::is_hardy)
      .def_readonly("alpha", &SpaceTag::alpha);

  py::class_<Symbol>(m, "Symbol")
      .def_static("certify",
                  [](int c0, const DirichletPolynomial& psi, double t_range, std::size_t samples) {
                    return Symbol::certify(c0, psi, CertifyParams{t_range, samples});
                  },
                  py::arg("c0"), py::arg("psi"), py::arg("t_range") = 1e3, py::arg("samples") = 1'000'000)
      .def_static("assume", &Symbol::assume, py::arg("c0"), py::arg("psi"))
      .def_static("from_corpus", [](const std::string& name) { return make_symbol(corpus_entry(name)); })
      .def_property_readonly("c0", &Symbol::c0)
      .def_property_readonly("psi", &Symbol::psi)
      .def_property_readonly("symbol_class", [](const Symbol& s) { return to_string(s.symbol_class()); })
      .def_property_readonly("certification",
                             [](const Symbol& s) { return json_to_python(to_json(s.certification())); })
      .def("__call__", [](const Symbol& s, Complex z) { return evaluate_symbol(s, z); })
      .def("__repr__", [](const Symbol& s) { return "Symbol(" + s.describe() + ")"; });

  m.def("corpus_names", [] {
    std::vector<std::string> names;
    for (const auto& s : corpus()) names.push_back(s.name);
    return names;
  });

  m.def("evaluate", &evaluate, py::arg("f"), py::arg("s"));
  m.def("derivative", &derivative);
  m.def("multiply", &multiply);
  m.def("exponentiate", &exponentiate, py::arg("f"), py::arg("max_index"), py::arg("max_terms") = 2'000'000);
  m.def("twist", &twist);
  m.def("character_power", &character_power);
  m.def("norm_squared", &norm_squared);

  m.def("certify_class",
        [](int c0, const DirichletPolynomial& psi, double t_range, std::size_t samples) {
          return json_to_python(to_json(certify_class(c0, psi, t_range, samples)));
        },
        py::arg("c0"), py::arg("psi"), py::arg("t_range") = 1e3, py::arg("samples") = 1'000'000);
  m.def("twist_symbol", &twist_symbol);
  m.def("evaluate_symbol", &evaluate_symbol);
  m.def("symbol_at_infinity", &symbol_at_infinity);

  m.def("find_preimages",
        [](const Symbol& phi, Complex w, std::array<double, 4> window, double tol) {
          return json_to_python(
              to_json(find_preimages_robust(phi, w, Rectangle{window[0], window[1], window[2], window[3]}, tol)));
        },
        py::arg("phi"), py::arg("w"), py::arg("window"), py::arg("tol") = 1e-7);
  m.def("nevanlinna_full",
        [](const Symbol& phi, Complex w, double t_trunc) { return json_to_python(to_json(nevanlinna_full(phi, w, t_trunc))); },
        py::arg("phi"), py::arg("w"), py::arg("t_trunc") = 64.0);
  m.def("restricted_counting",
        [](const Symbol& phi, Complex w) { return restricted_counting(phi, w).value; });
  m.def("weighted_counting",
        [](const Symbol& phi, Complex w, double alpha) { return weighted_counting(phi, w, alpha).value; });
  m.def("mean_counting",
        [](const Symbol& phi, double sigma0, double height, Complex w, double alpha) {
          return mean_counting(phi, sigma0, height, w, alpha).value;
        },
        py::arg("phi"), py::arg("sigma0"), py::arg("height"), py::arg("w"), py::arg("alpha"));
  m.def("estimate_bound_constant",
        [](const Symbol& phi, const std::vector<Complex>& grid, std::size_t characters) {
          std::vector<Index> primes = phi.psi().support_primes();
          if (primes.empty()) primes = {2};
          return estimate_bound_constant(phi, grid, kronecker_characters(primes, characters));
        },
        py::arg("phi"), py::arg("w_grid"), py::arg("characters") = 64);

  m.def("lp_norm_closed", &lp_norm_closed);
  m.def("lp_norm_mc",
        [](const DirichletPolynomial& f, const SpaceTag& space, const std::string& measure, std::uint64_t seed) {
          if (measure != "cauchy" && measure != "half") throw InvalidArgument("measure must be half or cauchy");
          const MeasureSpec mu = measure == "cauchy" ? MeasureSpec::cauchy_like() : MeasureSpec::half_indicator();
          QuadratureParams q;
          q.seed = seed;
          const McEstimate e = lp_norm_mc(f, space, mu, q);
          return py::make_tuple(e.value, e.error_estimate);
        },
        py::arg("f"), py::arg("space"), py::arg("measure") = "half", py::arg("seed") = 1);
  m.def("change_of_variables_check",
        [](const DirichletPolynomial& f, const Symbol& phi, const Character& chi) {
          return json_to_python(to_json(change_of_variables_check(f, phi, chi, QuadratureParams{})));
        });
  m.def("finite_T_bergman_norm", &finite_T_bergman_norm, py::arg("f"), py::arg("alpha"), py::arg("sigma0"),
        py::arg("height"));

  m.def("compose_basis_column", &compose_basis_column);
  m.def("assemble_matrix",
        [](const Symbol& phi, std::size_t N, const SpaceTag& space) {
          const OperatorMatrix mx = assemble_matrix(phi, N, space);
          return py::make_tuple(mx.row_indices, Eigen::MatrixXcd(mx.entries));
        },
        py::arg("phi"), py::arg("N"), py::arg("space") = SpaceTag::hardy(),
        "Returns (row_indices, entries) with entries[i, j] the coefficient of e_{row_indices[i]} in C(e_{j+1}).");
  m.def("singular_values",
        [](const Symbol& phi, std::size_t N, const SpaceTag& space) {
          return singular_values(assemble_matrix(phi, N, space));
        },
        py::arg("phi"), py::arg("N"), py::arg("space") = SpaceTag::hardy());
  m.def("compactness_report",
        [](const Symbol& phi, std::vector<std::size_t> truncations, std::vector<double> alphas, bool littleo) {
          ReportParams p;
          p.truncations = std::move(truncations);
          p.spaces = {SpaceTag::hardy()};
          for (double a : alphas) p.spaces.push_back(SpaceTag::bergman(a));
          p.run_littleo = littleo;
          return json_to_python(to_json(compactness_report(phi, p)));
        },
        py::arg("phi"), py::arg("truncations") = std::vector<std::size_t>{64, 128, 256, 512},
        py::arg("alphas") = std::vector<double>{0.0}, py::arg("littleo") = true);

  m.def("set_worker_count", &set_worker_count);
}
