#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "hsvol/constants.hpp"
#include "hsvol/groups.hpp"
#include "hsvol/mixedstates.hpp"
#include "hsvol/sampling.hpp"
#include "hsvol/verify.hpp"

namespace py = pybind11;
using namespace hsvol;

namespace {

py::object to_pyint(const mpz_class& z) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

mpz_class from_pyint(const py::int_& i) { return mpz_class(py::str(i).cast<std::string>()); }

ExactValue from_int(const py::int_& i) { return ExactValue::rational(mpq_class(from_pyint(i))); }

RunConfig make_config(std::int64_t samples, std::uint64_t seed, int chunks, int workers) {
  return {samples, seed, chunks, workers};
}

py::dict estimate_dict(const MCEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["n_samples"] = e.n_samples;
  d["seed"] = e.seed;
  d["chunks"] = e.chunks;
  return d;
}

py::dict geometry_dict(const GeometrySummary& g) {
  py::dict d;
  d["outer_radius"] = g.outer_radius;
  d["inner_radius"] = g.inner_radius;
  d["effective_radius"] = g.effective_radius;
  d["gamma"] = g.gamma;
  d["chi1"] = g.chi1;
  d["chi2"] = g.chi2;
  d["chi"] = g.chi;
  d["log10_chi1"] = g.log10_chi1;
  d["log10_chi2"] = g.log10_chi2;
  d["log10_chi"] = g.log10_chi;
  return d;
}

// alpha as a float that must sit on the half-integer grid
HalfInteger half_integer(double x) {
  const double twice = 2.0 * x;
  if (twice < 1.0 || std::floor(twice) != twice) {
    throw std::domain_error("expected a positive integer or half-integer");
  }
  return HalfInteger::from_twice(static_cast<long>(twice));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Hilbert-Schmidt volumes and Monte Carlo checks";

  py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

  py::class_<ExactValue>(m, "ExactValue")
      .def(py::init<>())
      .def(py::init([](const py::int_& num, const py::int_& den) {
             if (from_pyint(den) == 0) throw std::domain_error("zero denominator");
             mpq_class q(from_pyint(num), from_pyint(den));
             q.canonicalize();
             return ExactValue::rational(q);
           }),
           py::arg("num"), py::arg("den") = 1)
      .def_static("parse", &ExactValue::parse)
      .def_static("sqrt", [](const py::int_& v) { return ExactValue::sqrt_of(mpq_class(from_pyint(v))); })
      .def_static("pi_power", &ExactValue::pi_power, py::arg("half_exponent"))
      .def_static("pi", &ExactValue::pi)
      .def_property_readonly("sign", &ExactValue::sign)
      .def_property_readonly("numerator", [](const ExactValue& v) { return to_pyint(v.magnitude().get_num()); })
      .def_property_readonly("denominator", [](const ExactValue& v) { return to_pyint(v.magnitude().get_den()); })
      .def_property_readonly("radicand", [](const ExactValue& v) { return to_pyint(v.radicand()); })
      .def_property_readonly("pi_half_exponent", &ExactValue::pi_half_exponent)
      .def("inverse", &ExactValue::inverse)
      .def("log10", &ExactValue::log10)
      .def("__pow__", &ExactValue::pow)
      .def("__float__", &ExactValue::to_double)
      .def("__str__", &ExactValue::to_string)
      .def("__repr__", [](const ExactValue& v) { return "ExactValue('" + v.to_string() + "')"; })
      .def("__hash__", [](const ExactValue& v) { return py::hash(py::str(v.to_string())); })
      .def(-py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(py::self == py::self)
      .def("__mul__", [](const ExactValue& a, const py::int_& b) { return a * from_int(b); })
      .def("__rmul__", [](const ExactValue& a, const py::int_& b) { return from_int(b) * a; })
      .def("__truediv__", [](const ExactValue& a, const py::int_& b) { return a / from_int(b); })
      .def("__rtruediv__", [](const ExactValue& a, const py::int_& b) { return from_int(b) / a; })
      .def("__eq__", [](const ExactValue& a, const py::int_& b) { return a == from_int(b); });

  m.def("gamma", [](double x) { return gamma_exact(half_integer(x)); }, py::arg("x"),
        "Gamma at a positive integer or half-integer, exactly.");

  m.def(
      "c_norm",
      [](int n, double alpha, double beta) -> py::object {
        if (auto p = exact_params(n, alpha, beta)) return py::cast(c_norm(*p));
        return py::cast(std::exp(log_c_norm(n, alpha, beta)));
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"),
      "Exact when alpha is a half-integer and beta is 1 or 2, float otherwise.");
  m.def("log_c_norm", &log_c_norm, py::arg("n"), py::arg("alpha"), py::arg("beta"));

  m.def(
      "volume",
      [](const std::string& family, int n, const std::string& convention) {
        return volume({parse_family(family), n}, parse_convention(convention));
      },
      py::arg("family"), py::arg("n"), py::arg("convention") = "A",
      "Volume of U, SU, O, SO (matrix size n), CP, RP (dimension n) or FlC, FlR (size n).");
  m.def("sphere_volume", &sphere_volume, py::arg("k"));
  m.def("ball_volume", &ball_volume, py::arg("k"));

  m.def(
      "vol_mixed", [](int n, const std::string& field) { return vol_mixed({n, parse_field(field)}); },
      py::arg("n"), py::arg("field") = "complex");
  m.def(
      "vol_edge",
      [](int n, int k, const std::string& field) { return vol_edge({n, parse_field(field)}, k); }, py::arg("n"),
      py::arg("k"), py::arg("field") = "complex");
  m.def(
      "geometry", [](int n, const std::string& field) { return geometry_dict(geometry({n, parse_field(field)})); },
      py::arg("n"), py::arg("field") = "complex");
  m.def(
      "reference_volume",
      [](const std::string& body, int dim, const ExactValue& size) {
        return reference_volume(parse_body(body), dim, size);
      },
      py::arg("body"), py::arg("dim"), py::arg("size") = ExactValue::integer(1));
  m.def(
      "reference_gamma",
      [](const std::string& body, int dim, const ExactValue& size) {
        return reference_gamma(parse_body(body), dim, size);
      },
      py::arg("body"), py::arg("dim"), py::arg("size") = ExactValue::integer(1));

  m.def(
      "sample",
      [](int n, const std::string& field, std::uint64_t seed, std::uint64_t stream, int count,
         const std::string& method) {
        RandomStream rng(seed, stream);
        const Field f = parse_field(field);
        if (method != "ginibre" && method != "partial-trace") throw std::domain_error("unknown method " + method);
        if (method == "partial-trace" && f != Field::Complex) {
          throw std::domain_error("partial-trace sampling is complex only");
        }
        std::vector<ComplexMatrix> out;
        for (int i = 0; i < count; ++i) {
          out.push_back(method == "ginibre" ? sample_hs_density(n, f, rng).matrix
                                            : sample_pure_partial_trace(n, rng).matrix);
        }
        return out;
      },
      py::arg("n"), py::arg("field") = "complex", py::arg("seed") = 1, py::arg("stream") = 0, py::arg("count") = 1,
      py::arg("method") = "ginibre", "HS-random density matrices.");
  m.def(
      "eigvalsh", [](const ComplexMatrix& h) { return eigvals_hermitian(h).values; }, py::arg("h"),
      "Eigenvalues of a Hermitian matrix, nonincreasing.");
  m.def(
      "is_positive", [](const ComplexMatrix& h, double tol) { return is_positive(h, tol); }, py::arg("h"),
      py::arg("tol") = kPositivityTol);

  py::class_<BlochBasis>(m, "BlochBasis")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("dimension", &BlochBasis::dimension)
      .def("generator", &BlochBasis::generator, py::arg("i"))
      .def("to_bloch", &BlochBasis::to_bloch, py::arg("rho"))
      .def("from_bloch", &BlochBasis::from_bloch, py::arg("tau"));

  m.def(
      "mc_purity",
      [](int n, const std::string& field, std::int64_t samples, std::uint64_t seed, int chunks, int workers) {
        return estimate_dict(mc_purity(n, parse_field(field), make_config(samples, seed, chunks, workers)));
      },
      py::arg("n"), py::arg("field") = "complex", py::arg("samples") = 100000, py::arg("seed") = 1,
      py::arg("chunks") = 16, py::arg("workers") = 1);
  m.def(
      "mc_norm_constant",
      [](int n, double alpha, double beta, std::int64_t samples, std::uint64_t seed, int chunks, int workers) {
        return estimate_dict(mc_norm_constant(n, alpha, beta, make_config(samples, seed, chunks, workers)));
      },
      py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("samples") = 100000, py::arg("seed") = 1,
      py::arg("chunks") = 16, py::arg("workers") = 1);
  m.def(
      "mc_hit_or_miss_fraction",
      [](int n, std::int64_t samples, std::uint64_t seed, int chunks, int workers) {
        return estimate_dict(mc_hit_or_miss_fraction(n, make_config(samples, seed, chunks, workers)));
      },
      py::arg("n"), py::arg("samples") = 100000, py::arg("seed") = 1, py::arg("chunks") = 16,
      py::arg("workers") = 1);
  m.def("hit_or_miss_expected", &hit_or_miss_expected, py::arg("n"));
  m.def(
      "spectral_fit_test",
      [](int n, const std::string& field, int bins, std::int64_t samples, std::uint64_t seed, bool negative_control) {
        const FitResult fit =
            spectral_fit_test(n, parse_field(field), bins, make_config(samples, seed, 16, 1),
                              negative_control ? SamplerVariant::SquareRealGinibre : SamplerVariant::Standard);
        py::dict d;
        d["statistic"] = fit.statistic;
        d["p_value"] = fit.p_value;
        d["dof"] = fit.degrees_of_freedom;
        d["observed"] = fit.observed;
        d["expected"] = fit.expected;
        return d;
      },
      py::arg("n"), py::arg("field") = "complex", py::arg("bins") = 20, py::arg("samples") = 100000,
      py::arg("seed") = 1, py::arg("negative_control") = false);
}
