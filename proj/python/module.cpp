#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eas/charsums.hpp"
#include "eas/equidist.hpp"
#include "eas/intersect.hpp"
#include "eas/scheme.hpp"
#include "eas/walks.hpp"

namespace py = pybind11;

namespace {

using eas::gf::Field;
using eas::scheme::Distance;

const Field& field_of(std::int64_t q) { return Field::of(q); }

Distance parse_distance(const py::object& t) {
  if (py::isinstance<py::str>(t)) return Distance::parse(t.cast<std::string>());
  return Distance::field_value(t.cast<std::int64_t>());
}

py::array_t<double> to_numpy(const eas::Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  auto buf = out.mutable_unchecked<2>();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) buf(r, c) = m(r, c);
  return out;
}

py::array_t<std::int64_t> to_numpy(const eas::IntMatrix& m) {
  py::array_t<std::int64_t> out({m.rows(), m.cols()});
  auto buf = out.mutable_unchecked<2>();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) buf(r, c) = m(r, c);
  return out;
}

py::int_ int128_to_py(eas::Int128 v) {
  const std::string s = eas::int128_to_string(v);
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Euclidean association scheme toolkit (C++ core)";

  py::register_exception<eas::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<eas::ResidualError>(m, "ResidualError", PyExc_ArithmeticError);

  m.def(
      "field_modulus",
      [](std::int64_t q) { return field_of(q).modulus(); },
      py::arg("q"),
      "Coefficients (constant term first) of the deterministic modulus of F_q");

  m.def(
      "generator",
      [](std::int64_t q) { return field_of(q).generator().code(); },
      py::arg("q"), "Encoding of the deterministic primitive generator of F_q^x");

  m.def(
      "trace",
      [](std::int64_t q, std::int64_t x) { return field_of(q).element(x).trace(); },
      py::arg("q"), py::arg("x"), "Galois trace of the element with encoding x");

  m.def(
      "legendre",
      [](std::int64_t q, std::int64_t x) { return field_of(q).element(x).legendre(); },
      py::arg("q"), py::arg("x"), "Quadratic character of the element with encoding x");

  m.def(
      "gauss_sum",
      [](std::int64_t q, std::int64_t s) {
        return eas::charsums::gauss_sum(field_of(q).element(s));
      },
      py::arg("q"), py::arg("s"), "Quadratic Gauss sum G(s)");

  m.def(
      "kloosterman",
      [](std::int64_t q, std::int64_t a, std::int64_t b) {
        const Field& f = field_of(q);
        return eas::charsums::kloosterman(f.element(a), f.element(b)).value;
      },
      py::arg("q"), py::arg("a"), py::arg("b"), "Kloosterman sum K(a, b)");

  m.def(
      "twisted_kloosterman",
      [](std::int64_t q, int d, std::int64_t a, std::int64_t b) {
        const Field& f = field_of(q);
        return eas::charsums::twisted_kloosterman(d, f.element(a), f.element(b)).value;
      },
      py::arg("q"), py::arg("d"), py::arg("a"), py::arg("b"),
      "Twisted Kloosterman sum with the quadratic character to the d-th power");

  m.def(
      "moments",
      [](std::int64_t q, int max_ell) {
        const auto t = eas::charsums::moments(field_of(q), max_ell);
        py::list out;
        for (int ell = 1; ell <= max_ell; ++ell) out.append(int128_to_py(t.value(ell)));
        return out;
      },
      py::arg("q"), py::arg("max_ell"),
      "Kloosterman moments M_{q,l} for l = 1..max_ell, as exact integers");

  m.def(
      "angles",
      [](std::int64_t q) {
        const auto s = eas::equidist::angle_sample(field_of(q));
        return py::array_t<double>(py::ssize_t(s.angles.size()), s.angles.data());
      },
      py::arg("q"), "Sorted Kloosterman angles theta_{q,a}");

  m.def(
      "ks_distance",
      [](std::int64_t q) { return eas::equidist::ks_distance(field_of(q)); },
      py::arg("q"), "Kolmogorov-Smirnov distance of the angles to Sato-Tate");

  m.def("sato_tate_cdf", &eas::equidist::sato_tate_cdf, py::arg("theta"));

  m.def(
      "sato_tate_cos_power",
      [](int n) {
        return eas::equidist::sato_tate_expectation(eas::equidist::FuncSpec::cos_power(n));
      },
      py::arg("n"), "E_ST[cos^n theta]");

  m.def(
      "sphere_size",
      [](std::int64_t q, const py::object& t, int d) {
        return eas::scheme::sphere_size(parse_distance(t), field_of(q), d);
      },
      py::arg("q"), py::arg("t"), py::arg("d") = 2,
      "|S_t| in F_q^d; t is a field encoding or 'zbar'");

  m.def(
      "scheme_matrices",
      [](std::int64_t q, int d) {
        const auto m2 = eas::scheme::scheme_matrices(field_of(q), d);
        py::dict out;
        py::list labels;
        for (std::size_t i = 0; i < m2.delta.size(); ++i)
          labels.append(m2.delta.at(i).label());
        out["delta"] = labels;
        out["sphere_sizes"] = m2.sphere_sizes;
        out["weight_dims"] = m2.weight_dims;
        out["P"] = to_numpy(m2.P);
        out["Q"] = to_numpy(m2.Q);
        out["residual_pq"] = m2.pq_residual();
        return out;
      },
      py::arg("q"), py::arg("d") = 2,
      "Distance labels, sphere sizes, weight dimensions, and the P/Q matrices");

  m.def(
      "planar_intersection",
      [](std::int64_t q, std::int64_t i, std::int64_t j, std::int64_t k) {
        return eas::intersect::planar_intersection(i, j, k, field_of(q));
      },
      py::arg("q"), py::arg("i"), py::arg("j"), py::arg("k"),
      "Closed-form planar intersection number p_{i,j}^k");

  m.def(
      "brute_force_intersection",
      [](std::int64_t q, const py::object& i, const py::object& j, const py::object& k,
         int d) {
        return eas::intersect::brute_force_intersection(
            parse_distance(i), parse_distance(j), parse_distance(k), field_of(q), d);
      },
      py::arg("q"), py::arg("i"), py::arg("j"), py::arg("k"), py::arg("d") = 2,
      "Enumeration oracle for p_{i,j}^k in F_q^d");

  m.def(
      "intersection_matrix",
      [](std::int64_t q, const py::object& i, int d) {
        const auto im =
            eas::intersect::intersection_matrix(parse_distance(i), field_of(q), d);
        py::dict out;
        out["L"] = to_numpy(im.L);
        out["spectrum"] = im.spectrum;
        return out;
      },
      py::arg("q"), py::arg("i"), py::arg("d") = 2,
      "Intersection matrix L_i with its spectrum");

  m.def(
      "return_probability",
      [](std::int64_t q, std::int64_t t, int steps) {
        const auto r = eas::walks::return_probability(field_of(q), t, steps);
        py::dict out;
        out["exact"] = r.exact.str();
        out["numerator"] = int128_to_py(r.exact.num);
        out["denominator"] = int128_to_py(r.exact.den);
        out["float"] = r.float_return;
        out["asymptotic"] = r.asymptotic;
        out["trace"] = int128_to_py(r.trace_value);
        out["q_is_prime"] = r.q_is_prime;
        return out;
      },
      py::arg("q"), py::arg("t"), py::arg("steps"),
      "Exact return probability of the distance-t walk after `steps` steps");

  m.def(
      "simulate_walk",
      [](std::int64_t q, std::int64_t t, int steps, std::int64_t trials,
         std::uint64_t seed) {
        const auto r = eas::walks::simulate_walk(field_of(q), t, steps, trials, seed);
        py::dict out;
        out["trials"] = r.trials;
        out["successes"] = r.successes;
        out["estimate"] = r.estimate;
        out["stderr"] = r.standard_error;
        out["seed"] = r.seed;
        return out;
      },
      py::arg("q"), py::arg("t"), py::arg("steps"), py::arg("trials"),
      py::arg("seed") = 12345,
      "Seeded Monte-Carlo estimate of the return probability");

  m.def(
      "dense_adjacency",
      [](std::int64_t q, const py::object& t) {
        return to_numpy(eas::walks::dense_adjacency(field_of(q), parse_distance(t)));
      },
      py::arg("q"), py::arg("t"),
      "Literal q^2 x q^2 adjacency matrix of the planar distance-t graph");
}
