// pybind11 module exposing the main reductions, searches and generators.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ils/bench.hpp"
#include "ils/dense.hpp"
#include "ils/eils.hpp"
#include "ils/factor.hpp"
#include "ils/reduce_quadratic.hpp"
#include "ils/reduce_standard.hpp"
#include "ils/search.hpp"

namespace py = pybind11;
using namespace ils;

namespace {

Matrix to_matrix(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
  Matrix m(a.shape(0), a.shape(1));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = r(i, j);
  return m;
}

Vector to_vector(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
  Vector v(a.shape(0));
  auto r = a.unchecked<1>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i) v[i] = r(i);
  return v;
}

py::array_t<double> from_matrix(const Matrix& m) {
  py::array_t<double> a({m.rows(), m.cols()});
  auto w = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
  return a;
}

py::array_t<double> from_vector(const Vector& v) {
  py::array_t<double> a(v.size());
  auto w = a.mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.size(); ++i) w(i) = v[i];
  return a;
}

py::array_t<long long> from_int_matrix(const IntMatrix& m) {
  py::array_t<long long> a({m.order(), m.order()});
  auto w = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) w(i, j) = m(i, j);
  return a;
}

py::array_t<long long> from_int_vector(const IntVector& v) {
  py::array_t<long long> a(v.size());
  auto w = a.mutable_unchecked<1>();
  for (std::size_t i = 0; i < v.size(); ++i) w(i) = v[i];
  return a;
}

py::dict outcome_dict(const SearchOutcome& o) {
  py::dict d;
  d["found"] = o.found;
  d["x"] = from_int_vector(o.x_opt);
  d["z"] = from_int_vector(o.z_opt);
  d["babai"] = from_int_vector(o.babai);
  d["objective"] = o.beta_sq;
  d["nodes"] = o.nodes;
  return d;
}

using NpMatrix = py::array_t<double, py::array::c_style | py::array::forcecast>;
using NpVector = py::array_t<double, py::array::c_style | py::array::forcecast>;

}  // namespace

PYBIND11_MODULE(pyils, m) {
  m.doc() = "Integer least squares: reductions, Schnorr-Euchner search, "
            "ellipsoid-constrained solving";

  m.def(
      "reduce_standard",
      [](NpMatrix A, NpVector y, const std::string& method) {
        Matrix a = to_matrix(A);
        Vector yv = to_vector(y);
        QrzReduction red = method == "plll" ? plll_reduce(a, yv)
                          : method == "sorted_qr" ? sorted_qr(a, yv)
                                                  : lll_reduce(a, yv);
        py::dict d;
        d["R"] = from_matrix(red.R);
        d["Z"] = from_int_matrix(red.uz.Z);
        d["ybar"] = from_vector(red.ybar);
        d["igt_count"] = red.igt_count;
        d["swap_count"] = red.swap_count;
        return d;
      },
      py::arg("A"), py::arg("y"), py::arg("method") = "lll");

  m.def(
      "reduce_quadratic",
      [](NpMatrix W, NpVector xhat, const std::string& method) {
        LtdlState st = reduce_quadratic_by_name(method, to_matrix(W), to_vector(xhat));
        py::dict d;
        d["L"] = from_matrix(st.L);
        d["D"] = from_vector(st.d);
        d["Z"] = from_int_matrix(st.uz.Z);
        d["zhat"] = from_vector(st.zhat);
        d["igt_count"] = st.igt_count;
        d["perm_count"] = st.perm_count;
        return d;
      },
      py::arg("W"), py::arg("xhat"), py::arg("method") = "lambda");

  m.def(
      "solve_standard",
      [](NpMatrix A, NpVector y, const std::string& method) {
        Matrix a = to_matrix(A);
        Vector yv = to_vector(y);
        QrzReduction red = method == "plll" ? plll_reduce(a, yv) : lll_reduce(a, yv);
        SearchOutcome out = search_standard(red.R, red.ybar);
        if (out.found) out.x_opt = red.uz.Z.mul(out.z_opt);
        return outcome_dict(out);
      },
      py::arg("A"), py::arg("y"), py::arg("method") = "lll");

  m.def(
      "solve_quadratic",
      [](NpMatrix W, NpVector xhat, const std::string& method) {
        LtdlState st = reduce_quadratic_by_name(method, to_matrix(W), to_vector(xhat));
        return outcome_dict(search_quadratic(st));
      },
      py::arg("W"), py::arg("xhat"), py::arg("method") = "lambda");

  m.def(
      "solve_eils",
      [](NpMatrix A, NpVector y, double alpha, const std::string& method) {
        EilsProblem p{to_matrix(A), to_vector(y), alpha};
        return outcome_dict(solve_eils(
            p, method == "clll" ? EilsStrategy::clll : EilsStrategy::lll));
      },
      py::arg("A"), py::arg("y"), py::arg("alpha"), py::arg("method") = "lll");

  m.def("psi", [](NpMatrix W) { return psi(to_matrix(W)); }, py::arg("W"));
  m.def("cond_spd", [](NpMatrix W) { return cond_spd(to_matrix(W)); }, py::arg("W"));

  m.def(
      "ltdl",
      [](NpMatrix W) {
        LtdlFactors f = ltdl(to_matrix(W));
        return py::make_tuple(from_matrix(f.L), from_vector(f.d));
      },
      py::arg("W"));

  m.def(
      "box_envelope",
      [](NpMatrix R, double alpha) {
        BoxEnvelope env = box_envelope(to_matrix(R), alpha);
        return py::make_tuple(from_int_vector(env.lbar), from_int_vector(env.ubar));
      },
      py::arg("R"), py::arg("alpha"));

  m.def(
      "gen_case",
      [](int case_id, int n, std::uint64_t seed) {
        auto [W, xhat] = gen_case(CaseSpec{case_id, n, seed});
        return py::make_tuple(from_matrix(W), from_vector(xhat));
      },
      py::arg("case_id"), py::arg("n"), py::arg("seed"));

  m.def(
      "gen_eils",
      [](int n, double sigma, std::uint64_t seed) {
        EilsProblem p = gen_eils(n, sigma, seed);
        return py::make_tuple(from_matrix(p.A), from_vector(p.y), p.alpha);
      },
      py::arg("n"), py::arg("sigma"), py::arg("seed"));
}
