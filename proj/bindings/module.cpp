// Python bindings for the float backend: system construction, Gram and
// recurrence data, kernels, point-mass and degree-2 multiplier modifications,
// and the asymptotic tables.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>

#include "momentops/christoffel.hpp"
#include "momentops/families.hpp"
#include "momentops/moments.hpp"
#include "momentops/ops.hpp"
#include "momentops/uvarov.hpp"

namespace py = pybind11;
using namespace momentops;

namespace {

using Mat = Matrix<double>;
using Rows = std::vector<std::vector<double>>;

Rows mat_to_rows(const Mat& m) {
  Rows out(m.rows(), std::vector<double>(m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

struct PySystem {
  std::shared_ptr<OPSystem<double>> ops;

  static PySystem ball(int d, double mu, int degree) {
    return {std::make_shared<OPSystem<double>>(ball_functional<double>(d, mu),
                                               degree)};
  }
  static PySystem bessel_laguerre(double g, double gamma, int degree) {
    return {std::make_shared<OPSystem<double>>(
        bessel_laguerre_functional<double>(g, gamma), degree)};
  }
  static PySystem from_moments(int d,
                               std::map<std::vector<int>, double> moments,
                               int degree) {
    std::map<MultiIndex, double> table;
    for (auto& [k, v] : moments) table.emplace(MultiIndex(k), v);
    return {std::make_shared<OPSystem<double>>(
        MomentFunctional<double>::from_table(d, std::move(table), "python"),
        degree)};
  }

  int dimension() const { return ops->dimension(); }
  int max_degree() const { return ops->max_degree(); }
  Rows gram(int n) const { return mat_to_rows(ops->gram(n)); }
  Rows gram_inverse(int n) const { return mat_to_rows(ops->gram_inverse(n)); }
  std::vector<Rows> polynomial(int n) const {
    std::vector<Rows> blocks;
    for (const auto& G : ops->polynomial(n).G) blocks.push_back(mat_to_rows(G));
    return blocks;
  }
  std::pair<Rows, Rows> three_term(int n, int i) const {
    auto [B, C] = ops->three_term(n, i);
    return {mat_to_rows(B), mat_to_rows(C)};
  }
  double kernel(int n, std::vector<double> x, std::vector<double> y) const {
    return ops->kernel(n, x, y);
  }
};

struct PyUvarov {
  std::shared_ptr<OPSystem<double>> base;
  std::unique_ptr<UvarovSystem<double>> uv;

  PyUvarov(const PySystem& sys, std::vector<std::vector<double>> points,
           std::vector<double> masses)
      : base(sys.ops),
        uv(std::make_unique<UvarovSystem<double>>(
            *base, UvarovSpec<double>(std::move(points), std::move(masses)),
            base->max_degree())) {}

  std::vector<std::tuple<int, double, bool>> certificates() const {
    std::vector<std::tuple<int, double, bool>> out;
    for (const auto& c : uv->certificates())
      out.emplace_back(c.degree, c.det_mag, c.invertible);
    return out;
  }
  bool certified_through(int n) const { return uv->certified_through(n); }
  std::vector<Rows> connect(int n) const {
    std::vector<Rows> blocks;
    for (const auto& G : uv->connect(n).G) blocks.push_back(mat_to_rows(G));
    return blocks;
  }
  Rows modified_gram(int n) const { return mat_to_rows(uv->modified_gram(n)); }
  double modified_kernel(int n, std::vector<double> x,
                         std::vector<double> y) const {
    return uv->modified_kernel(n, x, y);
  }
};

struct PyChristoffel {
  std::shared_ptr<OPSystem<double>> base;
  std::shared_ptr<OPSystem<double>> modified;
  ConnectionCoeffs<double> conn;
  bool transport_ok = false;

  PyChristoffel(const PySystem& sys, std::vector<double> a2,
                std::vector<double> a1, double a0, double tol)
      : base(sys.ops) {
    QuadraticMultiplier<double> lam(base->dimension(), std::move(a2),
                                    std::move(a1), a0);
    modified = std::make_shared<OPSystem<double>>(
        left_multiply(base->functional(), lam.to_polynomial()),
        base->max_degree());
    conn = connection(*base, *modified, base->max_degree());
    transport_ok = transport_three_term(*base, conn, tol).all_hold();
  }

  PySystem modified_system() const { return {modified}; }
  Rows Mn(int n) const { return mat_to_rows(conn.Mn(n)); }
  Rows Nn(int n) const { return mat_to_rows(conn.Nn(n)); }
  bool transport_holds() const { return transport_ok; }
  std::tuple<std::vector<double>, std::vector<double>, double>
  recovered_multiplier() const {
    auto lam =
        recover_multiplier(*base, conn, modified->gram(0)(0, 0));
    return {lam.a2, lam.a1, lam.a0};
  }
};

}  // namespace

PYBIND11_MODULE(_momentops, m) {
  m.doc() =
      "Orthogonal polynomial systems from moment functionals: construction, "
      "point-mass and quadratic-multiplier modifications (float backend)";

  py::register_exception<NotQuasiDefinite>(m, "NotQuasiDefiniteError");
  py::register_exception<SingularGram>(m, "SingularGramError");
  py::register_exception<SingularMomentMatrix>(m, "SingularMomentMatrixError");
  py::register_exception<InadmissibleParameters>(m,
                                                 "InadmissibleParametersError");

  py::class_<PySystem>(m, "System")
      .def_static("ball", &PySystem::ball, py::arg("d"), py::arg("mu"),
                  py::arg("degree"))
      .def_static("bessel_laguerre", &PySystem::bessel_laguerre, py::arg("g"),
                  py::arg("gamma"), py::arg("degree"))
      .def_static("from_moments", &PySystem::from_moments, py::arg("d"),
                  py::arg("moments"), py::arg("degree"))
      .def_property_readonly("dimension", &PySystem::dimension)
      .def_property_readonly("max_degree", &PySystem::max_degree)
      .def("gram", &PySystem::gram, py::arg("n"))
      .def("gram_inverse", &PySystem::gram_inverse, py::arg("n"))
      .def("polynomial", &PySystem::polynomial, py::arg("n"),
           "Coefficient blocks G_0..G_n of the monic degree-n vector")
      .def("three_term", &PySystem::three_term, py::arg("n"), py::arg("i"),
           "Pair (B_{n,i}, C_{n,i}) of recurrence matrices")
      .def("kernel", &PySystem::kernel, py::arg("n"), py::arg("x"),
           py::arg("y"));

  py::class_<PyUvarov>(m, "Uvarov")
      .def(py::init<const PySystem&, std::vector<std::vector<double>>,
                    std::vector<double>>(),
           py::arg("system"), py::arg("points"), py::arg("masses"))
      .def("certificates", &PyUvarov::certificates)
      .def("certified_through", &PyUvarov::certified_through, py::arg("n"))
      .def("connect", &PyUvarov::connect, py::arg("n"))
      .def("modified_gram", &PyUvarov::modified_gram, py::arg("n"))
      .def("modified_kernel", &PyUvarov::modified_kernel, py::arg("n"),
           py::arg("x"), py::arg("y"));

  py::class_<PyChristoffel>(m, "Christoffel")
      .def(py::init<const PySystem&, std::vector<double>, std::vector<double>,
                    double, double>(),
           py::arg("system"), py::arg("a2"), py::arg("a1"), py::arg("a0"),
           py::arg("tol") = 1e-10)
      .def("modified_system", &PyChristoffel::modified_system)
      .def("Mn", &PyChristoffel::Mn, py::arg("n"))
      .def("Nn", &PyChristoffel::Nn, py::arg("n"))
      .def("transport_holds", &PyChristoffel::transport_holds)
      .def("recovered_multiplier", &PyChristoffel::recovered_multiplier);

  m.def(
      "mass_limit_table",
      [](double mu, int d, double lam, std::vector<int> degrees) {
        std::vector<std::tuple<int, double, double, double>> out;
        for (const auto& r : ball_mass_limit_table(mu, d, lam, degrees))
          out.emplace_back(r.n, r.value, r.limit, r.rel_err);
        return out;
      },
      py::arg("mu"), py::arg("d"), py::arg("lam"), py::arg("degrees"),
      "Rows (n, K_n(v;0,0), 1/lambda, rel_err)");
  m.def(
      "interior_table",
      [](double mu, int d, double lam, double r, std::vector<int> degrees) {
        std::vector<std::tuple<int, double, double, double>> out;
        for (const auto& row : ball_interior_table(mu, d, lam, r, degrees))
          out.emplace_back(row.n, row.value, row.limit, row.rel_err);
        return out;
      },
      py::arg("mu"), py::arg("d"), py::arg("lam"), py::arg("r"),
      py::arg("degrees"), "Rows (n, normalized kernel, limit, rel_err)");
}
