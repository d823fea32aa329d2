// Python bindings. Structured results cross the boundary as JSON-shaped dicts,
// the same shapes the CLI writes.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "bergman/density.hpp"
#include "bergman/json_io.hpp"
#include "bergman/seqlab.hpp"
#include "bergman/solver.hpp"
#include "bergman/spaces.hpp"

namespace py = pybind11;
using namespace bergman;
using nlohmann::json;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::handle& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

CPoint point(const std::vector<complex>& c) {
  if (c.empty() || c.size() > CPoint::kMaxDim) throw precondition_error("point dimension must lie in 1..8");
  return CPoint(std::span<const complex>(c));
}

std::vector<complex> coords(const CPoint& z) { return {z.coords().begin(), z.coords().end()}; }

double exponent(const py::object& p) {
  if (py::isinstance<py::str>(p)) {
    const auto s = p.cast<std::string>();
    if (s == "inf") return kInf;
    return std::stod(s);
  }
  return p.cast<double>();
}

PointSeq seq_from(const py::handle& o) { return point_seq_from_json(from_py(o)); }

}  // namespace

PYBIND11_MODULE(_bergman, m) {
  m.doc() = "Weighted Bergman space toolkit on the unit ball";

  py::register_exception<precondition_error>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<numerical_error>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("inv_distance", [](const std::vector<complex>& a, const std::vector<complex>& b) {
    return inv_distance(point(a), point(b));
  }, py::arg("a"), py::arg("b"));

  m.def("one_minus_dist_sq", [](const std::vector<complex>& a, const std::vector<complex>& b) {
    return one_minus_dist_sq(point(a), point(b));
  }, py::arg("a"), py::arg("b"));

  m.def("apply_automorphism", [](const std::vector<complex>& a, const std::vector<complex>& z) {
    return coords(apply_automorphism(point(a), point(z)));
  }, py::arg("a"), py::arg("z"));

  m.def("generate_net", [](std::size_t n, double r, int layers, std::uint64_t seed) {
    py::gil_scoped_release release;
    const PointSeq seq = generate_net(n, r, layers, seed);
    py::gil_scoped_acquire acquire;
    return to_py(to_json(seq));
  }, py::arg("n"), py::arg("r"), py::arg("layers"), py::arg("seed") = 0);

  m.def("separation", [](const py::object& seq) { return separation(seq_from(seq)); }, py::arg("seq"));

  m.def("k_value", [](const py::object& seq, double p, double q) {
    const KReport k = k_value(seq_from(seq), p, q);
    return to_py({{"value", k.value}, {"argmax_k", k.argmax_k}, {"per_k", k.per_k}});
  }, py::arg("seq"), py::arg("p"), py::arg("q"));

  m.def("kernel_norm", [](std::size_t n, const py::object& p, double alpha, double N, const std::vector<complex>& a,
                          const std::string& method, std::size_t samples, std::uint64_t seed) {
    QuadratureSpec q;
    q.method = quad_method_from_string(method);
    q.samples = samples;
    q.seed = seed;
    const SpaceParams sp(n, exponent(p), alpha);
    const CPoint c = point(a);
    if (c.dim() != n) throw precondition_error("center has the wrong dimension");
    return to_py(to_json(norm(kernel_fn(N, c), sp, q)));
  }, py::arg("n"), py::arg("p"), py::arg("alpha"), py::arg("N"), py::arg("a"), py::arg("method") = "product",
     py::arg("samples") = 4096, py::arg("seed") = 0);

  m.def("random_values", [](const py::object& seq, const py::object& p, double alpha, std::uint64_t seed,
                            std::uint64_t trial) {
    const PointSeq s = seq_from(seq);
    return random_values(s, SpaceParams(s.n, exponent(p), alpha), seed, trial);
  }, py::arg("seq"), py::arg("p"), py::arg("alpha"), py::arg("seed") = 0, py::arg("trial") = 0);

  m.def("interpolate", [](const py::object& seq, const std::vector<complex>& values, const py::object& p,
                          double alpha, std::optional<double> m_ext, const std::string& method) {
    const PointSeq s = seq_from(seq);
    const SpaceParams sp(s.n, exponent(p), alpha);
    const ExtensionParams ext = m_ext ? make_extension(sp, *m_ext) : default_extension(s, sp).ext;
    SolveOptions opts;
    opts.method = solve_method_from_string(method);
    const SolveReport rep = interpolate(s, values, sp, ext, opts);
    return to_py({{"params", to_json(sp)}, {"report", to_json(rep)}});
  }, py::arg("seq"), py::arg("values"), py::arg("p") = 2.0, py::arg("alpha") = 0.0, py::arg("m") = py::none(),
     py::arg("method") = "neumann");

  m.def("mills_partition", [](const std::vector<std::vector<double>>& rows) {
    const auto N = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd A(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
      if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != N) {
        throw precondition_error("matrix must be square");
      }
      for (Eigen::Index j = 0; j < N; ++j) A(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const Partition part = mills_partition(A);
    const auto sums = row_sums(A);
    const double M = sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
    return to_py({{"M", M}, {"s1", part.s1}, {"s2", part.s2}, {"within", within_class_sums(A, part)}});
  }, py::arg("matrix"));

  m.def("seip_density", [](const py::object& seq, int j_max) {
    const PointSeq s = seq_from(seq);
    const auto radii = dyadic_radii(2, j_max);
    const auto grid = density_grid(s, j_max + 2);
    return to_py(to_json(seip_density(s, radii, grid)));
  }, py::arg("seq"), py::arg("j_max") = 10);

  m.def("density_verdict", [](const py::object& seq, const py::object& p, double alpha, int j_max) {
    const PointSeq s = seq_from(seq);
    const auto radii = dyadic_radii(2, j_max);
    const auto grid = density_grid(s, j_max + 2);
    const auto rep = density_verdict(s, exponent(p), alpha, radii, grid);
    return to_py({{"verdict", to_string(rep.verdict)}, {"density", rep.density}, {"threshold", rep.threshold},
                  {"detail", to_json(rep.detail)}});
  }, py::arg("seq"), py::arg("p"), py::arg("alpha"), py::arg("j_max") = 10);
}
