#include "ergocycle/cli.hpp"
#include "ergocycle/clockshift.hpp"
#include "ergocycle/cocycle.hpp"
#include "ergocycle/equiv.hpp"
#include "ergocycle/l1gap.hpp"
#include "ergocycle/numtheory.hpp"
#include "ergocycle/singular.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ergocycle;

namespace {

QTheta qtheta(const std::string& p, const std::string& q) { return QTheta(parse_rational(p), parse_rational(q)); }

equiv::PhaseExp phase(const std::pair<std::string, std::string>& r) { return equiv::PhaseExp(qtheta(r.first, r.second)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cocycles over rotations and Bernoulli shifts, singular measures, equivalence deciders";
  m.attr("__version__") = ERGOCYCLE_VERSION;

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_MemoryError);
  py::register_exception<UndecidableInModel>(m, "UndecidableInModel", PyExc_RuntimeError);

  m.def(
      "convergents",
      [](const std::string& theta, std::size_t count) {
        std::vector<std::tuple<long, std::string, std::string, std::string>> out;
        for (const auto& c : numtheory::convergents(Theta::parse(theta), count)) {
          out.emplace_back(c.r, c.b.str(), c.k.str(), c.m.str());
        }
        return out;
      },
      py::arg("theta") = "sqrt2m1", py::arg("count") = 10,
      "List of (r, b_r, k_r, m_r); big integers as strings.");

  m.def(
      "select_mi",
      [](const std::string& theta, std::size_t depth) {
        std::vector<std::string> out;
        for (const auto& v : numtheory::select_mi(Theta::parse(theta), depth)) out.push_back(v.str());
        return out;
      },
      py::arg("theta") = "sqrt2m1", py::arg("depth") = 10);

  m.def(
      "count_measure",
      [](const std::string& theta, long mm) {
        const Theta t = Theta::parse(theta);
        auto [a, b] = numtheory::count_measure(t, mm);
        return std::make_pair(t.to_double(a), t.to_double(b));
      },
      py::arg("theta"), py::arg("m"));

  m.def(
      "clock_shift",
      [](int n) {
        const auto p = clockshift::make_clock_pair(n);
        return std::make_pair(Eigen::MatrixXcd(p.u), Eigen::MatrixXcd(p.v));
      },
      py::arg("n"), "(u, v) as complex arrays.");

  m.def("commutant_dim", [](const std::vector<Eigen::MatrixXcd>& mats, int n) {
    return clockshift::commutant_dim(std::vector<Mat>(mats.begin(), mats.end()), n);
  });

  m.def(
      "phi_relations_max_error",
      [](int n, std::size_t trials, std::uint64_t seed) {
        return clockshift::phi_relations_check(clockshift::make_clock_pair(n), trials, seed).max_error;
      },
      py::arg("n"), py::arg("trials") = 20, py::arg("seed") = 1);

  m.def(
      "trivialize_periodic",
      [](const std::vector<Eigen::MatrixXcd>& w) {
        const auto t = cocycle::trivialize_periodic(std::vector<Mat>(w.begin(), w.end()));
        return py::dict(py::arg("z") = Eigen::MatrixXcd(t.z), py::arg("lambda_phase") = t.lambda_phase,
                        py::arg("max_error") = t.max_error, py::arg("ok") = t.ok);
      },
      py::arg("w"));

  m.def(
      "decide_equiv0",
      [](const std::string& p, const std::string& q) -> py::object {
        const auto v = equiv::decide_equiv0(equiv::PhaseExp(qtheta(p, q)));
        if (!v.yes) return py::none();
        return py::int_(py::str(v.m->str()));
      },
      py::arg("p"), py::arg("q") = "0", "Witness m when eta = p + q theta is m theta mod Z, else None.");

  m.def(
      "decide_rotation_phases",
      [](std::pair<std::string, std::string> l1, std::pair<std::string, std::string> l2,
         std::pair<std::string, std::string> l1p, std::pair<std::string, std::string> l2p, int n,
         bool theta_algebraic) -> py::object {
        const auto v = equiv::decide_rotation_phases(phase(l1), phase(l2), phase(l1p), phase(l2p), n, theta_algebraic);
        if (!v.yes) return py::none();
        return py::str(to_string(*v.a));
      },
      py::arg("l1"), py::arg("l2"), py::arg("l1p"), py::arg("l2p"), py::arg("n"), py::arg("theta_algebraic") = false);

  m.def(
      "decide_bernoulli_w",
      [](const std::set<int>& c1, const std::set<int>& c1p, int n, int alphabet) {
        return equiv::decide_bernoulli_w(c1, c1p, n, alphabet).yes;
      },
      py::arg("c1"), py::arg("c1p"), py::arg("n"), py::arg("alphabet"));

  m.def(
      "harmonic_bound",
      [](long k) {
        const auto r = l1gap::atomic_obstruction(k);
        return std::make_pair(to_string(r.bound), r.bound_double);
      },
      py::arg("k"), "(H_K as an exact fraction string, float value).");

  m.def(
      "cover_bound",
      [](const std::string& theta, std::size_t depth, std::size_t level) {
        return singular::cover_bound(singular::CantorChart(Theta::parse(theta), depth), level);
      },
      py::arg("theta") = "sqrt2m1", py::arg("depth") = 30, py::arg("level") = 20);

  m.def(
      "digit_round_trip",
      [](const std::vector<int>& bits, const std::string& theta) {
        const singular::CantorChart chart(Theta::parse(theta), bits.size());
        const auto d = singular::decode_digits(chart, singular::phi_map(chart, bits).value);
        std::vector<int> back(bits.size(), 0);
        std::copy(d.lambda.begin(), d.lambda.end(), back.begin());
        return back;
      },
      py::arg("bits"), py::arg("theta") = "sqrt2m1");

  m.def("convergents_csv", &cli::convergents_csv, py::arg("theta") = "sqrt2m1", py::arg("count") = 10);
  m.def("equiv_decide", &cli::equiv_decide, py::arg("case"), py::arg("input_json"));
  m.def("l1_demo", &cli::l1_demo, py::arg("mode"), py::arg("param"), py::arg("instances") = 10,
        py::arg("seed") = 1);
  m.def(
      "ergodicity_run",
      [](const std::string& config_text) {
        const auto out = cli::ergodicity_run(cli::parse_ergodicity_config(config_text));
        return py::make_tuple(out.json, out.trace_csv, out.pass);
      },
      py::arg("config_text"), "YAML config text -> (json, trace_csv, pass).");
}
