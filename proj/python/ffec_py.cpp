#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "ffec/berger.hpp"
#include "ffec/error.hpp"
#include "ffec/lfunction.hpp"
#include "ffec/report.hpp"
#include "ffec/towers.hpp"

namespace py = pybind11;
using namespace ffec;

namespace {

// Curve from file text or from a catalog name.
std::pair<Curve, std::string> load_curve(const std::string& text, const std::string& catalog, std::uint32_t p, long long param) {
  if (!catalog.empty()) return {berger_catalog(catalog, p, param).curve, catalog + " " + std::to_string(p) + " " + std::to_string(param)};
  return {parse_curve(text), text};
}

LOptions l_options(std::size_t max_place_deg, unsigned threads) {
  LOptions o;
  o.max_place_deg = max_place_deg;
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_ffec, m) {
  m.doc() = "Elliptic curves over F_q(t): local data, L-functions, towers, heights";

  py::register_exception<Error>(m, "FfecError", PyExc_ValueError);

  py::class_<Report>(m, "Report")
      .def_readonly("json", &Report::json)
      .def_readonly("summary", &Report::summary)
      .def_readonly("ok", &Report::ok);

  m.def(
      "analyze",
      [](const std::string& text, const std::string& catalog, std::uint32_t p, long long param, std::size_t max_place_deg,
         unsigned threads, double tol) {
        const auto [E, input] = load_curve(text, catalog, p, param);
        AnalyzeOptions o;
        o.l = l_options(max_place_deg, threads);
        o.tol = tol;
        py::gil_scoped_release release;
        return analyze_report(E, input, o);
      },
      py::arg("text") = "", py::arg("catalog") = "", py::arg("p") = 0, py::arg("param") = 0, py::arg("max_place_deg") = 0,
      py::arg("threads") = 1, py::arg("tol") = 1e-9);

  m.def(
      "tower",
      [](const std::string& text, const std::string& catalog, std::uint32_t p, long long param, std::size_t d, std::size_t scan,
         bool mu, double tol) {
        const auto [E, input] = load_curve(text, catalog, p, param);
        TowerRequest r;
        r.d = d;
        r.scan = scan;
        r.mu = mu;
        r.tol = tol;
        py::gil_scoped_release release;
        return tower_report(E, input, r);
      },
      py::arg("text") = "", py::arg("catalog") = "", py::arg("p") = 0, py::arg("param") = 0, py::arg("d") = 1, py::arg("scan") = 0,
      py::arg("mu") = false, py::arg("tol") = 1e-9);

  m.def(
      "points",
      [](std::uint32_t p, std::uint32_t f, int iters, double tol) {
        if (iters < 1) throw Error(ErrorKind::InvalidArgument, "iters must be positive");
        PointsRequest r;
        r.p = p;
        r.f = f;
        r.heights.n_iter = iters;
        r.tol = tol;
        py::gil_scoped_release release;
        return points_report(r);
      },
      py::arg("p"), py::arg("f") = 1, py::arg("iters") = 6, py::arg("tol") = 1e-3);

  m.def(
      "berger",
      [](const std::string& catalog, std::uint32_t p, long long param, const std::string& data) {
        BergerRequest r;
        if (!catalog.empty()) r.catalog = catalog;
        if (!data.empty()) r.data_text = data;
        r.p = p;
        r.param = param;
        return berger_report(r);
      },
      py::arg("catalog") = "", py::arg("p") = 0, py::arg("param") = 0, py::arg("data") = "");

  m.def(
      "l_coefficients",
      [](const std::string& text, const std::string& catalog, std::uint32_t p, long long param) {
        const auto [E, input] = load_curve(text, catalog, p, param);
        LPoly L;
        {
          py::gil_scoped_release release;
          L = l_polynomial(E);
        }
        py::list out;
        for (const auto& c : L.coeffs) out.append(py::int_(py::str(c.str())));
        return out;
      },
      py::arg("text") = "", py::arg("catalog") = "", py::arg("p") = 0, py::arg("param") = 0);

  m.def(
      "lemma_trials",
      [](std::size_t a, std::size_t n, std::size_t trials, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::size_t hyp = 0, divisible = 0;
        for (std::size_t i = 0; i < trials; ++i) {
          const LemmaCheck c = lemma_la_check(random_block_system(a, n, rng));
          hyp += c.hypotheses_hold();
          divisible += c.hypotheses_hold() && c.divisible;
        }
        return py::make_tuple(hyp, divisible);
      },
      py::arg("a"), py::arg("n"), py::arg("trials"), py::arg("seed") = 1);

  m.def("delta", &delta, py::arg("a"), py::arg("b"));
  m.def(
      "genus", [](const std::string& data, std::uint32_t p) { return genus(parse_berger(data), p); }, py::arg("data"),
      py::arg("p") = 0);
  m.def("catalog_names", &catalog_names);

}
