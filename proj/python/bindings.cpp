// _ncx: JSON-in, JSON-out access to the set calculus, the function catalog and the CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ncx/cli.hpp"
#include "ncx/error.hpp"
#include "ncx/io.hpp"
#include "ncx/svg.hpp"

namespace py = pybind11;
using namespace ncx;

namespace {

NCSet set_of(const std::string& text) { return io::ncset_from(io::parse_json(text)); }
ConvexFn fn_of(const std::string& text) { return io::fn_from(io::parse_json(text)); }
std::string dump(const io::ojson& j) { return j.dump(); }

std::vector<NCSet> sets_of(const std::vector<std::string>& texts) {
  std::vector<NCSet> es;
  for (const auto& t : texts) es.push_back(set_of(t));
  return es;
}

}  // namespace

PYBIND11_MODULE(_ncx, m) {
  m.doc() = "Nearly convex sets and subdifferentials in exact arithmetic";

  // messages carry the error code name, e.g. "CQ_VIOLATED: ..."
  py::register_exception<Error>(m, "NcxError", PyExc_ValueError);

  m.def("is_nearly_convex", [](const std::string& e) { return dump(io::to_json(is_nearly_convex(set_of(e)))); },
        py::arg("set"));
  m.def("nc_equal", [](const std::string& a, const std::string& b) { return nc_equal(set_of(a), set_of(b)); });
  m.def("nc_contains", [](const std::string& e, const std::string& x) {
    return nc_contains(set_of(e), io::rvec_from(io::parse_json(x)));
  });
  m.def("canonicalize", [](const std::string& e) { return dump(io::to_json(canonicalize(set_of(e)))); });
  m.def("nc_sum", [](const std::string& a, const std::string& b) {
    return dump(io::to_json(nc_sum(set_of(a), set_of(b))));
  });
  m.def("nc_intersect", [](const std::vector<std::string>& es) { return dump(io::to_json(nc_intersect(sets_of(es)))); });
  m.def("nc_image", [](const std::string& e, const std::string& a) {
    return dump(io::to_json(nc_image(set_of(e), io::linmap_from(io::parse_json(a)))));
  });
  m.def("closure", [](const std::string& e) { return dump(io::to_json(closure(set_of(e)))); });
  m.def("rel_interior", [](const std::string& e) { return dump(io::to_json(rel_interior(set_of(e)))); });
  m.def("rec_classify", [](const std::string& e) { return dump(io::to_json(rec_classify(set_of(e)))); });

  // points are strings such as "1/2,0" or "1+1*sqrt2,0"
  m.def("evaluate", [](const std::string& f, const std::string& x) {
    return dump(io::to_json(eval(fn_of(f), io::parse_point(x))));
  });
  m.def("subdiff", [](const std::string& f, const std::string& x) {
    return dump(io::to_json(subdiff(fn_of(f), io::parse_point(x))));
  });
  m.def("conjugate", [](const std::string& f, const std::string& xs) {
    return dump(io::to_json(conjugate_eval(fn_of(f), io::parse_point(xs))));
  });
  m.def("dom_subdiff", [](const std::string& f) { return dump(io::to_json(dom_subdiff(fn_of(f)))); });
  m.def("svg", [](const std::string& e) { return render_svg(set_of(e), {}); });

  m.def(
      "run",
      [](const std::string& command, const std::string& target, const std::vector<std::string>& inputs,
         const std::string& op, const std::string& out, const std::string& svg, int grid, std::optional<double> tol,
         std::uint64_t seed) {
        cli::RunConfig cfg;
        cfg.command = command;
        cfg.target = target;
        cfg.inputs = inputs;
        cfg.op = op;
        cfg.out = out;
        cfg.svg = svg;
        cfg.grid = grid;
        cfg.tol = tol;
        cfg.seed = seed;
        std::ostringstream report, log;
        int code = 0;
        {
          py::gil_scoped_release nogil;
          code = cli::run(cfg, report, log);
        }
        return py::make_tuple(code, report.str(), log.str());
      },
      py::arg("command"), py::arg("target") = "", py::arg("inputs") = std::vector<std::string>{}, py::arg("op") = "",
      py::arg("out") = "", py::arg("svg") = "", py::arg("grid") = 0, py::arg("tol") = py::none(),
      py::arg("seed") = 1,
      "Run one ncx command; returns (exit code, JSON-lines report, log).");
}
