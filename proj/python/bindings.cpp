#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padyn/arith.hpp"
#include "padyn/cli.hpp"
#include "padyn/dynamics.hpp"

namespace py = pybind11;

namespace {

std::tuple<int, std::string, std::string> run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = padyn::run_cli(args, out, err);
    }
    return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_padyn, m) {
    m.doc() = "p-adic periodic points of polynomial maps";
    m.def("run", &run, py::arg("args"),
          "Run the command line (without the program name); returns (exit code, stdout, stderr).");
    m.def("dynatomic_degree", &padyn::dynatomic_degree, py::arg("d"), py::arg("n"),
          "Degree of the n-th dynatomic polynomial of a degree-d map.");
    m.def("mobius", &padyn::mobius, py::arg("n"));
    m.attr("DYNATOMIC_CAP") = padyn::kDynatomicCap;
}
