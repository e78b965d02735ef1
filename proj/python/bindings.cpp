// Copyright 2026 The sifc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sifc/cli.hpp"
#include "sifc/connection.hpp"
#include "sifc/dlm.hpp"
#include "sifc/error.hpp"
#include "sifc/flowlang.hpp"
#include "sifc/io.hpp"

namespace py = pybind11;
using namespace sifc;

namespace {

std::vector<std::string> names(const Lattice& lat, const std::vector<ClassIndex>& xs) {
  std::vector<std::string> out;
  for (auto x : xs) out.push_back(lat.class_name(x));
  return out;
}

// pybind11 holders cannot be pointer-to-const.
using Held = std::shared_ptr<Lattice>;
Held held(LatticePtr p) { return std::const_pointer_cast<Lattice>(std::move(p)); }

NameMap to_dict(const MonotoneMap& f) {
  NameMap out;
  for (auto& [k, v] : f.to_names()) out[k] = v;
  return out;
}

}  // namespace

PYBIND11_MODULE(_sifc, m) {
  m.doc() = "Security lattices, Lagois connections and flow checking";

  static py::exception<Error> sifc_error(m, "SifcError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = sifc_error;
      py::object inst = exc(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      inst.attr("witness") = e.witness();
      inst.attr("tag") = e.tag();
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  py::class_<Lattice, Held>(m, "Lattice")
      .def_static(
          "build",
          [](std::string name, std::vector<std::string> classes, const std::vector<ClassPair>& covers) {
            return held(build_lattice(std::move(name), std::move(classes), covers));
          },
          py::arg("name"), py::arg("classes"), py::arg("covers"))
      .def_static("load", [](const std::filesystem::path& p) { return held(load_lattice(p)); }, py::arg("path"))
      .def_property_readonly("name", &Lattice::name)
      .def_property_readonly("classes", &Lattice::classes)
      .def_property_readonly("top", [](const Lattice& l) { return l.class_name(l.top()); })
      .def_property_readonly("bottom", [](const Lattice& l) { return l.class_name(l.bottom()); })
      .def("leq", py::overload_cast<std::string_view, std::string_view>(&Lattice::leq, py::const_))
      .def("join", py::overload_cast<std::string_view, std::string_view>(&Lattice::join, py::const_))
      .def("meet", py::overload_cast<std::string_view, std::string_view>(&Lattice::meet, py::const_))
      .def("__len__", &Lattice::size);

  py::class_<LagoisConnection>(m, "LagoisConnection")
      .def_static("load", &load_connection, py::arg("path"))
      .def_property_readonly("left", [](const LagoisConnection& c) { return held(c.left_ptr()); })
      .def_property_readonly("right", [](const LagoisConnection& c) { return held(c.right_ptr()); })
      .def_property_readonly("alpha", [](const LagoisConnection& c) { return to_dict(c.alpha()); })
      .def_property_readonly("gamma", [](const LagoisConnection& c) { return to_dict(c.gamma()); })
      .def("budpoints",
           [](const LagoisConnection& c, const std::string& side) {
             Side s = side == "left" ? Side::Left : Side::Right;
             return names(c.lattice(s), c.budpoints(s));
           },
           py::arg("side"));

  m.def(
      "check_connection",
      [](Held left, Held right, const NameMap& alpha, const NameMap& gamma) {
        auto out = check_connection(std::move(left), std::move(right), alpha, gamma);
        std::vector<std::pair<std::string, std::vector<std::string>>> vs;
        for (const auto& v : out.violations) vs.emplace_back(std::string(to_string(v.condition)), v.witness);
        return vs;
      },
      py::arg("left"), py::arg("right"), py::arg("alpha"), py::arg("gamma"),
      "Violations as (condition, witness) pairs; empty when the maps form a connection.");

  m.def(
      "find_adjoint",
      [](Held left, Held right, const NameMap& alpha) {
        return to_dict(find_adjoint(MonotoneMap::from_names(std::move(left), std::move(right), alpha)));
      },
      py::arg("left"), py::arg("right"), py::arg("alpha"));

  m.def(
      "typecheck",
      [](const std::string& source, const LagoisConnection& conn) {
        auto t = typecheck(parse_program(source), conn);
        return std::make_pair(conn.left().class_name(t.l), conn.right().class_name(t.m));
      },
      py::arg("source"), py::arg("connection"));

  m.def(
      "label_leq",
      [](const std::filesystem::path& hierarchy, const std::string& a, const std::string& b) {
        auto h = load_hierarchy(hierarchy);
        auto la = parse_label(a);
        auto lb = parse_label(b);
        check_label(*h, la);
        check_label(*h, lb);
        return label_leq(*h, la, lb);
      },
      py::arg("hierarchy"), py::arg("a"), py::arg("b"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        auto v = cli_dispatch(args);
        return std::make_pair(exit_code(v.status), v.report.dump());
      },
      py::arg("args"), "Runs a command-line invocation; returns (exit code, JSON report).");
}
