#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdio>
#include <optional>
#include <sstream>

#include "ecmin/brute.hpp"
#include "ecmin/circuit.hpp"
#include "ecmin/dp.hpp"
#include "ecmin/generators.hpp"
#include "ecmin/io.hpp"
#include "ecmin/kernel.hpp"
#include "ecmin/treewidth.hpp"
#include "ecmin/xp.hpp"

namespace py = pybind11;
using namespace ecmin;

namespace {

py::dict stats_dict(const CircuitStats& s) {
  py::dict d;
  d["inputs"] = s.inputs;
  d["gates"] = s.gates;
  d["and_gates"] = s.and_gates;
  d["or_gates"] = s.or_gates;
  d["edges"] = s.edges;
  d["unreachable_inputs"] = s.unreachable_inputs;
  d["extra_sinks"] = s.extra_sinks;
  return d;
}

py::dict instance_dict(const GeneratedInstance& inst) {
  py::dict d;
  d["circuit"] = inst.circuit;
  d["k"] = inst.k;
  d["parameter"] = inst.parameter;
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(inst.source_digest));
  d["source_digest"] = std::string(hex);
  return d;
}

}  // namespace

PYBIND11_MODULE(_ecmin, m) {
  m.doc() = "exact solvers for best-case energy of monotone AND/OR circuits";

  py::register_exception<Error>(m, "EcminError");

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("num_inputs", &Circuit::num_inputs)
      .def_readonly("output", &Circuit::output)
      .def_property_readonly("num_gates", &Circuit::num_gates)
      .def_property_readonly("num_nodes", &Circuit::num_nodes)
      .def_property_readonly("names",
                             [](const Circuit& c) { return c.names; })
      .def("name", &Circuit::name, py::arg("node"))
      .def("__repr__", [](const Circuit& c) {
        std::ostringstream out;
        out << "Circuit(inputs=" << c.num_inputs << ", gates=" << c.num_gates()
            << ")";
        return out.str();
      });

  py::class_<TreeDecomposition>(m, "TreeDecomposition")
      .def_readonly("bags", &TreeDecomposition::bags)
      .def_readonly("tree_edges", &TreeDecomposition::tree_edges)
      .def_property_readonly("width", &TreeDecomposition::width);

  m.def("parse_circuit", &parse_circuit, py::arg("text"));
  m.def("serialize_circuit", &serialize_circuit, py::arg("circuit"));
  m.def(
      "validate",
      [](Circuit& c, bool strict) {
        return stats_dict(validate(c, strict ? ValidationMode::Strict
                                             : ValidationMode::AllowExtraSinks));
      },
      py::arg("circuit"), py::arg("strict") = true);
  m.def(
      "evaluate",
      [](const Circuit& c, const Assignment& x) {
        const auto [activation, report] = evaluate(c, x);
        std::vector<std::string> active;
        for (NodeId v = c.num_inputs; v < c.num_nodes(); ++v) {
          if (activation.active[v]) active.push_back(c.name(v));
        }
        return py::make_tuple(report.satisfied, report.ec, active);
      },
      py::arg("circuit"), py::arg("x"),
      "returns (satisfied, ec, active gate names)");
  m.def(
      "ec_worst", [](const Circuit& c) { return ec_worst(c).ec; },
      py::arg("circuit"));
  m.def(
      "export_dot",
      [](const Circuit& c, const std::optional<Assignment>& x) {
        if (!x) return export_dot(c);
        return export_dot(c, evaluate(c, *x).first);
      },
      py::arg("circuit"), py::arg("x") = std::nullopt);

  m.def(
      "min_ec_brute",
      [](const Circuit& c, std::optional<int32_t> cap, int input_limit) {
        BruteOptions opts;
        opts.cap = cap;
        opts.input_limit = input_limit;
        const auto r = min_ec_brute(c, opts);
        py::dict d;
        d["min_ec"] = r.min_ec;
        d["witness"] = r.witness;
        d["assignments_scanned"] = r.assignments_scanned;
        d["capped"] = r.capped;
        return d;
      },
      py::arg("circuit"), py::arg("cap") = std::nullopt,
      py::arg("input_limit") = 24);
  m.def(
      "decide_brute",
      [](const Circuit& c, int32_t k) { return decide_brute(c, k); },
      py::arg("circuit"), py::arg("k"));

  m.def(
      "solve_xp",
      [](const Circuit& c, int32_t k) { return solve_xp(c, k); },
      py::arg("circuit"), py::arg("k"),
      "first witness with ec <= k, or None");
  m.def(
      "decide_xp", [](const Circuit& c, int32_t k) { return decide_xp(c, k); },
      py::arg("circuit"), py::arg("k"));

  m.def(
      "kernelize",
      [](const Circuit& c, int32_t k) {
        const auto outcome = kernelize(c, k);
        py::dict d;
        switch (outcome.verdict) {
          case KernelVerdict::Yes:
            d["verdict"] = "yes";
            break;
          case KernelVerdict::No:
            d["verdict"] = "no";
            break;
          case KernelVerdict::Reduced:
            d["verdict"] = "reduced";
            break;
        }
        if (outcome.circuit) d["circuit"] = *outcome.circuit;
        d["node_map"] = outcome.node_map;
        py::list deletions;
        for (const auto& del : outcome.deletions) {
          py::dict entry;
          entry["rule"] = del.rule;
          entry["name"] = del.name;
          deletions.append(entry);
        }
        d["deletions"] = deletions;
        return d;
      },
      py::arg("circuit"), py::arg("k"));
  m.def("check_distance_bound", &check_distance_bound, py::arg("circuit"),
        py::arg("k"));

  m.def("heuristic_decomposition", &heuristic_decomposition,
        py::arg("circuit"));
  m.def("single_bag_decomposition", &single_bag_decomposition,
        py::arg("circuit"));
  m.def(
      "dp_solve",
      [](const Circuit& c, const std::optional<TreeDecomposition>& td,
         bool witness) {
        const auto nice =
            make_extended_nice(td ? *td : heuristic_decomposition(c), c);
        const auto r =
            dp_solve(c, nice, {.want_witness = witness, .want_stats = true});
        py::dict d;
        d["min_ec"] = r.min_ec;
        if (witness) d["witness"] = r.witness;
        py::dict stats;
        stats["nodes"] = r.stats.nodes;
        stats["width"] = r.stats.width;
        stats["max_states"] = r.stats.max_states;
        stats["total_states"] = r.stats.total_states;
        d["stats"] = stats;
        return d;
      },
      py::arg("circuit"), py::arg("td") = std::nullopt,
      py::arg("witness") = false);
  m.def(
      "decide_dp",
      [](const Circuit& c, int32_t k,
         const std::optional<TreeDecomposition>& td) {
        return decide_dp(c, k, td);
      },
      py::arg("circuit"), py::arg("k"), py::arg("td") = std::nullopt);

  m.def(
      "gen_from_planar_vc",
      [](const std::string& pg_text, int cover) {
        return instance_dict(gen_from_planar_vc(parse_pg(pg_text), cover));
      },
      py::arg("pg_text"), py::arg("cover"),
      "build a circuit instance from an embedded planar graph (.pg text)");
  m.def(
      "gen_from_mcq",
      [](const std::string& col_text) {
        return instance_dict(gen_from_mcq(parse_col(col_text)));
      },
      py::arg("col_text"),
      "build a circuit instance from a colored graph (.col text)");
}
