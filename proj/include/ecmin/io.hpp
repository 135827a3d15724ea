#pragma once

#include <optional>
#include <string>

#include "ecmin/circuit.hpp"
#include "ecmin/generators.hpp"
#include "ecmin/planar.hpp"
#include "ecmin/treewidth.hpp"

namespace ecmin {

// Circuit text format, one declaration per line:
//   i <name>                   input
//   g <name> AND|OR <in>...    gate with at least one fanin
//   o <name>                   output designation, exactly once
// '#' starts a comment; blank lines ignored; declarations may appear in any
// order.  Names match [A-Za-z_][A-Za-z0-9_]*.  Malformed tokens raise
// SyntaxError with 1-based line/column; duplicate names, duplicate fanins,
// unknown references, non-monotone kinds and missing/repeated output lines
// raise SemanticError.  The parsed circuit is finalized but not validated.
Circuit parse_circuit(const std::string& text);

// Deterministic canonical form: comment header with counts, inputs in index
// order, gates in topological order, output line last.
std::string serialize_circuit(const Circuit& circuit);

// PACE-2017-style tree decomposition:
//   c <comment>
//   s td <#bags> <max bag size> <#vertices>
//   b <bag id> <vertex>...
//   <bag id> <bag id>
// File vertex j (1-based) corresponds to circuit node j-1.  The result is
// checked against the circuit with check_decomposition.
TreeDecomposition parse_td(const std::string& text, const Circuit& circuit);

// Embedded planar graph:
//   v <name> : <neighbor>...   clockwise rotation at <name>
//   outer <u> <v>              dart on the external face, exactly once
// '#' comments.  Every vertex needs a 'v' line; symmetry and planarity are
// checked by trace_faces, not here.
EmbeddedPlanarGraph parse_pg(const std::string& text);

// DIMACS-like colored graph:
//   c <comment>
//   p col <n> <m>
//   e <u> <v>
//   n <u> <color>
// Vertices 1-based; every vertex needs exactly one color line.
ColoredGraph parse_col(const std::string& text);

// Graphviz export; inputs as boxes, AND gates as houses, OR gates as
// ellipses, output double-drawn.  When an activation set is given, active
// nodes are filled.
std::string export_dot(const Circuit& circuit,
                       const std::optional<ActivationSet>& highlight = {});

}  // namespace ecmin
