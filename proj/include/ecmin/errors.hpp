#pragma once

#include <stdexcept>
#include <string>

namespace ecmin {

// Base class for every error raised by the library.  Callers that do not
// care about the precise failure can catch this single type.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- circuit structure -----------------------------------------------------

struct CyclicCircuit : Error {
  explicit CyclicCircuit(const std::string& msg) : Error(msg) {}
};

struct DanglingReference : Error {
  explicit DanglingReference(const std::string& msg) : Error(msg) {}
};

struct GateWithoutInputs : Error {
  explicit GateWithoutInputs(const std::string& msg) : Error(msg) {}
};

// Raised when a gate other than the designated output has out-degree 0
// (strict validation only) or when no output is designated.
struct MultipleOutputs : Error {
  explicit MultipleOutputs(const std::string& msg) : Error(msg) {}
};

struct OutputHasOutEdges : Error {
  explicit OutputHasOutEdges(const std::string& msg) : Error(msg) {}
};

struct AssignmentLengthMismatch : Error {
  explicit AssignmentLengthMismatch(const std::string& msg) : Error(msg) {}
};

// ---- text formats ----------------------------------------------------------

struct SyntaxError : Error {
  SyntaxError(int line, int col, const std::string& msg)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
              ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct SemanticError : Error {
  explicit SemanticError(const std::string& msg) : Error(msg) {}
};

// ---- solvers ---------------------------------------------------------------

struct TooManyInputs : Error {
  explicit TooManyInputs(const std::string& msg) : Error(msg) {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

// ---- tree decompositions ---------------------------------------------------

struct NotATree : Error {
  explicit NotATree(const std::string& msg) : Error(msg) {}
};

struct CoverageViolation : Error {
  explicit CoverageViolation(const std::string& msg) : Error(msg) {}
};

struct ConnectivityViolation : Error {
  explicit ConnectivityViolation(const std::string& msg) : Error(msg) {}
};

// Decomposition handed to the dynamic program does not match the circuit.
struct DecompositionMismatch : Error {
  explicit DecompositionMismatch(const std::string& msg) : Error(msg) {}
};

// ---- generators ------------------------------------------------------------

struct NotAnEmbedding : Error {
  explicit NotAnEmbedding(const std::string& msg) : Error(msg) {}
};

struct PrecolorViolation : Error {
  explicit PrecolorViolation(const std::string& msg) : Error(msg) {}
};

// Instance is too large for an exact brute-force oracle.
struct TooLarge : Error {
  explicit TooLarge(const std::string& msg) : Error(msg) {}
};

}  // namespace ecmin
