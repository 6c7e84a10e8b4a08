#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "zstates/circuit.h"

namespace zstates {

// Syntax or semantic error in QASM input; line and column are 1-based.
class QasmError : public std::runtime_error {
 public:
  QasmError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Canonical OpenQASM 2.0 text: registers q and c, one statement per line,
// library qubit i written as q[i-1]. Deterministic for a given circuit.
std::string emit_qasm(const QuantumCircuit& circuit);

// Accepts the subset emit_qasm produces plus comments, free whitespace,
// arbitrary register names and whole-register arguments for one-qubit gates,
// measure and barrier.
QuantumCircuit parse_qasm(std::string_view text);

}  // namespace zstates
