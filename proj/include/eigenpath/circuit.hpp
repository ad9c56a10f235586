#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "eigenpath/linalg.hpp"

namespace eigenpath {

/// Parse failure for the line-based circuit format; carries the 1-based line.
class CircuitParseError : public std::runtime_error {
 public:
  CircuitParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A unitary circuit U_n ... U_1 on `qubits` qubits; each gate is stored as a
/// full 2^q x 2^q unitary (unitarity checked to 1e-10). Qubit 0 is the most
/// significant bit of the basis index.
struct CircuitSpec {
  static constexpr double kUnitaryTol = 1e-10;

  int qubits = 0;
  std::vector<ComplexMatrix> gates;

  CircuitSpec(int qubits, std::vector<ComplexMatrix> gates);
  std::size_t dim() const { return std::size_t(1) << qubits; }
  std::size_t gate_count() const { return gates.size(); }
};

/// max-entry deviation of U^dagger U from the identity
double unitarity_deviation(const ComplexMatrix& u);

// 2x2 gate matrices
ComplexMatrix gate_h();
ComplexMatrix gate_x();
ComplexMatrix gate_z();
ComplexMatrix gate_t();
ComplexMatrix gate_u3(double theta, double phi, double lambda);

/// Embed a single-qubit gate at `target` into the 2^q space.
ComplexMatrix lift_single_qubit(int qubits, int target, const ComplexMatrix& u2);
/// CNOT with given control and target wires.
ComplexMatrix lift_cnot(int qubits, int control, int target);

/// Line format, one gate per line:
///   GATE H <q> | GATE X <q> | GATE Z <q> | GATE T <q>
///   GATE CNOT <control> <target>
///   GATE U3 <q> <theta> <phi> <lambda>
/// '#' starts a comment; blank lines are skipped.
CircuitSpec parse_circuit(std::istream& in, int qubits);
CircuitSpec load_circuit_file(const std::string& path, int qubits);

/// (U_n ... U_1) |psi>
StateVector apply_circuit(const CircuitSpec& c, const StateVector& psi);

}  // namespace eigenpath
