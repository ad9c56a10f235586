#include "eigenpath/circuit.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace eigenpath {

CircuitSpec::CircuitSpec(int q, std::vector<ComplexMatrix> gs)
    : qubits(q), gates(std::move(gs)) {
  if (qubits < 1) throw ValidationError("circuit needs at least one qubit");
  if (gates.empty()) throw ValidationError("circuit needs at least one gate");
  const std::size_t d = dim();
  for (std::size_t k = 0; k < gates.size(); ++k) {
    if (gates[k].dim() != d) {
      throw ValidationError("gate " + std::to_string(k + 1) + " has wrong dimension");
    }
    const double dev = unitarity_deviation(gates[k]);
    if (dev > kUnitaryTol) {
      throw ValidationError("gate " + std::to_string(k + 1) +
                            " is not unitary (deviation " + std::to_string(dev) + ")");
    }
  }
}

double unitarity_deviation(const ComplexMatrix& u) {
  const std::size_t n = u.dim();
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += std::conj(u.at(k, i)) * u.at(k, j);
      const cplx want = (i == j) ? cplx{1, 0} : cplx{0, 0};
      dev = std::max(dev, std::abs(s - want));
    }
  }
  return dev;
}

ComplexMatrix gate_h() {
  ComplexMatrix m(2);
  const double s = 1.0 / std::sqrt(2.0);
  m.at(0, 0) = s; m.at(0, 1) = s;
  m.at(1, 0) = s; m.at(1, 1) = -s;
  return m;
}

ComplexMatrix gate_x() {
  ComplexMatrix m(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  return m;
}

ComplexMatrix gate_z() {
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = -1.0;
  return m;
}

ComplexMatrix gate_t() {
  ComplexMatrix m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = std::exp(cplx{0.0, std::numbers::pi / 4});
  return m;
}

ComplexMatrix gate_u3(double theta, double phi, double lambda) {
  ComplexMatrix m(2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m.at(0, 0) = c;
  m.at(0, 1) = -std::exp(cplx{0.0, lambda}) * s;
  m.at(1, 0) = std::exp(cplx{0.0, phi}) * s;
  m.at(1, 1) = std::exp(cplx{0.0, phi + lambda}) * c;
  return m;
}

ComplexMatrix lift_single_qubit(int qubits, int target, const ComplexMatrix& u2) {
  if (target < 0 || target >= qubits) throw ValidationError("gate target out of range");
  const std::size_t d = std::size_t(1) << qubits;
  const int shift = qubits - 1 - target;  // qubit 0 is the MSB
  ComplexMatrix m(d);
  for (std::size_t b = 0; b < d; ++b) {
    const std::size_t bit = (b >> shift) & 1u;
    const std::size_t flipped = b ^ (std::size_t(1) << shift);
    m.at(b, b) = u2.at(bit, bit);
    m.at(flipped, b) = u2.at(bit ^ 1u, bit);
  }
  return m;
}

ComplexMatrix lift_cnot(int qubits, int control, int target) {
  if (control < 0 || control >= qubits || target < 0 || target >= qubits ||
      control == target) {
    throw ValidationError("CNOT wires out of range");
  }
  const std::size_t d = std::size_t(1) << qubits;
  const int cs = qubits - 1 - control, ts = qubits - 1 - target;
  ComplexMatrix m(d);
  for (std::size_t b = 0; b < d; ++b) {
    const std::size_t out = ((b >> cs) & 1u) ? (b ^ (std::size_t(1) << ts)) : b;
    m.at(out, b) = 1.0;
  }
  return m;
}

namespace {

double parse_real(const std::string& tok, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw CircuitParseError(line, "bad numeric parameter '" + tok + "'");
  }
}

int parse_wire(const std::string& tok, int qubits, int line) {
  int v = 0;
  try {
    std::size_t pos = 0;
    v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw CircuitParseError(line, "bad qubit index '" + tok + "'");
  }
  if (v < 0 || v >= qubits) throw CircuitParseError(line, "qubit index out of range: " + tok);
  return v;
}

}  // namespace

CircuitSpec parse_circuit(std::istream& in, int qubits) {
  if (qubits < 1) throw ValidationError("circuit needs at least one qubit");
  std::vector<ComplexMatrix> gates;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] != "GATE") throw CircuitParseError(lineno, "expected 'GATE', got '" + tok[0] + "'");
    if (tok.size() < 3) throw CircuitParseError(lineno, "missing gate name or target");
    const std::string& name = tok[1];
    if (name == "H" || name == "X" || name == "Z" || name == "T") {
      if (tok.size() != 3) throw CircuitParseError(lineno, name + " takes exactly one target");
      const int t = parse_wire(tok[2], qubits, lineno);
      const ComplexMatrix u2 = (name == "H")   ? gate_h()
                               : (name == "X") ? gate_x()
                               : (name == "Z") ? gate_z()
                                               : gate_t();
      gates.push_back(lift_single_qubit(qubits, t, u2));
    } else if (name == "CNOT") {
      if (tok.size() != 4) throw CircuitParseError(lineno, "CNOT takes control and target");
      const int c = parse_wire(tok[2], qubits, lineno);
      const int t = parse_wire(tok[3], qubits, lineno);
      if (c == t) throw CircuitParseError(lineno, "CNOT control equals target");
      gates.push_back(lift_cnot(qubits, c, t));
    } else if (name == "U3") {
      if (tok.size() != 6) throw CircuitParseError(lineno, "U3 takes target, theta, phi, lambda");
      const int t = parse_wire(tok[2], qubits, lineno);
      const double th = parse_real(tok[3], lineno);
      const double ph = parse_real(tok[4], lineno);
      const double la = parse_real(tok[5], lineno);
      gates.push_back(lift_single_qubit(qubits, t, gate_u3(th, ph, la)));
    } else {
      throw CircuitParseError(lineno, "unknown gate '" + name + "'");
    }
  }
  if (gates.empty()) throw CircuitParseError(lineno == 0 ? 1 : lineno, "no gates in circuit");
  return CircuitSpec(qubits, std::move(gates));
}

CircuitSpec load_circuit_file(const std::string& path, int qubits) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path);
  return parse_circuit(in, qubits);
}

StateVector apply_circuit(const CircuitSpec& c, const StateVector& psi) {
  if (psi.dim() != c.dim()) throw ValidationError("apply_circuit: dimension mismatch");
  std::vector<cplx> cur(psi.amplitudes()), next(psi.dim());
  for (const auto& g : c.gates) {
    kernels::matvec(cur.size(), g.data(), cur.data(), next.data());
    std::swap(cur, next);
  }
  return trusted_state(std::move(cur));
}

}  // namespace eigenpath
