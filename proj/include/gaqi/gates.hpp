#pragma once

#include <array>
#include <cmath>
#include <istream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gaqi/correlated.hpp"
#include "gaqi/errors.hpp"
#include "gaqi/multiqubit.hpp"

namespace gaqi {

namespace detail {
inline void check_distinct(int a, int b) {
  if (a == b) throw DomainError("control and target must differ");
}
}  // namespace detail

// N = iota sigma_x^q
inline CorrelatedElement not_gate(int n, int q) { return CorrelatedElement::pauli(n, q, X, cplx{0, 1}); }

// (1 + iota sz^c)/sqrt2 (E+^c + E-^c iota sx^t)
inline CorrelatedElement cnot(int n, int control, int target) {
  detail::check_distinct(control, target);
  const cplx i{0, 1};
  auto pre = std::sqrt(0.5) * (1.0 + i * CorrelatedElement::pauli(n, control, Z));
  auto body = CorrelatedElement::e_plus(n, control) +
              CorrelatedElement::e_minus(n, control) * CorrelatedElement::pauli(n, target, X, i);
  return pre * body;
}

// exp(-iota pi (E-^c (1 - sx^t)/2 - 1/4))
inline CorrelatedElement cnot_exponential(int n, int control, int target) {
  detail::check_distinct(control, target);
  const cplx i{0, 1};
  auto proj = CorrelatedElement::e_minus(n, control) * (0.5 * (1.0 - CorrelatedElement::pauli(n, target, X)));
  return exp((-i * std::numbers::pi) * (proj - 0.25));
}

// iota (sx + sz)/sqrt2
inline CorrelatedElement hadamard(int n, int q) {
  return cplx{0, std::sqrt(0.5)} * (CorrelatedElement::pauli(n, q, X) + CorrelatedElement::pauli(n, q, Z));
}

// H^t N H^t~ for c-NOT(control, target).
inline CorrelatedElement conjugate_cnot_by_hadamard(int n, int control, int target) {
  auto h = hadamard(n, target);
  return h * cnot(n, control, target) * h.reverse();
}

// exp(-iota pi (E-^c E-^t - 1/4)), the controlled phase flip of |11>.
inline CorrelatedElement controlled_phase_exponential(int n, int control, int target) {
  detail::check_distinct(control, target);
  auto proj = CorrelatedElement::e_minus(n, control) * CorrelatedElement::e_minus(n, target);
  return exp(cplx{0, -std::numbers::pi} * (proj - 0.25));
}

// cos(theta/2) - iota sin(theta/2) (r . sigma^q); r is normalized on entry.
inline CorrelatedElement rotation_gate(int n, int q, std::array<double, 3> axis, double theta) {
  double nr = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (nr < 1e-12) throw DomainError("rotation axis must be nonzero");
  CorrelatedElement r = CorrelatedElement::scalar(n, std::cos(theta / 2));
  for (int mu = 1; mu <= 3; ++mu)
    r = r + CorrelatedElement::pauli(n, q, mu, cplx{0, -std::sin(theta / 2) * axis[mu - 1] / nr});
  return r;
}

// exp(-iota theta sz^q / 2)
inline CorrelatedElement phase_gate(int n, int q, double theta) { return rotation_gate(n, q, {0, 0, 1}, theta); }

struct Gate {
  enum class Kind { Not, Cnot, Hadamard, Rotation, Phase };
  Kind kind;
  std::vector<int> qubits;  // 1-based; control first for Cnot
  std::array<double, 3> axis{0, 0, 1};
  double angle = 0;
};

inline CorrelatedElement gate_element(const Gate& g, int n) {
  switch (g.kind) {
    case Gate::Kind::Not: return not_gate(n, g.qubits.at(0));
    case Gate::Kind::Cnot: return cnot(n, g.qubits.at(0), g.qubits.at(1));
    case Gate::Kind::Hadamard: return hadamard(n, g.qubits.at(0));
    case Gate::Kind::Rotation: return rotation_gate(n, g.qubits.at(0), g.axis, g.angle);
    case Gate::Kind::Phase: return phase_gate(n, g.qubits.at(0), g.angle);
  }
  throw DomainError("unknown gate kind");
}

struct CircuitProgram {
  int n_qubits = 0;
  std::vector<Gate> gates;

  void validate() const {
    if (n_qubits < 1) throw DomainError("circuit needs at least one qubit");
    for (auto& g : gates) {
      for (int q : g.qubits)
        if (q < 1 || q > n_qubits) throw DomainError("gate qubit " + std::to_string(q) + " out of range");
      if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) throw DomainError("gate qubits must be distinct");
    }
  }
};

namespace detail {

inline double parse_number(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError(line, "bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(line, "bad number '" + s + "'");
  }
}

inline int parse_qubit(const std::string& s, int line) {
  double v = parse_number(s, line);
  if (v != std::floor(v) || v < 1) throw ParseError(line, "qubit index must be a positive integer");
  return static_cast<int>(v);
}

inline std::array<double, 3> parse_axis(const std::string& s, int line) {
  if (s == "x") return {1, 0, 0};
  if (s == "y") return {0, 1, 0};
  if (s == "z") return {0, 0, 1};
  std::array<double, 3> a{};
  std::stringstream ss(s);
  std::string part;
  int k = 0;
  while (std::getline(ss, part, ',')) {
    if (k == 3) throw ParseError(line, "axis needs three components");
    a[static_cast<std::size_t>(k++)] = parse_number(part, line);
  }
  if (k != 3) throw ParseError(line, "axis must be x, y, z or three comma-separated numbers");
  return a;
}

}  // namespace detail

// One gate per line: `H 1`, `NOT 2`, `CNOT 1 2`, `ROT 2 axis=x angle=1.57`,
// `PHASE 1 angle=0.785`. `#` starts a comment; `qubits N` sets the width.
// A width of 0 means infer it from the largest index.
inline CircuitProgram parse_circuit(std::istream& in, int n_qubits = 0) {
  CircuitProgram prog;
  std::optional<int> declared;
  std::string raw;
  int line = 0, widest = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    std::string op = tok[0];
    for (auto& c : op) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (op == "QUBITS") {
      if (tok.size() != 2) throw ParseError(line, "expected `qubits N`");
      declared = detail::parse_qubit(tok[1], line);
      continue;
    }
    Gate g{};
    std::size_t nq;
    if (op == "H" || op == "HADAMARD") g.kind = Gate::Kind::Hadamard, nq = 1;
    else if (op == "NOT" || op == "X") g.kind = Gate::Kind::Not, nq = 1;
    else if (op == "CNOT" || op == "CX") g.kind = Gate::Kind::Cnot, nq = 2;
    else if (op == "ROT" || op == "ROTATION") g.kind = Gate::Kind::Rotation, nq = 1;
    else if (op == "PHASE") g.kind = Gate::Kind::Phase, nq = 1;
    else throw ParseError(line, "unknown gate '" + tok[0] + "'");
    if (tok.size() < 1 + nq) throw ParseError(line, "missing qubit index");
    for (std::size_t k = 1; k <= nq; ++k) {
      g.qubits.push_back(detail::parse_qubit(tok[k], line));
      widest = std::max(widest, g.qubits.back());
    }
    if (nq == 2 && g.qubits[0] == g.qubits[1]) throw ParseError(line, "control and target must differ");
    bool has_angle = false;
    for (std::size_t k = 1 + nq; k < tok.size(); ++k) {
      auto eq = tok[k].find('=');
      if (eq == std::string::npos) throw ParseError(line, "expected key=value, got '" + tok[k] + "'");
      std::string key = tok[k].substr(0, eq), val = tok[k].substr(eq + 1);
      if (key == "angle") {
        g.angle = detail::parse_number(val, line);
        has_angle = true;
      } else if (key == "axis" && g.kind == Gate::Kind::Rotation) {
        g.axis = detail::parse_axis(val, line);
      } else {
        throw ParseError(line, "unexpected parameter '" + key + "'");
      }
    }
    if ((g.kind == Gate::Kind::Rotation || g.kind == Gate::Kind::Phase) && !has_angle)
      throw ParseError(line, "missing angle=");
    if (g.kind == Gate::Kind::Rotation && g.axis == std::array<double, 3>{0, 0, 0})
      throw ParseError(line, "rotation axis must be nonzero");
    prog.gates.push_back(std::move(g));
  }
  prog.n_qubits = n_qubits ? n_qubits : (declared ? *declared : std::max(widest, 1));
  if (declared && n_qubits && *declared != n_qubits) throw DomainError("circuit width disagrees with requested qubit count");
  prog.validate();
  return prog;
}

inline CircuitProgram parse_circuit(const std::string& text, int n_qubits = 0) {
  std::istringstream in(text);
  return parse_circuit(in, n_qubits);
}

// Gates applied left to right.
inline Spinor run_circuit(const CircuitProgram& prog, const Ket& initial) {
  prog.validate();
  if (initial.qubits() != prog.n_qubits) throw DomainError("initial ket width does not match the circuit");
  Spinor s = spinor_from_ket(initial);
  for (auto& g : prog.gates) s = apply_unitary(gate_element(g, prog.n_qubits), s);
  return s;
}

}  // namespace gaqi
