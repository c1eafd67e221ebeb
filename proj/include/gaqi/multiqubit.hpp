#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "gaqi/correlated.hpp"
#include "gaqi/errors.hpp"
#include "gaqi/matrix_oracle.hpp"

namespace gaqi {

// C = prod_q (1 - iota^1 iota^q)/2. Every iota is identified with the
// imaginary unit here, so C is the identity of the correlated algebra.
inline CorrelatedElement correlator(int n) {
  if (n < 1) throw DomainError("correlator needs N >= 1");
  CorrelatedElement c = CorrelatedElement::identity(n);
  const cplx i{0, 1};
  for (int q = 2; q <= n; ++q) c = c * (0.5 * (1.0 - i * i * CorrelatedElement::identity(n)));
  return c;
}

// D = prod_{q>=2} (1 - iota sigma_z^1 iota sigma_z^q)/2.
inline CorrelatedElement directional_correlator(int n) {
  if (n < 1) throw DomainError("directional correlator needs N >= 1");
  const cplx i{0, 1};
  CorrelatedElement d = CorrelatedElement::identity(n);
  for (int q = 2; q <= n; ++q) {
    auto f = i * CorrelatedElement::pauli(n, 1, Z) * (i * CorrelatedElement::pauli(n, q, Z));
    d = d * (0.5 * (1.0 - f));
  }
  return d;
}

// E+ = prod_q (1 + sigma_z^q)/2, the reference-state idempotent.
inline CorrelatedElement e_plus_all(int n) {
  CorrelatedElement e = CorrelatedElement::identity(n);
  for (int q = 1; q <= n; ++q) e = e * CorrelatedElement::e_plus(n, q);
  return e;
}

// Right-acting imaginary unit K = iota sigma_z^1 D.
inline CorrelatedElement k_unit(int n) {
  return cplx{0, 1} * CorrelatedElement::pauli(n, 1, Z) * directional_correlator(n);
}

class Ket {
 public:
  Ket(int n, std::vector<cplx> amps) : n_(n), a_(std::move(amps)) {
    if (n < 1 || n > kMaxCorrelatedQubits) throw DomainError("qubit count out of range");
    if (a_.size() != (std::size_t{1} << n)) throw DomainError("ket needs 2^N amplitudes");
  }
  static Ket basis(int n, std::size_t index) {
    std::vector<cplx> a(std::size_t{1} << n);
    if (index >= a.size()) throw DomainError("basis index out of range");
    a[index] = 1.0;
    return Ket(n, std::move(a));
  }
  // From a bitstring such as "011"; qubit 1 is the first character.
  static Ket from_bits(const std::string& bits) {
    std::size_t idx = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw DomainError("bitstring may contain only 0 and 1");
      idx = idx * 2 + static_cast<std::size_t>(c - '0');
    }
    return basis(static_cast<int>(bits.size()), idx);
  }

  int qubits() const { return n_; }
  const std::vector<cplx>& amplitudes() const { return a_; }
  cplx operator[](std::size_t i) const { return a_[i]; }
  double norm() const {
    double s = 0;
    for (auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }
  Ket normalized() const {
    double n = norm();
    if (n < 1e-300) throw DomainError("zero-norm ket");
    std::vector<cplx> b = a_;
    for (auto& v : b) v /= n;
    return Ket(n_, std::move(b));
  }
  // Global phase chosen so the first amplitude above tol is real positive.
  Ket phase_normalized(double tol = 1e-12) const {
    std::vector<cplx> b = a_;
    for (auto& v : b)
      if (std::abs(v) > tol) {
        cplx ph = std::conj(v) / std::abs(v);
        for (auto& w : b) w *= ph;
        break;
      }
    return Ket(n_, std::move(b));
  }
  // 1 - |<a|b>| for normalized kets; zero iff equal up to phase.
  double phase_distance(const Ket& o) const {
    if (o.n_ != n_) throw DomainError("qubit count mismatch");
    cplx ip{};
    for (std::size_t i = 0; i < a_.size(); ++i) ip += std::conj(a_[i]) * o.a_[i];
    return std::abs(1.0 - std::abs(ip) / (norm() * o.norm()));
  }
  double max_abs_diff(const Ket& o) const {
    double m = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
    return m;
  }

 private:
  int n_;
  std::vector<cplx> a_;
};

// Element of the reduced even subalgebra: even and invariant under right
// multiplication by D.
class Spinor {
 public:
  explicit Spinor(CorrelatedElement v, double tol = 1e-10) : v_(std::move(v)) {
    double scale = std::max(1.0, v_.max_abs());
    if (!v_.is_even(tol * scale)) throw DomainError("spinor is not in the even subalgebra");
    if ((v_ * directional_correlator(v_.qubits())).max_abs_diff(v_) > tol * scale)
      throw DomainError("spinor is not D-reduced");
  }
  static Spinor unchecked(CorrelatedElement v) { return Spinor(std::move(v), Tag{}); }

  int qubits() const { return v_.qubits(); }
  const CorrelatedElement& value() const { return v_; }

  // Right action of the imaginary unit K.
  Spinor times_k() const { return unchecked(v_ * k_unit(qubits())); }

 private:
  struct Tag {};
  Spinor(CorrelatedElement v, Tag) : v_(std::move(v)) {}
  CorrelatedElement v_;
};

// First column of the matrix of A, evaluated term by term: P|0...0>.
inline std::vector<cplx> first_column(const CorrelatedElement& a) {
  const int n = a.qubits();
  std::vector<cplx> col(std::size_t{1} << n);
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    if (a[idx] == cplx{}) continue;
    std::size_t row = 0;
    cplx v = a[idx];
    for (int q = 1; q <= n; ++q) {
      int mu = a.digit(idx, q);
      if (mu == X || mu == Y) row |= std::size_t{1} << (n - q);
      if (mu == Y) v *= cplx{0, 1};
    }
    col[row] += v;
  }
  return col;
}

inline Ket ket_from_spinor(const Spinor& s) { return Ket(s.qubits(), first_column(s.value())); }

// Phi = |k><0...0| assembled from |0><0| = (1+sz)/2 and |1><0| = (sx - i sy)/2,
// then Psi = 2<Phi>_+.
inline Spinor spinor_from_ket(const Ket& k) {
  const int n = k.qubits();
  CorrelatedElement phi(n);
  const cplx i{0, 1};
  for (std::size_t b = 0; b < k.amplitudes().size(); ++b) {
    if (k[b] == cplx{}) continue;
    CorrelatedElement term = CorrelatedElement::scalar(n, k[b]);
    for (int q = 1; q <= n; ++q) {
      bool one = (b >> (n - q)) & 1;
      term = term * (one ? 0.5 * (CorrelatedElement::pauli(n, q, X) - i * CorrelatedElement::pauli(n, q, Y))
                         : CorrelatedElement::e_plus(n, q));
    }
    phi = phi + term;
  }
  return Spinor::unchecked(2.0 * phi.even_part());
}

inline void require_unitary(const CorrelatedElement& u, double tol = 1e-10) {
  auto uu = u * u.reverse();
  if (uu.max_abs_diff(CorrelatedElement::identity(u.qubits())) > tol) throw DomainError("element is not unitary");
}

// U o Psi = 2 <U Psi E+>_+
inline Spinor apply_unitary(const CorrelatedElement& u, const Spinor& psi) {
  psi.value().same(u);
  require_unitary(u);
  return Spinor::unchecked(2.0 * (u * psi.value() * e_plus_all(u.qubits())).even_part());
}

// sigma_mu^q o Psi = sigma_mu^q Psi sigma_z^q
inline Spinor apply_basis(int mu, int q, const Spinor& psi) {
  const int n = psi.qubits();
  if (mu < 1 || mu > 3) throw DomainError("basis action needs axis x, y or z");
  auto sz = CorrelatedElement::pauli(n, q, Z);
  return Spinor::unchecked(CorrelatedElement::pauli(n, q, mu) * psi.value() * sz);
}

// iota o Psi = iota Psi sigma_z^1
inline Spinor apply_iota(const Spinor& psi) {
  const int n = psi.qubits();
  return Spinor::unchecked(cplx{0, 1} * psi.value() * CorrelatedElement::pauli(n, 1, Z));
}

inline constexpr double kDensityTol = 1e-10;

class DensityOperator {
 public:
  explicit DensityOperator(CorrelatedElement v, double tol = kDensityTol) : v_(std::move(v)) {
    const int n = v_.qubits();
    if (!v_.is_hermitian(tol)) throw DomainError("density operator must be reversion-symmetric");
    if (std::abs(v_.scalar_part() - std::ldexp(1.0, -n)) > tol) throw DomainError("density scalar part must be 2^-N");
    auto eig = hermitian_eigen(represent(v_));
    if (eig.values.front() < -tol) throw DomainError("density operator is not positive");
  }
  static DensityOperator unchecked(CorrelatedElement v) { return DensityOperator(std::move(v), Tag{}); }

  int qubits() const { return v_.qubits(); }
  const CorrelatedElement& value() const { return v_; }

 private:
  struct Tag {};
  DensityOperator(CorrelatedElement v, Tag) : v_(std::move(v)) {}
  CorrelatedElement v_;
};

// sum_k w_k Psi_k E+ Psi_k~
inline DensityOperator density_from_ensemble(const std::vector<double>& weights, const std::vector<Spinor>& spinors) {
  if (weights.empty() || weights.size() != spinors.size()) throw DomainError("weights and spinors must pair up");
  double total = 0;
  for (double w : weights) {
    if (w < 0) throw DomainError("negative ensemble weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10) throw DomainError("ensemble weights must sum to 1");
  const int n = spinors.front().qubits();
  const auto ep = e_plus_all(n);
  CorrelatedElement rho(n);
  for (std::size_t k = 0; k < spinors.size(); ++k) {
    const auto& s = spinors[k].value();
    s.same(rho);
    double nk = ket_from_spinor(spinors[k]).norm();
    if (std::abs(nk - 1.0) > 1e-10) throw DomainError("ensemble spinors must be normalized");
    rho = rho + weights[k] * (s * ep * s.reverse());
  }
  return DensityOperator::unchecked(rho);
}

inline DensityOperator density_from_spinor(const Spinor& s) { return density_from_ensemble({1.0}, {s}); }

// rho |-> U rho U~
inline DensityOperator evolve(const CorrelatedElement& u, const DensityOperator& rho) {
  require_unitary(u);
  return DensityOperator::unchecked(u * rho.value() * u.reverse());
}

// 2^N <O rho>_0
inline double expectation(const CorrelatedElement& o, const DensityOperator& rho, double tol = 1e-12) {
  o.same(rho.value());
  if (!o.is_hermitian(tol * std::max(1.0, o.max_abs()))) throw DomainError("observable must be reversion-symmetric");
  double s = 0;
  for (std::size_t i = 0; i < o.size(); ++i) s += (o[i] * rho.value()[i]).real();
  return std::ldexp(s, rho.qubits());
}

// Thermal state 2^-N (1 + alpha sum_q sigma_z^q).
inline DensityOperator thermal_density(int n, double alpha) {
  if (std::abs(alpha) > 1) throw DomainError("|alpha| must not exceed 1");
  CorrelatedElement r = CorrelatedElement::identity(n);
  for (int q = 1; q <= n; ++q) r = r + alpha * CorrelatedElement::pauli(n, q, Z);
  return DensityOperator::unchecked(std::ldexp(1.0, -n) * r);
}

struct ProductOperatorTable {
  int n;
  std::vector<double> coeffs;  // indexed like CorrelatedElement
  // Coefficient by axis letters, e.g. "xx" or "0z".
  double at(const std::string& axes) const {
    if (static_cast<int>(axes.size()) != n) throw DomainError("label length must equal qubit count");
    std::size_t idx = 0;
    for (char c : axes) idx = idx * 4 + static_cast<std::size_t>(axis_from_char(c));
    return coeffs[idx];
  }
  CorrelatedElement reconstruct() const {
    CorrelatedElement r(n);
    for (std::size_t i = 0; i < coeffs.size(); ++i) r[i] = coeffs[i];
    return r;
  }
};

inline ProductOperatorTable product_operator_expand(const DensityOperator& rho) {
  const auto& v = rho.value();
  ProductOperatorTable t{v.qubits(), std::vector<double>(v.size())};
  for (std::size_t i = 0; i < v.size(); ++i) t.coeffs[i] = v[i].real();
  return t;
}

// <rho>^q: keep only the terms independent of qubit q (still N qubits).
inline CorrelatedElement raw_contract(const CorrelatedElement& rho, int q) {
  rho.check_qubit(q);
  CorrelatedElement r(rho.qubits());
  for (std::size_t i = 0; i < rho.size(); ++i)
    if (rho.digit(i, q) == 0) r[i] = rho[i];
  return r;
}

// E+ rho E+ + E- rho E- + sx (E+ rho E+ + E- rho E-) sx on qubit q, which is 2<rho>^q.
inline CorrelatedElement contract_operator_sum(const CorrelatedElement& rho, int q) {
  const int n = rho.qubits();
  auto ep = CorrelatedElement::e_plus(n, q), em = CorrelatedElement::e_minus(n, q);
  auto sx = CorrelatedElement::pauli(n, q, X);
  auto d = ep * rho * ep + em * rho * em;
  return d + sx * d * sx;
}

// Drop q-dependent terms, double the rest, reindex onto N-1 qubits.
inline CorrelatedElement contract_element(const CorrelatedElement& rho, int q) {
  const int n = rho.qubits();
  if (n < 2) throw DomainError("cannot contract a single-qubit density");
  rho.check_qubit(q);
  CorrelatedElement r(n - 1);
  const int shift = 2 * (n - q);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho.digit(i, q) != 0) continue;
    std::size_t hi = i >> (shift + 2), lo = i & ((std::size_t{1} << shift) - 1);
    r[(hi << shift) | lo] = 2.0 * rho[i];
  }
  return r;
}

inline DensityOperator contract(const DensityOperator& rho, int q) {
  return DensityOperator::unchecked(contract_element(rho.value(), q));
}

struct Diagonalization {
  std::vector<double> eigenvalues;  // descending
  CorrelatedElement rotor;          // unitary R with rho = R (sum rho_k E(k)) R~
  bool is_density;                  // every eigenvalue >= -kDensityTol
};

// E(k) = prod_q E^q_{bit q of k}, bit 0 -> E+, bit 1 -> E-.
inline CorrelatedElement basis_idempotent(int n, std::size_t k) {
  CorrelatedElement e = CorrelatedElement::identity(n);
  for (int q = 1; q <= n; ++q)
    e = e * (((k >> (n - q)) & 1) ? CorrelatedElement::e_minus(n, q) : CorrelatedElement::e_plus(n, q));
  return e;
}

inline Diagonalization diagonalize(const CorrelatedElement& rho) {
  const int n = rho.qubits();
  auto eig = hermitian_eigen(represent(rho));
  const std::size_t dim = eig.values.size();
  ComplexMatrix v(dim);
  Diagonalization d{std::vector<double>(dim), CorrelatedElement(n), true};
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t src = dim - 1 - k;
    d.eigenvalues[k] = eig.values[src];
    for (std::size_t i = 0; i < dim; ++i) v(i, k) = eig.vectors(i, src);
  }
  d.rotor = unrepresent(v);
  d.is_density = d.eigenvalues.back() >= -kDensityTol;
  return d;
}

inline Diagonalization diagonalize(const DensityOperator& rho) { return diagonalize(rho.value()); }

inline CorrelatedElement diagonal_reconstruct(const Diagonalization& d) {
  const int n = d.rotor.qubits();
  CorrelatedElement s(n);
  for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) s = s + d.eigenvalues[k] * basis_idempotent(n, k);
  return d.rotor * s * d.rotor.reverse();
}

}  // namespace gaqi
