#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "gaqi/errors.hpp"

namespace gaqi {

using cplx = std::complex<double>;

// Pauli digit codes used throughout: 0 = identity, 1 = x, 2 = y, 3 = z.
enum Axis : int { I0 = 0, X = 1, Y = 2, Z = 3 };

inline int axis_from_char(char c) {
  switch (c) {
    case '0': case '1': case 'I': case 'i': return 0;
    case 'x': case 'X': return 1;
    case 'y': case 'Y': return 2;
    case 'z': case 'Z': return 3;
    default: throw DomainError(std::string("unknown Pauli axis '") + c + "'");
  }
}

inline constexpr int kMaxCorrelatedQubits = 12;

namespace detail {

// i^k for the product of single-qubit Paulis a*b, k in {0,1,3}.
inline constexpr int pauli_phase(int a, int b) {
  if (a == 0 || b == 0 || a == b) return 0;
  return ((b - a + 3) % 3 == 1) ? 1 : 3;
}

inline cplx ipow(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace detail

// Element of G3^{(x)N}/C stored as complex coefficients over Pauli strings.
// Qubit 1 is the most significant base-4 digit; the identified pseudoscalar
// acts as the imaginary unit.
class CorrelatedElement {
 public:
  explicit CorrelatedElement(int n) : n_(check_n(n)), c_(std::size_t{1} << (2 * n), cplx{}) {}
  CorrelatedElement(int n, std::vector<cplx> c) : n_(check_n(n)), c_(std::move(c)) {
    if (c_.size() != (std::size_t{1} << (2 * n))) throw DomainError("coefficient count must be 4^N");
  }

  static CorrelatedElement scalar(int n, cplx s) {
    CorrelatedElement r(n);
    r.c_[0] = s;
    return r;
  }
  static CorrelatedElement identity(int n) { return scalar(n, 1.0); }
  static CorrelatedElement iota(int n) { return scalar(n, cplx{0, 1}); }

  // sigma_mu on qubit q (1-based).
  static CorrelatedElement pauli(int n, int q, int mu, cplx c = 1.0) {
    CorrelatedElement r(n);
    r.check_qubit(q);
    if (mu < 0 || mu > 3) throw DomainError("Pauli axis out of range");
    r.c_[static_cast<std::size_t>(mu) << (2 * (n - q))] = c;
    return r;
  }
  // Pauli string from one axis letter per qubit, e.g. "xz0".
  static CorrelatedElement string(const std::string& axes, cplx c = 1.0) {
    int n = static_cast<int>(axes.size());
    CorrelatedElement r(n);
    std::size_t idx = 0;
    for (char ch : axes) idx = idx * 4 + static_cast<std::size_t>(axis_from_char(ch));
    r.c_[idx] = c;
    return r;
  }
  static CorrelatedElement e_plus(int n, int q) { return 0.5 * (identity(n) + pauli(n, q, Z)); }
  static CorrelatedElement e_minus(int n, int q) { return 0.5 * (identity(n) - pauli(n, q, Z)); }
  // Lift a single-qubit element onto qubit q of an n-qubit register.
  static CorrelatedElement lift(const CorrelatedElement& one, int n, int q) {
    if (one.qubits() != 1) throw DomainError("lift expects a single-qubit element");
    CorrelatedElement r(n);
    r.check_qubit(q);
    for (int mu = 0; mu < 4; ++mu) r.c_[static_cast<std::size_t>(mu) << (2 * (n - q))] = one.c_[mu];
    return r;
  }

  int qubits() const { return n_; }
  std::size_t size() const { return c_.size(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx operator[](std::size_t i) const { return c_[i]; }
  cplx& operator[](std::size_t i) { return c_[i]; }
  int digit(std::size_t idx, int q) const { return static_cast<int>((idx >> (2 * (n_ - q))) & 3); }
  int weight(std::size_t idx) const {
    int w = 0;
    for (int q = 1; q <= n_; ++q) w += digit(idx, q) != 0;
    return w;
  }
  std::string label(std::size_t idx) const {
    std::string s;
    for (int q = 1; q <= n_; ++q) s += "0xyz"[digit(idx, q)];
    return s;
  }

  cplx scalar_coeff() const { return c_[0]; }
  // <A>_0: the real scalar part.
  double scalar_part() const { return c_[0].real(); }

  CorrelatedElement operator-() const { return (-1.0) * *this; }
  friend CorrelatedElement operator+(CorrelatedElement a, const CorrelatedElement& b) {
    a.same(b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend CorrelatedElement operator-(CorrelatedElement a, const CorrelatedElement& b) {
    a.same(b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend CorrelatedElement operator*(cplx s, CorrelatedElement a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }
  friend CorrelatedElement operator*(double s, CorrelatedElement a) { return cplx{s, 0} * std::move(a); }
  friend CorrelatedElement operator*(CorrelatedElement a, cplx s) { return s * std::move(a); }
  friend CorrelatedElement operator*(CorrelatedElement a, double s) { return s * std::move(a); }
  friend CorrelatedElement operator+(CorrelatedElement a, double s) {
    a.c_[0] += s;
    return a;
  }
  friend CorrelatedElement operator+(double s, CorrelatedElement a) { return std::move(a) + s; }
  friend CorrelatedElement operator-(CorrelatedElement a, double s) { return std::move(a) + (-s); }
  friend CorrelatedElement operator-(double s, const CorrelatedElement& a) { return (-a) + s; }

  friend CorrelatedElement operator*(const CorrelatedElement& a, const CorrelatedElement& b) {
    a.same(b);
    const int n = a.n_;
    CorrelatedElement r(n);
    std::vector<std::size_t> nzb;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != cplx{}) nzb.push_back(j);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == cplx{}) continue;
      for (std::size_t j : nzb) {
        int k = 0;
        for (int s = 0; s < n; ++s)
          k += detail::pauli_phase(static_cast<int>((i >> (2 * s)) & 3), static_cast<int>((j >> (2 * s)) & 3));
        r.c_[i ^ j] += detail::ipow(k) * a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  // Reversion: Pauli strings are fixed, the pseudoscalar flips sign.
  CorrelatedElement reverse() const {
    CorrelatedElement r = *this;
    for (auto& v : r.c_) v = std::conj(v);
    return r;
  }
  // Inversion in the origin: vectors and the pseudoscalar flip sign.
  CorrelatedElement hat() const {
    CorrelatedElement r = *this;
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      cplx v = std::conj(r.c_[i]);
      r.c_[i] = (weight(i) % 2) ? -v : v;
    }
    return r;
  }
  // <A>_+: real parts of even strings, imaginary parts of odd strings.
  CorrelatedElement even_part() const {
    CorrelatedElement r = *this;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      r.c_[i] = (weight(i) % 2) ? cplx{0, r.c_[i].imag()} : cplx{r.c_[i].real(), 0};
    return r;
  }
  bool is_even(double tol = 1e-12) const { return (*this - even_part()).max_abs() <= tol; }
  bool is_hermitian(double tol = 1e-12) const { return (*this - reverse()).max_abs() <= tol; }

  double max_abs() const {
    double m = 0;
    for (auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }
  double norm() const {
    double s = 0;
    for (auto& v : c_) s += std::norm(v);
    return std::sqrt(s);
  }
  double l1() const {
    double s = 0;
    for (auto& v : c_) s += std::abs(v);
    return s;
  }
  double max_abs_diff(const CorrelatedElement& o) const { return (*this - o).max_abs(); }
  bool approx_equal(const CorrelatedElement& o, double tol = 1e-10) const { return max_abs_diff(o) <= tol; }

  std::string to_string(double tol = 1e-12) const {
    std::ostringstream os;
    os.precision(12);
    bool any = false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (std::abs(c_[i]) <= tol) continue;
      if (any) os << " + ";
      any = true;
      os << "(" << c_[i].real() << (c_[i].imag() < 0 ? "-" : "+") << std::abs(c_[i].imag()) << "i)";
      if (i) os << "*" << label(i);
    }
    return any ? os.str() : "0";
  }

  void check_qubit(int q) const {
    if (q < 1 || q > n_) throw DomainError("qubit index " + std::to_string(q) + " out of range");
  }
  void same(const CorrelatedElement& o) const {
    if (n_ != o.n_) throw DomainError("qubit count mismatch");
  }

 private:
  static int check_n(int n) {
    if (n < 1 || n > kMaxCorrelatedQubits) throw DomainError("qubit count out of range");
    return n;
  }

  int n_;
  std::vector<cplx> c_;
};

inline constexpr int kCorrelatedExpCap = 64;

// e^A by scale-and-square Taylor series.
inline CorrelatedElement exp(const CorrelatedElement& a) {
  const int n = a.qubits();
  double nrm = a.l1();
  int k = 0;
  while (nrm >= 0.5) {
    nrm *= 0.5;
    ++k;
  }
  CorrelatedElement x = std::ldexp(1.0, -k) * a;
  CorrelatedElement sum = CorrelatedElement::identity(n);
  CorrelatedElement term = sum;
  bool done = false;
  for (int i = 1; i <= kCorrelatedExpCap; ++i) {
    term = (1.0 / i) * (term * x);
    sum = sum + term;
    if (term.l1() <= 1e-17 * std::max(1.0, sum.l1())) {
      done = true;
      break;
    }
  }
  if (!done) throw ConvergenceError("exponential series did not converge within the term cap");
  for (int i = 0; i < k; ++i) sum = sum * sum;
  return sum;
}

}  // namespace gaqi
