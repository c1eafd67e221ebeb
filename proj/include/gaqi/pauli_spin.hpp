#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "gaqi/errors.hpp"
#include "gaqi/ga_core.hpp"

namespace gaqi {

namespace g3 {

inline Multivector scalar(double s) { return Multivector(pauli_signature(), s); }
inline Multivector sx() { return Multivector::generator(pauli_signature(), 0); }
inline Multivector sy() { return Multivector::generator(pauli_signature(), 1); }
inline Multivector sz() { return Multivector::generator(pauli_signature(), 2); }
inline Multivector sigma(int mu) { return Multivector::generator(pauli_signature(), mu - 1); }
inline Multivector iota() { return Multivector::blade(pauli_signature(), 0b111); }
inline Multivector vec(double x, double y, double z) { return Multivector::vector(pauli_signature(), {x, y, z}); }
inline std::array<double, 3> components(const Multivector& v) {
  auto c = v.vector_components();
  return {c[0], c[1], c[2]};
}
inline double norm(const Multivector& v) {
  auto c = components(v);
  return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
}
inline void require_g3(const Multivector& a) {
  if (!(a.signature() == *pauli_signature())) throw SignatureMismatch();
}
inline void require_vector(const Multivector& a) {
  require_g3(a);
  if (!a.is_grade(1)) throw DomainError("expected a vector of G3");
}

// Component-formula cross product, independent of the algebra.
inline Multivector cross(const Multivector& a, const Multivector& b) {
  auto u = components(a), v = components(b);
  return vec(u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]);
}

}  // namespace g3

// -a x a^{-1}
inline Multivector reflect(const Multivector& a, const Multivector& x) {
  g3::require_vector(a);
  g3::require_vector(x);
  if (g3::norm(a) < 1e-14) throw DomainError("reflection needs a nonzero normal vector");
  return grade_project(-(a * x * vector_inverse(a)), 1);
}

class Rotor {
 public:
  explicit Rotor(Multivector r, double tol = 1e-10) : r_(std::move(r)) {
    g3::require_g3(r_);
    if (!r_.is_even()) throw DomainError("rotor must be even");
    if ((r_ * reverse(r_) - 1.0).coeff_l1() > tol) throw DomainError("rotor must have unit norm");
  }
  const Multivector& value() const { return r_; }
  Rotor operator*(const Rotor& o) const { return Rotor(r_ * o.r_); }
  Rotor reversed() const { return Rotor(reverse(r_)); }

 private:
  Multivector r_;
};

// exp(-iota r theta/2) = cos(theta/2) - iota r sin(theta/2)
inline Rotor rotor_from_axis_angle(const Multivector& r, double theta) {
  g3::require_vector(r);
  if (std::abs(g3::norm(r) - 1) > 1e-10) throw DomainError("rotation axis must be a unit vector");
  return Rotor(exp_bivector((-theta / 2) * (g3::iota() * r)));
}

struct AxisAngle {
  Multivector axis;
  double theta;
};

// Inverse of rotor_from_axis_angle with theta in [0, 2 pi]; the axis defaults
// to sz when the bivector part vanishes.
inline AxisAngle axis_angle_of_rotor(const Rotor& rot) {
  const auto& r = rot.value();
  // -iota r sin = B  =>  r sin = iota B
  auto v = grade_project(g3::iota() * grade_project(r, 2), 1);
  double s = g3::norm(v);
  double theta = 2 * std::atan2(s, r.scalar());
  if (s < 1e-12) return {g3::sz(), theta};
  return {(1.0 / s) * v, theta};
}

// R x R~
inline Multivector rotate(const Rotor& r, const Multivector& x) {
  g3::require_vector(x);
  return grade_project(r.value() * x * reverse(r.value()), 1);
}

struct CayleyKlein {
  cplx psi1, psi2;
};

// First column of the SU(2) matrix of R: psi1 = w + i b_xy, psi2 = b_xz + i b_yz.
inline CayleyKlein cayley_klein_of_rotor(const Rotor& rot) {
  const auto& r = rot.value();
  return {{r.scalar(), r.coeff(0b011)}, {r.coeff(0b101), r.coeff(0b110)}};
}

inline Rotor rotor_of_cayley_klein(const CayleyKlein& ck) {
  double n = std::norm(ck.psi1) + std::norm(ck.psi2);
  if (std::abs(n - 1) > 1e-10) throw DomainError("Cayley-Klein pair must have unit norm");
  auto sig = pauli_signature();
  return Rotor(Multivector::from_terms(
      sig, {{0, ck.psi1.real()}, {0b011, ck.psi1.imag()}, {0b101, ck.psi2.real()}, {0b110, ck.psi2.imag()}}));
}

// [psi1, -psi2*; psi2, psi1*]
inline std::array<std::array<cplx, 2>, 2> su2_matrix(const CayleyKlein& ck) {
  return {{{ck.psi1, -std::conj(ck.psi2)}, {ck.psi2, std::conj(ck.psi1)}}};
}

// rho = 1/2 (1 + p)
class QubitDensity {
 public:
  explicit QubitDensity(const Multivector& p, double tol = 1e-12) : p_(p) {
    g3::require_vector(p_);
    if (g3::norm(p_) > 1 + tol) throw DomainError("polarization vector longer than 1");
  }
  static QubitDensity mixture(const std::vector<double>& weights, const std::vector<Rotor>& rotors);

  double scalar() const { return 0.5; }
  const Multivector& polarization() const { return p_; }
  bool is_pure(double tol = 1e-10) const { return std::abs(g3::norm(p_) - 1) <= tol; }
  Multivector value() const { return 0.5 * (1.0 + p_); }

 private:
  Multivector p_;
};

// R E+ R~ = 1/2 (1 + R sz R~)
inline QubitDensity density_from_rotor(const Rotor& r) { return QubitDensity(rotate(r, g3::sz())); }

inline QubitDensity QubitDensity::mixture(const std::vector<double>& weights, const std::vector<Rotor>& rotors) {
  if (weights.empty() || weights.size() != rotors.size()) throw DomainError("weights and rotors must pair up");
  double total = 0;
  Multivector p(pauli_signature());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < 0) throw DomainError("negative ensemble weight");
    total += weights[k];
    p = p + weights[k] * rotate(rotors[k], g3::sz());
  }
  if (std::abs(total - 1) > 1e-10) throw DomainError("ensemble weights must sum to 1");
  return QubitDensity(p);
}

// <sigma_mu rho>_0 scaled to sigma_mu . p
inline double expectation_1q(int mu, const QubitDensity& rho) {
  if (mu < 1 || mu > 3) throw DomainError("axis must be x, y or z");
  return 2 * (g3::sigma(mu) * rho.value()).scalar();
}

// psi2/psi1 for the pure state with polarization p (projection from -sz).
inline cplx stereographic_ratio(const Multivector& p) {
  g3::require_vector(p);
  auto c = g3::components(p);
  if (std::abs(g3::norm(p) - 1) > 1e-10) throw DomainError("stereographic projection needs a unit vector");
  double den = 1 + c[2];
  if (den < 1e-12) throw DomainError("south pole has no finite stereographic image");
  return {c[0] / den, c[1] / den};
}

// (Re(psi1* psi2) + Im(psi1* psi2) K) / |psi1|^2 from the spinor itself.
inline cplx stereographic_ratio_of_rotor(const Rotor& r) {
  auto ck = cayley_klein_of_rotor(r);
  double d = std::norm(ck.psi1);
  if (d < 1e-24) throw DomainError("south pole has no finite stereographic image");
  return std::conj(ck.psi1) * ck.psi2 / d;
}

}  // namespace gaqi
