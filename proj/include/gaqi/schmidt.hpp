#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "gaqi/correlated.hpp"
#include "gaqi/errors.hpp"
#include "gaqi/multiqubit.hpp"

namespace gaqi {

using Vec2c = std::array<cplx, 2>;

struct Svd2 {
  double s1, s2;  // s1 >= s2 >= 0
  Vec2c u1, u2, w1, w2;
};

namespace detail {

inline Vec2c perp(const Vec2c& v) { return {-std::conj(v[1]), std::conj(v[0])}; }
inline double norm2(const Vec2c& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }
inline Vec2c scale(const Vec2c& v, cplx s) { return {v[0] * s, v[1] * s}; }
inline cplx inner(const Vec2c& a, const Vec2c& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; }
inline Vec2c conj(const Vec2c& v) { return {std::conj(v[0]), std::conj(v[1])}; }

inline double wrap_pi(double a) {
  a = std::remainder(a, 2 * std::numbers::pi);
  return a <= -std::numbers::pi ? a + 2 * std::numbers::pi : a;
}

}  // namespace detail

// Closed-form SVD of a 2x2 complex matrix A = s1 u1 w1^+ + s2 u2 w2^+.
// The leading nonzero entry of u1 is made real and nonnegative.
inline Svd2 svd2(const std::array<std::array<cplx, 2>, 2>& a) {
  using detail::perp;
  double f = std::norm(a[0][0]) + std::norm(a[0][1]) + std::norm(a[1][0]) + std::norm(a[1][1]);
  double det = std::abs(a[0][0] * a[1][1] - a[0][1] * a[1][0]);
  double disc = std::sqrt(std::max(0.0, f * f - 4 * det * det));
  Svd2 r;
  r.s1 = std::sqrt((f + disc) / 2);
  r.s2 = r.s1 > 0 ? det / r.s1 : 0.0;
  // Top eigenvector of A^+A.
  cplx h00 = std::conj(a[0][0]) * a[0][0] + std::conj(a[1][0]) * a[1][0];
  cplx h01 = std::conj(a[0][0]) * a[0][1] + std::conj(a[1][0]) * a[1][1];
  cplx h11 = std::conj(a[0][1]) * a[0][1] + std::conj(a[1][1]) * a[1][1];
  double l = r.s1 * r.s1;
  Vec2c c1{h01, l - h00}, c2{l - h11, std::conj(h01)};
  Vec2c w = detail::norm2(c1) >= detail::norm2(c2) ? c1 : c2;
  double nw = detail::norm2(w);
  r.w1 = nw > 1e-14 * std::max(1.0, f) ? detail::scale(w, 1.0 / nw) : Vec2c{1.0, 0.0};
  auto apply = [&](const Vec2c& v) -> Vec2c {
    return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]};
  };
  r.u1 = r.s1 > 0 ? detail::scale(apply(r.w1), 1.0 / r.s1) : Vec2c{1.0, 0.0};
  cplx lead = std::abs(r.u1[0]) > 1e-15 ? r.u1[0] : r.u1[1];
  if (std::abs(lead) > 0) {
    cplx ph = std::conj(lead) / std::abs(lead);
    r.u1 = detail::scale(r.u1, ph);
    r.w1 = detail::scale(r.w1, ph);
  }
  r.w2 = perp(r.w1);
  r.u2 = r.s2 > 1e-15 ? detail::scale(apply(r.w2), 1.0 / r.s2) : perp(r.u1);
  return r;
}

struct SchmidtFactors {
  double theta = 0, phi = 0;         // qubit-1 spinor angles
  double vartheta = 0, varphi = 0;   // qubit-2 spinor angles
  double varsigma = 0;               // tangle angle, cos(varsigma/2) >= sin(varsigma/2)
  double tau = 0;                    // relative phase in (-pi, pi]
  double global_phase = 0;
  double v11 = 1, v22 = 0;
};

namespace detail {

// [cos(t/2) e^{i p/2}; sin(t/2) e^{-i p/2}]
inline Vec2c schmidt_spinor(double t, double p) {
  return {std::polar(std::cos(t / 2), p / 2), std::polar(std::sin(t / 2), -p / 2)};
}
// [sin(t/2) e^{i p/2}; -cos(t/2) e^{-i p/2}]
inline Vec2c schmidt_spinor_perp(double t, double p) {
  return {std::polar(std::sin(t / 2), p / 2), -std::polar(std::cos(t / 2), -p / 2)};
}

// Angles of v = e^{i chi} schmidt_spinor(t, p); returns chi.
inline double spinor_angles(const Vec2c& v, double& t, double& p) {
  double a0 = std::abs(v[0]), a1 = std::abs(v[1]);
  t = 2 * std::atan2(a1, a0);
  p = (a0 > 1e-14 && a1 > 1e-14) ? wrap_pi(std::arg(v[0]) - std::arg(v[1])) : 0.0;
  return std::arg(inner(schmidt_spinor(t, p), v));
}

}  // namespace detail

inline Ket reconstruct_ket(const SchmidtFactors& f) {
  auto r = detail::schmidt_spinor(f.theta, f.phi), s = detail::schmidt_spinor(f.vartheta, f.varphi);
  auto rp = detail::schmidt_spinor_perp(f.theta, f.phi), sp = detail::schmidt_spinor_perp(f.vartheta, f.varphi);
  cplx c1 = std::polar(std::cos(f.varsigma / 2), f.tau / 2 + f.global_phase);
  cplx c2 = std::polar(std::sin(f.varsigma / 2), -f.tau / 2 + f.global_phase);
  std::vector<cplx> a(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a[static_cast<std::size_t>(2 * i + j)] = c1 * r[i] * s[j] + c2 * rp[i] * sp[j];
  return Ket(2, std::move(a));
}

inline SchmidtFactors schmidt_decompose_ket(const Ket& k) {
  if (k.qubits() != 2) throw DomainError("Schmidt decomposition needs two qubits");
  double nk = k.norm();
  if (nk < 1e-300) throw DomainError("zero-norm state");
  std::array<std::array<cplx, 2>, 2> a{{{k[0] / nk, k[1] / nk}, {k[2] / nk, k[3] / nk}}};
  auto d = svd2(a);
  SchmidtFactors f;
  f.v11 = d.s1;
  f.v22 = d.s2;
  f.varsigma = 2 * std::atan2(d.s2, d.s1);
  double chi1 = detail::spinor_angles(d.u1, f.theta, f.phi);
  double xi1 = detail::spinor_angles(detail::conj(d.w1), f.vartheta, f.varphi);
  double chi2 = std::arg(detail::inner(detail::schmidt_spinor_perp(f.theta, f.phi), d.u2));
  double xi2 = std::arg(detail::inner(detail::schmidt_spinor_perp(f.vartheta, f.varphi), detail::conj(d.w2)));
  double p1 = chi1 + xi1, p2 = chi2 + xi2;
  f.tau = d.s2 > 1e-15 ? detail::wrap_pi(p1 - p2) : 0.0;
  f.global_phase = detail::wrap_pi(p1 - f.tau / 2);
  return f;
}

inline SchmidtFactors schmidt_decompose(const Spinor& psi) { return schmidt_decompose_ket(ket_from_spinor(psi)); }

namespace detail {
// cos(a) + sin(a) K, the right-acting phase e^{aK}
inline CorrelatedElement k_phase(double a) {
  return std::cos(a) * CorrelatedElement::identity(2) + std::sin(a) * k_unit(2);
}
}  // namespace detail

// The tangler cos(s/2) - sin(s/2) sy^1 sy^2 K.
inline CorrelatedElement tangler(double varsigma) {
  auto yy = CorrelatedElement::string("yy");
  return std::cos(varsigma / 2) * CorrelatedElement::identity(2) - std::sin(varsigma / 2) * (yy * k_unit(2));
}

// Psi = R^1 S^2 P T D, times a right phase for the global phase.
// The GA angles relate to the ket-level ones by phi -> -phi, varphi -> -varphi,
// tau -> -tau - pi/2, and an extra global phase of pi/4.
inline Spinor reconstruct(const SchmidtFactors& f) {
  const int n = 2;
  const cplx i{0, 1};
  auto ez = [&](int q, double a) { return std::cos(a / 2) - i * std::sin(a / 2) * CorrelatedElement::pauli(n, q, Z); };
  auto ey = [&](int q, double a) { return std::cos(a / 2) - i * std::sin(a / 2) * CorrelatedElement::pauli(n, q, Y); };
  auto r1 = ez(1, -f.phi) * ey(1, f.theta);
  auto s2 = ez(2, -f.varphi) * ey(2, f.vartheta);
  double tau_ga = -f.tau - std::numbers::pi / 2;
  auto p = detail::k_phase(-tau_ga / 2);
  auto psi = r1 * s2 * p * tangler(f.varsigma) * directional_correlator(n) *
             detail::k_phase(f.global_phase - std::numbers::pi / 4);
  return Spinor::unchecked(psi);
}

struct TangleInvariant {
  double varsigma;            // in [0, pi/2]
  double tau;                 // phase stripped by P
  CorrelatedElement squared;  // P (Psi~ Psi) P~
};

// Psi~ Psi = D - sin(varsigma) sy sy K e^{beta K}. Stripping the phase with
// P = e^{-tau K/2}, tau = -beta, leaves T^2 D.
inline TangleInvariant tangle_invariant(const Spinor& psi) {
  if (psi.qubits() != 2) throw DomainError("tangle invariant needs two qubits");
  const auto d = directional_correlator(2);
  auto w = psi.value().reverse() * psi.value();
  auto o = w - d;
  auto yyk = CorrelatedElement::string("yy") * k_unit(2);
  auto yyd = CorrelatedElement::string("yy") * d;
  auto proj = [&](const CorrelatedElement& b) {
    return (o * b.reverse()).scalar_part() / (b * b.reverse()).scalar_part();
  };
  double c = -proj(yyk), s = proj(yyd);
  double sin_vs = std::hypot(c, s);
  double beta = sin_vs > 1e-15 ? std::atan2(s, c) : 0.0;
  TangleInvariant t{std::asin(std::min(1.0, sin_vs)), detail::wrap_pi(-beta), CorrelatedElement(2)};
  auto p = detail::k_phase(-t.tau / 2);
  t.squared = p * w * p.reverse();
  return t;
}

inline bool is_product_state(const Spinor& psi, double tol = 1e-8) {
  auto f = schmidt_decompose(psi);
  return std::sin(f.varsigma / 2) <= tol;
}

}  // namespace gaqi
