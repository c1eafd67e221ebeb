#pragma once

#include <array>
#include <cmath>

#include "gaqi/errors.hpp"
#include "gaqi/ga_core.hpp"
#include "gaqi/pauli_spin.hpp"

namespace gaqi {

namespace sta {

inline Multivector gamma(int mu) { return Multivector::generator(dirac_signature(), mu); }
inline Multivector gt() { return gamma(0); }
inline Multivector vec(double t, double x, double y, double z) {
  return Multivector::vector(dirac_signature(), {t, x, y, z});
}
inline void require_sta(const Multivector& a) {
  if (!(a.signature() == *dirac_signature())) throw SignatureMismatch();
}

}  // namespace sta

// sigma_mu -> gamma_mu gamma_t, extended multiplicatively.
inline Multivector pauli_embed(const Multivector& a) {
  g3::require_g3(a);
  static const std::array<Multivector, 3> s = {sta::gamma(1) * sta::gt(), sta::gamma(2) * sta::gt(),
                                               sta::gamma(3) * sta::gt()};
  Multivector r(dirac_signature());
  for (auto& [m, c] : a.terms()) {
    Multivector b(dirac_signature(), c);
    for (int i = 0; i < 3; ++i)
      if (m >> i & 1) b = b * s[static_cast<std::size_t>(i)];
    r = r + b;
  }
  return r;
}

// Inverse of pauli_embed on the even subalgebra of G(1,3).
inline Multivector pauli_extract(const Multivector& a) {
  sta::require_sta(a);
  if (!a.is_even()) throw DomainError("only even elements of G(1,3) have a Pauli image");
  static const std::array<std::pair<Mask, double>, 16> table = [] {
    std::array<std::pair<Mask, double>, 16> t{};
    for (Mask m = 0; m < 8; ++m) {
      auto e = pauli_embed(Multivector::blade(pauli_signature(), m));
      auto& term = e.terms().front();
      t[term.first] = {m, 1.0 / term.second};
    }
    return t;
  }();
  std::vector<Multivector::Term> out;
  for (auto& [m, c] : a.terms()) out.push_back({table[m].first, c * table[m].second});
  return Multivector::from_terms(pauli_signature(), std::move(out));
}

namespace detail {

// Rotor L with L u L~ = gamma_t for a future-pointing unit timelike u.
inline Multivector frame_rotor(const Multivector& u) {
  sta::require_sta(u);
  if (!u.is_grade(1)) throw DomainError("frame must be a vector");
  double uu = inner_product_vectors(u, u);
  if (std::abs(uu - 1) > 1e-10) throw DomainError("frame vector must be unit timelike");
  double ut = inner_product_vectors(u, sta::gt());
  if (ut <= 0) throw DomainError("frame vector must be future-pointing");
  return (1.0 / std::sqrt(2 * (1 + ut))) * (1.0 + sta::gt() * u);
}

}  // namespace detail

struct SpacetimeSplit {
  double t;
  Multivector s;  // G3 vector
};

// e u = e.u + e^u, read in the frame of u.
inline SpacetimeSplit spacetime_split(const Multivector& e, const Multivector& u) {
  sta::require_sta(e);
  if (!e.is_grade(1)) throw DomainError("event must be a vector");
  auto l = detail::frame_rotor(u);
  auto ep = l * e * reverse(l);
  double t = inner_product_vectors(ep, sta::gt());
  return {t, grade_project(pauli_extract(outer_product(ep, sta::gt())), 1)};
}

// (v ^ u)/(v . u)
inline Multivector relative_velocity(const Multivector& v, const Multivector& u) {
  sta::require_sta(v);
  if (!v.is_grade(1)) throw DomainError("velocity must be a vector");
  auto l = detail::frame_rotor(u);
  auto vp = l * v * reverse(l);
  double vt = inner_product_vectors(vp, sta::gt());
  if (std::abs(vt) < 1e-300) throw DomainError("velocity is orthogonal to the frame");
  return (1.0 / vt) * grade_project(pauli_extract(outer_product(vp, sta::gt())), 1);
}

struct FaradaySplit {
  Multivector e, b;  // G3 vectors
};

// E = (F.gt) gt, iota B = (F^gt) gt
inline FaradaySplit faraday_split(const Multivector& f, const Multivector& u) {
  sta::require_sta(f);
  if (!f.is_grade(2)) throw DomainError("Faraday field must be a bivector");
  auto l = detail::frame_rotor(u);
  auto fp = l * f * reverse(l);
  auto g = sta::gt();
  auto e = pauli_extract(inner_product(fp, g) * g);
  auto ib = pauli_extract(outer_product(fp, g) * g);
  return {grade_project(e, 1), grade_project(-(g3::iota() * ib), 1)};
}

// (q/m) F . v
inline Multivector lorentz_force(double m, double q, const Multivector& f, const Multivector& v) {
  if (!(m > 0)) throw DomainError("mass must be positive");
  sta::require_sta(f);
  sta::require_sta(v);
  return (q / m) * grade_project(inner_product(f, v), 1);
}

// (alpha cosh l - sinh l)/(cosh l - alpha sinh l)
inline double boost_polarization(double alpha, double lambda) {
  if (!(std::abs(alpha) <= 1)) throw DomainError("|alpha| must not exceed 1");
  double c = std::cosh(lambda), s = std::sinh(lambda);
  return (alpha * c - s) / (c - alpha * s);
}

// tanh(-beta eps/2 - lambda), with half_beta_eps = beta eps / 2.
inline double boost_polarization_thermal(double half_beta_eps, double lambda) {
  return std::tanh(-half_beta_eps - lambda);
}

inline double rapidity_of_velocity(double v) {
  if (!(std::abs(v) < 1)) throw DomainError("speed must be below 1");
  return std::atanh(v);
}

class RelativisticDensity {
 public:
  explicit RelativisticDensity(Multivector rho) : r_(std::move(rho)) {
    sta::require_sta(r_);
    if (!r_.is_grade(1)) throw DomainError("relativistic density must be a vector");
    if (inner_product_vectors(r_, r_) < -1e-12) throw DomainError("relativistic density must not be spacelike");
    if (inner_product_vectors(r_, sta::gt()) <= 0) throw DomainError("relativistic density must be future-pointing");
  }
  // 1/2 (gt + alpha g_axis)
  static RelativisticDensity from_polarization(double alpha, int axis = 3) {
    if (std::abs(alpha) > 1) throw DomainError("|alpha| must not exceed 1");
    if (axis < 1 || axis > 3) throw DomainError("axis must be x, y or z");
    return RelativisticDensity(0.5 * (sta::gt() + alpha * sta::gamma(axis)));
  }
  const Multivector& value() const { return r_; }
  // rho' gt / (rho' . gt), vector part, as a G3 vector.
  Multivector polarization() const {
    double t = inner_product_vectors(r_, sta::gt());
    return (1.0 / t) * grade_project(pauli_extract(outer_product(r_, sta::gt())), 1);
  }

 private:
  Multivector r_;
};

// L rho L~ with L = exp(-lambda sigma_axis / 2) embedded in G(1,3).
inline RelativisticDensity boost_density(const RelativisticDensity& rho, double lambda, int axis = 3) {
  if (axis < 1 || axis > 3) throw DomainError("axis must be x, y or z");
  auto l = exp_bivector((-lambda / 2) * pauli_embed(g3::sigma(axis)));
  return RelativisticDensity(grade_project(l * rho.value() * reverse(l), 1));
}

}  // namespace gaqi
