#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "gaqi/correlated.hpp"
#include "gaqi/errors.hpp"
#include "gaqi/ga_core.hpp"

// The uncorrelated N-particle algebra, realised inside G(N,3N):
// sigma_mu^q = gamma_mu^q gamma_t^q. Even elements of different particles
// commute, so products of these span the tensor product of N Pauli algebras.
namespace gaqi::raw {

inline int t_index(int q) { return q - 1; }
inline int space_index(int n, int q, int mu) { return n + 3 * (q - 1) + (mu - 1); }

inline Multivector one(int n) { return Multivector(multiparticle_dirac_signature(n), 1.0); }

// sigma_mu^q, mu in {1,2,3}; mu = 0 gives the scalar 1.
inline Multivector sigma(int n, int q, int mu) {
  if (q < 1 || q > n) throw DomainError("particle index out of range");
  if (mu == 0) return one(n);
  auto sig = multiparticle_dirac_signature(n);
  return Multivector::generator(sig, space_index(n, q, mu)) * Multivector::generator(sig, t_index(q));
}

// iota^q = sigma_x^q sigma_y^q sigma_z^q
inline Multivector iota(int n, int q) { return sigma(n, q, 1) * sigma(n, q, 2) * sigma(n, q, 3); }

inline Multivector correlator(int n) {
  Multivector c = one(n);
  for (int q = 2; q <= n; ++q) c = c * (0.5 * (1.0 - iota(n, 1) * iota(n, q)));
  return c;
}

inline Multivector directional_correlator(int n) {
  Multivector d = one(n);
  for (int q = 2; q <= n; ++q)
    d = d * (0.5 * (1.0 - iota(n, 1) * sigma(n, 1, 3) * iota(n, q) * sigma(n, q, 3)));
  return d;
}

// Pauli string times an optional iota^1, as a raw element.
inline Multivector pauli_string(int n, std::size_t idx, bool with_iota = false) {
  Multivector r = with_iota ? iota(n, 1) : one(n);
  for (int q = 1; q <= n; ++q) {
    int mu = static_cast<int>((idx >> (2 * (n - q))) & 3);
    if (mu) r = r * sigma(n, q, mu);
  }
  return r;
}

// Representative of a correlated element: the imaginary unit becomes iota^1.
inline Multivector lift(const CorrelatedElement& a) {
  const int n = a.qubits();
  Multivector r(multiparticle_dirac_signature(n));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != 0) r = r + a[i].real() * pauli_string(n, i);
    if (a[i].imag() != 0) r = r + a[i].imag() * pauli_string(n, i, true);
  }
  return r;
}

namespace detail {

// Local (t,x,y,z) mask of particle q within a global blade.
inline unsigned local_mask(Mask m, int n, int q) {
  unsigned l = (m >> t_index(q)) & 1u;
  for (int mu = 1; mu <= 3; ++mu) l |= static_cast<unsigned>((m >> space_index(n, q, mu)) & 1u) << mu;
  return l;
}

struct LocalImage {
  cplx c;
  int axis;
};

// Each even blade of G(1,3) is +-(1 or i) times a Pauli matrix under
// sigma_mu = gamma_mu gamma_t.
inline const std::array<LocalImage, 16>& local_table() {
  static const std::array<LocalImage, 16> table = [] {
    std::array<LocalImage, 16> t{};
    auto sig = dirac_signature();
    auto s = [&](int mu) {
      return mu ? Multivector::generator(sig, mu) * Multivector::generator(sig, 0) : Multivector(sig, 1.0);
    };
    const cplx i{0, 1};
    // Enumerate G3 basis: i^k sigma_mu for k in {0,1}, products expanded in G(1,3).
    Multivector iota = s(1) * s(2) * s(3);
    for (int k = 0; k < 2; ++k)
      for (int mu = 0; mu < 4; ++mu) {
        Multivector e = k ? iota * s(mu) : s(mu);
        auto& term = e.terms().front();
        t[term.first] = {(k ? i : cplx{1, 0}) * (1.0 / term.second), mu};
      }
    return t;
  }();
  return table;
}

}  // namespace detail

// Image in G3^{(x)N}/C: every iota^q becomes the imaginary unit. Requires an
// element of the product of the particles' even subalgebras.
inline CorrelatedElement to_correlated(const Multivector& a, int n) {
  if (!(a.signature() == *multiparticle_dirac_signature(n))) throw SignatureMismatch();
  const auto& table = detail::local_table();
  CorrelatedElement r(n);
  for (auto& [m, c] : a.terms()) {
    Multivector acc = one(n);
    cplx coef = c;
    std::size_t idx = 0;
    for (int q = 1; q <= n; ++q) {
      unsigned l = detail::local_mask(m, n, q);
      if (std::popcount(l) % 2) throw DomainError("element is not in the product of even subalgebras");
      coef *= table[l].c;
      idx = idx * 4 + static_cast<std::size_t>(table[l].axis);
      Mask g = 0;
      if (l & 1u) g |= Mask{1} << t_index(q);
      for (int mu = 1; mu <= 3; ++mu)
        if (l >> mu & 1u) g |= Mask{1} << space_index(n, q, mu);
      acc = acc * Multivector::blade(multiparticle_dirac_signature(n), g);
    }
    // acc is +-e_m; the particle-ordered product carries the local images.
    r[idx] += coef * acc.coeff(m);
  }
  return r;
}

}  // namespace gaqi::raw
