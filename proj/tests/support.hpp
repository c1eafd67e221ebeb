#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gaqi.hpp"

namespace gaqi::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& g, double lo = -1, double hi = 1) { return std::uniform_real_distribution<double>(lo, hi)(g); }
inline double gauss(Rng& g) { return std::normal_distribution<double>(0, 1)(g); }

inline Multivector random_multivector(Rng& g, const SignaturePtr& sig, double density = 1.0) {
  std::vector<Multivector::Term> t;
  for (Mask m = 0; m < (Mask{1} << sig->dim()); ++m)
    if (uniform(g, 0, 1) < density) t.push_back({m, uniform(g)});
  return Multivector::from_terms(sig, std::move(t));
}

inline Multivector random_grade(Rng& g, const SignaturePtr& sig, int k) {
  std::vector<Multivector::Term> t;
  for (Mask m = 0; m < (Mask{1} << sig->dim()); ++m)
    if (std::popcount(m) == k) t.push_back({m, uniform(g)});
  return Multivector::from_terms(sig, std::move(t));
}

inline Multivector random_vector(Rng& g, const SignaturePtr& sig) { return random_grade(g, sig, 1); }

inline CorrelatedElement random_element(Rng& g, int n) {
  CorrelatedElement a(n);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = cplx{uniform(g), uniform(g)};
  return a;
}

inline CorrelatedElement random_hermitian(Rng& g, int n) {
  CorrelatedElement a(n);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = uniform(g);
  return a;
}

inline CorrelatedElement random_unitary(Rng& g, int n) {
  return exp(cplx{0, 1} * random_hermitian(g, n));
}

inline Ket random_ket(Rng& g, int n) {
  std::vector<cplx> a(std::size_t{1} << n);
  for (auto& v : a) v = cplx{gauss(g), gauss(g)};
  return Ket(n, std::move(a)).normalized();
}

inline Rotor random_rotor(Rng& g) {
  double q[4], s = 0;
  for (double& v : q) {
    v = gauss(g);
    s += v * v;
  }
  s = std::sqrt(s);
  return Rotor(Multivector::from_terms(pauli_signature(),
                                       {{0, q[0] / s}, {0b011, q[1] / s}, {0b101, q[2] / s}, {0b110, q[3] / s}}));
}

inline DensityOperator random_density(Rng& g, int n, int members = 3) {
  std::vector<double> w;
  std::vector<Spinor> s;
  double total = 0;
  for (int k = 0; k < members; ++k) {
    w.push_back(uniform(g, 0.05, 1));
    total += w.back();
    s.push_back(spinor_from_ket(random_ket(g, n)));
  }
  for (double& v : w) v /= total;
  return density_from_ensemble(w, s);
}

// Random normal single-qubit channel: K_k = Q_k S^{-1/2} with S = sum Q~Q.
inline KrausChannel random_normal_channel(Rng& g, int ops = 3) {
  std::vector<CorrelatedElement> q;
  for (int k = 0; k < ops; ++k) q.push_back(random_element(g, 1));
  CorrelatedElement s(1);
  for (auto& o : q) s = s + o.reverse() * o;
  auto eig = hermitian_eigen(represent(s));
  ComplexMatrix d(2);
  for (std::size_t i = 0; i < 2; ++i) d(i, i) = 1 / std::sqrt(eig.values[i]);
  auto inv_sqrt = unrepresent(eig.vectors * d * eig.vectors.adjoint());
  for (auto& o : q) o = o * inv_sqrt;
  return KrausChannel(1, q);
}

// Random normal and unital single-qubit channel: a mixture of unitaries.
inline KrausChannel random_unital_channel(Rng& g, int ops = 3) {
  std::vector<double> w;
  double total = 0;
  for (int k = 0; k < ops; ++k) total += w.emplace_back(uniform(g, 0.05, 1));
  std::vector<CorrelatedElement> q;
  for (int k = 0; k < ops; ++k) q.push_back(std::sqrt(w[static_cast<std::size_t>(k)] / total) * random_unitary(g, 1));
  return KrausChannel(1, q);
}

}  // namespace gaqi::testing
