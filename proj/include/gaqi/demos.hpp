#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "gaqi/correlated.hpp"
#include "gaqi/errors.hpp"
#include "gaqi/multiqubit.hpp"
#include "gaqi/spacetime.hpp"

namespace gaqi {

struct FidResult {
  std::vector<double> t;
  std::vector<double> mx;
};

// rho'_eq = 2^-N (1 + alpha sum sx^q)
inline DensityOperator transverse_density(int n, double alpha) {
  if (std::abs(alpha) > 1) throw DomainError("|alpha| must not exceed 1");
  CorrelatedElement r = CorrelatedElement::identity(n);
  for (int q = 1; q <= n; ++q) r = r + alpha * CorrelatedElement::pauli(n, q, X);
  return DensityOperator::unchecked(std::ldexp(1.0, -n) * r);
}

// exp(-iota Z t), Z = sum_q omega_q sz^q / 2. The terms commute, so the
// exponential factors into single-qubit phase rotors.
inline CorrelatedElement zeeman_propagator(const std::vector<double>& omega, double t) {
  const int n = static_cast<int>(omega.size());
  CorrelatedElement u = CorrelatedElement::identity(n);
  for (int q = 1; q <= n; ++q) {
    double a = omega[static_cast<std::size_t>(q - 1)] * t / 2;
    u = u * (std::cos(a) - cplx{0, std::sin(a)} * CorrelatedElement::pauli(n, q, Z));
  }
  return u;
}

// Mx(t) = gamma 2^N < sum_q sx^q rho(t) >_0 sampled at t_k = k duration / samples.
inline FidResult nmr_fid(const std::vector<double>& omega, double alpha, double gamma, double duration, int samples) {
  if (omega.empty()) throw DomainError("need at least one spin frequency");
  if (samples < 2) throw DomainError("need at least two samples");
  if (!(duration > 0)) throw DomainError("duration must be positive");
  const int n = static_cast<int>(omega.size());
  auto rho0 = transverse_density(n, alpha);
  CorrelatedElement mx_op(n);
  for (int q = 1; q <= n; ++q) mx_op = mx_op + CorrelatedElement::pauli(n, q, X);
  FidResult r;
  const double dt = duration / samples;
  for (int k = 0; k < samples; ++k) {
    double t = k * dt;
    auto u = zeeman_propagator(omega, t);
    auto rho = DensityOperator::unchecked(u * rho0.value() * u.reverse());
    r.t.push_back(t);
    r.mx.push_back(gamma * expectation(mx_op, rho));
  }
  return r;
}

inline double fid_closed_form(const std::vector<double>& omega, double alpha, double gamma, double t) {
  double s = 0;
  for (double w : omega) s += std::cos(w * t);
  return alpha * gamma * s;
}

// |sum_k x_k e^{-2 pi i j k / M}| for j = 0 .. M/2.
inline std::vector<double> dft_magnitude(const std::vector<double>& x) {
  const std::size_t m = x.size();
  std::vector<double> mag(m / 2 + 1);
  for (std::size_t j = 0; j < mag.size(); ++j) {
    cplx s{};
    for (std::size_t k = 0; k < m; ++k)
      s += x[k] * std::polar(1.0, -2 * std::numbers::pi * static_cast<double>((j * k) % m) / static_cast<double>(m));
    mag[j] = std::abs(s);
  }
  return mag;
}

// Indices of the `count` largest local maxima, excluding the DC bin, ascending.
inline std::vector<std::size_t> peak_bins(const std::vector<double>& mag, std::size_t count) {
  std::vector<std::size_t> cand;
  for (std::size_t j = 1; j < mag.size(); ++j) {
    bool left = mag[j] >= mag[j - 1];
    bool right = j + 1 == mag.size() || mag[j] >= mag[j + 1];
    if (left && right) cand.push_back(j);
  }
  std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  if (cand.size() > count) cand.resize(count);
  std::sort(cand.begin(), cand.end());
  return cand;
}

// Bin of angular frequency omega for a record of the given duration.
inline double expected_bin(double omega, double duration) { return omega * duration / (2 * std::numbers::pi); }

struct BoostRow {
  double lambda, rational, thermal;
};

// alpha = tanh(-half_beta_eps); rows over an even lambda grid.
inline std::vector<BoostRow> boost_table(double half_beta_eps, double lambda_min, double lambda_max, int points) {
  if (points < 2) throw DomainError("need at least two grid points");
  if (!(lambda_max > lambda_min)) throw DomainError("empty rapidity range");
  double alpha = std::tanh(-half_beta_eps);
  std::vector<BoostRow> rows;
  for (int i = 0; i < points; ++i) {
    double l = lambda_min + (lambda_max - lambda_min) * i / (points - 1);
    rows.push_back({l, boost_polarization(alpha, l), boost_polarization_thermal(half_beta_eps, l)});
  }
  return rows;
}

// Rows for an explicit alpha; the second column is tanh(atanh(alpha) - lambda).
inline std::vector<BoostRow> boost_table_alpha(double alpha, double lambda_min, double lambda_max, int points) {
  if (!(std::abs(alpha) < 1)) throw DomainError("|alpha| must be below 1 for the tanh form");
  return boost_table(-std::atanh(alpha), lambda_min, lambda_max, points);
}

}  // namespace gaqi
