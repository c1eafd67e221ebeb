#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "gaqi/correlated.hpp"
#include "gaqi/errors.hpp"
#include "gaqi/gates.hpp"
#include "gaqi/matrix_oracle.hpp"
#include "gaqi/multiqubit.hpp"

namespace gaqi {

using Vec3 = std::array<double, 3>;

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

struct KrausChannel {
  int n_qubits;
  std::vector<CorrelatedElement> ops;

  KrausChannel(int n, std::vector<CorrelatedElement> q) : n_qubits(n), ops(std::move(q)) {
    if (ops.empty()) throw DomainError("channel needs at least one operator");
    for (auto& o : ops)
      if (o.qubits() != n) throw DomainError("operator width does not match the channel");
  }
};

// sum_k Q_k rho Q_k~
inline CorrelatedElement apply_channel(const KrausChannel& ch, const CorrelatedElement& rho) {
  if (rho.qubits() != ch.n_qubits) throw DomainError("density width does not match the channel");
  CorrelatedElement r(ch.n_qubits);
  for (auto& q : ch.ops) r = r + q * rho * q.reverse();
  return r;
}

inline DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho) {
  return DensityOperator::unchecked(apply_channel(ch, rho.value()));
}

inline constexpr double kChannelTol = 1e-9;

// sum Q~Q = 1
inline bool check_normal(const KrausChannel& ch, double tol = kChannelTol) {
  CorrelatedElement s(ch.n_qubits);
  for (auto& q : ch.ops) s = s + q.reverse() * q;
  return s.max_abs_diff(CorrelatedElement::identity(ch.n_qubits)) <= tol;
}

// sum Q Q~ = 1
inline bool check_unital(const KrausChannel& ch, double tol = kChannelTol) {
  CorrelatedElement s(ch.n_qubits);
  for (auto& q : ch.ops) s = s + q * q.reverse();
  return s.max_abs_diff(CorrelatedElement::identity(ch.n_qubits)) <= tol;
}

// Omega(1) = 1 by direct application.
inline bool probe_unital(const KrausChannel& ch, double tol = kChannelTol) {
  auto one = CorrelatedElement::identity(ch.n_qubits);
  return apply_channel(ch, one).max_abs_diff(one) <= tol;
}

// Q = (alpha + iota a) + iota (beta + iota b)
struct QuaternionPair {
  double alpha = 0, beta = 0;
  Vec3 a{}, b{};

  CorrelatedElement reconstruct() const {
    CorrelatedElement q(1);
    q[0] = cplx{alpha, beta};
    for (int mu = 1; mu <= 3; ++mu) q[static_cast<std::size_t>(mu)] = cplx{-b[mu - 1], a[mu - 1]};
    return q;
  }
  CorrelatedElement quaternion_a() const {
    CorrelatedElement q(1);
    q[0] = alpha;
    for (int mu = 1; mu <= 3; ++mu) q[static_cast<std::size_t>(mu)] = cplx{0, a[mu - 1]};
    return q;
  }
  CorrelatedElement quaternion_b() const {
    CorrelatedElement q(1);
    q[0] = beta;
    for (int mu = 1; mu <= 3; ++mu) q[static_cast<std::size_t>(mu)] = cplx{0, b[mu - 1]};
    return q;
  }
};

inline QuaternionPair quaternion_decompose(const CorrelatedElement& q) {
  if (q.qubits() != 1) throw DomainError("quaternion decomposition is single-qubit only");
  QuaternionPair p;
  p.alpha = q[0].real();
  p.beta = q[0].imag();
  for (int mu = 1; mu <= 3; ++mu) {
    p.a[mu - 1] = q[static_cast<std::size_t>(mu)].imag();
    p.b[mu - 1] = -q[static_cast<std::size_t>(mu)].real();
  }
  return p;
}

struct QuaternionConditions {
  bool cond1a;  // sum(alpha b - beta a) = sum a x b
  bool cond1b;  // sum(alpha^2 + |a|^2 + beta^2 + |b|^2) = 1
  bool cond2;   // sum(alpha b - beta a) = sum b x a
  bool normal() const { return cond1b && cond2; }
  bool unital() const { return cond1b && cond1a; }
};

inline QuaternionConditions quaternion_conditions(const KrausChannel& ch, double tol = kChannelTol) {
  if (ch.n_qubits != 1) throw DomainError("quaternion conditions are single-qubit only");
  Vec3 lhs{}, axb{};
  double norm = 0;
  for (auto& q : ch.ops) {
    auto p = quaternion_decompose(q);
    auto c = cross(p.a, p.b);
    for (int i = 0; i < 3; ++i) {
      lhs[i] += p.alpha * p.b[i] - p.beta * p.a[i];
      axb[i] += c[i];
    }
    norm += p.alpha * p.alpha + dot(p.a, p.a) + p.beta * p.beta + dot(p.b, p.b);
  }
  auto close = [tol](const Vec3& u, const Vec3& v) {
    for (int i = 0; i < 3; ++i)
      if (std::abs(u[i] - v[i]) > tol) return false;
    return true;
  };
  return {close(lhs, axb), std::abs(norm - 1) <= tol, close(lhs, Vec3{-axb[0], -axb[1], -axb[2]})};
}

// Omega(1/2 (1 + r)) = 1/2 (1 + t + sum_mu r_mu s_mu)
struct AffineMap1Q {
  Vec3 t{};
  std::array<Vec3, 3> s{};  // s[mu] is the image of sigma_mu

  double max_abs_diff(const AffineMap1Q& o) const {
    double m = 0;
    for (int i = 0; i < 3; ++i) {
      m = std::max(m, std::abs(t[i] - o.t[i]));
      for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(s[i][j] - o.s[i][j]));
    }
    return m;
  }
};

namespace detail {
inline Vec3 vector_part(const CorrelatedElement& a) {
  return {a[1].real(), a[2].real(), a[3].real()};
}
inline void require_single_normal(const KrausChannel& ch) {
  if (ch.n_qubits != 1) throw DomainError("affine form is single-qubit only");
  if (!check_normal(ch)) throw DomainError("affine form needs a normal channel");
}
}  // namespace detail

// t = 4 sum(beta a - alpha b) = 4 sum a x b,  s_mu = sum (A s_mu A~ + B s_mu B~)
inline AffineMap1Q affine_form(const KrausChannel& ch) {
  detail::require_single_normal(ch);
  AffineMap1Q m;
  for (auto& q : ch.ops) {
    auto p = quaternion_decompose(q);
    auto A = p.quaternion_a(), B = p.quaternion_b();
    for (int i = 0; i < 3; ++i) m.t[i] += 4 * (p.beta * p.a[i] - p.alpha * p.b[i]);
    for (int mu = 1; mu <= 3; ++mu) {
      auto smu = CorrelatedElement::pauli(1, 1, mu);
      auto img = detail::vector_part(A * smu * A.reverse() + B * smu * B.reverse());
      for (int i = 0; i < 3; ++i) m.s[mu - 1][i] += img[i];
    }
  }
  return m;
}

// Probe Omega on 1, sx, sy, sz.
inline AffineMap1Q affine_form_probe(const KrausChannel& ch) {
  detail::require_single_normal(ch);
  AffineMap1Q m;
  m.t = detail::vector_part(apply_channel(ch, CorrelatedElement::identity(1)));
  for (int mu = 1; mu <= 3; ++mu) m.s[mu - 1] = detail::vector_part(apply_channel(ch, CorrelatedElement::pauli(1, 1, mu)));
  return m;
}

// lambda_mu = 1 + 2 sum((s_mu ^ a)^2 + (s_mu ^ b)^2) for a channel diagonal in the Pauli basis.
inline Vec3 diagonal_eigenvalues(const KrausChannel& ch, double tol = 1e-10) {
  auto m = affine_form_probe(ch);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(m.s[i][j]) > tol) throw DomainError("channel is not diagonal in the Pauli basis");
  Vec3 lam{1, 1, 1};
  for (auto& q : ch.ops) {
    auto p = quaternion_decompose(q);
    for (int mu = 0; mu < 3; ++mu) {
      // (s_mu ^ v)^2 = -(|v|^2 - v_mu^2)
      double wa = dot(p.a, p.a) - p.a[mu] * p.a[mu];
      double wb = dot(p.b, p.b) - p.b[mu] * p.b[mu];
      lam[mu] -= 2 * (wa + wb);
    }
  }
  return lam;
}

// Signed singular values of the s-matrix: the diagonal form reached by
// proper rotations before and after the map.
inline Vec3 signed_singular_values(const std::array<Vec3, 3>& s) {
  ComplexMatrix sts(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = 0;
      for (int k = 0; k < 3; ++k) v += s[k][i] * s[k][j];
      sts(i, j) = v;
    }
  auto eig = hermitian_eigen(sts);
  Vec3 sv{};
  for (int k = 0; k < 3; ++k) sv[k] = std::sqrt(std::max(0.0, eig.values[2 - k]));
  double det = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
               s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
  if (det < 0) sv[2] = -sv[2];
  return sv;
}

inline Vec3 unital_eigenvalue_triple(const KrausChannel& ch) { return signed_singular_values(affine_form_probe(ch).s); }

struct TetrahedronResult {
  bool inside;
  std::array<double, 4> weights;  // on p0, px, py, pz
  double margin;                  // smallest weight
};

inline constexpr double kTetraTol = 1e-12;

// Barycentric coordinates over p0 = (1,1,1), px = (1,-1,-1), py = (-1,1,-1), pz = (-1,-1,1).
inline TetrahedronResult tetrahedron_check(const Vec3& l, double tol = kTetraTol) {
  TetrahedronResult r;
  r.weights = {(1 + l[0] + l[1] + l[2]) / 4, (1 + l[0] - l[1] - l[2]) / 4, (1 - l[0] + l[1] - l[2]) / 4,
               (1 - l[0] - l[1] + l[2]) / 4};
  r.margin = *std::min_element(r.weights.begin(), r.weights.end());
  r.inside = r.margin >= -tol;
  return r;
}

// sigma_y^q factors change sign.
inline CorrelatedElement partial_transpose(const CorrelatedElement& rho, int q) {
  if (rho.qubits() != 2) throw DomainError("partial transpose is implemented for two qubits");
  rho.check_qubit(q);
  CorrelatedElement r = rho;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.digit(i, q) == Y) r[i] = -r[i];
  return r;
}

// (1-p) rho + p E+ rho E+ + p E- rho E-
inline KrausChannel phase_damping(double p) {
  if (!(p >= 0 && p <= 1)) throw DomainError("damping probability must lie in [0, 1]");
  return KrausChannel(1, {std::sqrt(1 - p) * CorrelatedElement::identity(1),
                          std::sqrt(p) * CorrelatedElement::e_plus(1, 1),
                          std::sqrt(p) * CorrelatedElement::e_minus(1, 1)});
}

// Relaxation towards |0>: normal but not unital for p > 0.
inline KrausChannel amplitude_damping(double p) {
  if (!(p >= 0 && p <= 1)) throw DomainError("damping probability must lie in [0, 1]");
  auto k0 = CorrelatedElement::e_plus(1, 1) + std::sqrt(1 - p) * CorrelatedElement::e_minus(1, 1);
  // sqrt(p) |0><1| = sqrt(p) (sx + i sy)/2
  auto k1 = (0.5 * std::sqrt(p)) * (CorrelatedElement::pauli(1, 1, X) + CorrelatedElement::pauli(1, 1, Y, cplx{0, 1}));
  return KrausChannel(1, {k0, k1});
}

inline KrausChannel unitary_channel(const CorrelatedElement& u) {
  require_unitary(u);
  return KrausChannel(u.qubits(), {u});
}

struct ChoiResult {
  bool cp;
  double min_eigenvalue;
};

inline constexpr double kChoiTol = 1e-10;

inline ChoiResult cp_check_choi(const KrausChannel& ch) {
  if (ch.n_qubits != 1) throw DomainError("Choi check is single-qubit only");
  std::vector<ComplexMatrix> mats;
  for (auto& q : ch.ops) mats.push_back(represent(q));
  double m = hermitian_eigen(choi_matrix(mats)).values.front();
  return {m >= -kChoiTol, m};
}

// Choi test for the diagonal unital map sigma_mu |-> lambda_mu sigma_mu.
inline ChoiResult cp_check_choi_diagonal(const Vec3& lam) {
  auto omega = [&](const ComplexMatrix& x) {
    auto e = unrepresent(x);
    for (int mu = 1; mu <= 3; ++mu) e[static_cast<std::size_t>(mu)] *= lam[mu - 1];
    return represent(e);
  };
  double m = hermitian_eigen(choi_from_map(omega)).values.front();
  return {m >= -kChoiTol, m};
}

// Choi test for any single-qubit affine map.
inline ChoiResult cp_check_choi_affine(const AffineMap1Q& am) {
  auto omega = [&](const ComplexMatrix& x) {
    auto e = unrepresent(x);
    CorrelatedElement y(1);
    y[0] = e[0];
    for (int i = 0; i < 3; ++i) y[static_cast<std::size_t>(i + 1)] += e[0] * am.t[i];
    for (int mu = 1; mu <= 3; ++mu)
      for (int i = 0; i < 3; ++i) y[static_cast<std::size_t>(i + 1)] += e[static_cast<std::size_t>(mu)] * am.s[mu - 1][i];
    return represent(y);
  };
  double m = hermitian_eigen(choi_from_map(omega)).values.front();
  return {m >= -kChoiTol, m};
}

// Kraus file: one operator per block, blocks separated by blank lines.
//   qubits 1
//   term 1 : 0.836 0
//   term sx^1 sz^2 : 0 0.5
inline KrausChannel parse_kraus(std::istream& in, int n_qubits = 0) {
  struct Entry {
    std::vector<std::pair<int, int>> factors;  // (qubit, axis)
    cplx c;
    int line;
  };
  std::vector<std::vector<Entry>> blocks(1);
  int declared = 0, widest = 1, line = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    if (tok[0] == "qubits") {
      if (tok.size() != 2) throw ParseError(line, "expected `qubits N`");
      declared = detail::parse_qubit(tok[1], line);
      continue;
    }
    if (tok[0] != "term") throw ParseError(line, "expected `term ... : re im`");
    auto colon = std::find(tok.begin(), tok.end(), ":");
    if (colon == tok.end()) throw ParseError(line, "missing ':'");
    if (tok.end() - colon != 3) throw ParseError(line, "expected two numbers after ':'");
    Entry e{{}, {detail::parse_number(*(colon + 1), line), detail::parse_number(*(colon + 2), line)}, line};
    for (auto it = tok.begin() + 1; it != colon; ++it) {
      std::string f = *it;
      if (f == "1") continue;
      // Accept sx^1 and the UTF-8 sigma spelling.
      const std::string sigma = "\xcf\x83";
      if (f.rfind(sigma, 0) == 0) f = "s" + f.substr(sigma.size());
      auto caret = f.find('^');
      if (f.size() < 4 || f[0] != 's' || caret != 2) throw ParseError(line, "bad factor '" + *it + "'");
      int axis;
      try {
        axis = axis_from_char(f[1]);
      } catch (const DomainError&) {
        throw ParseError(line, "bad axis in '" + *it + "'");
      }
      if (axis == 0) throw ParseError(line, "bad axis in '" + *it + "'");
      int q = detail::parse_qubit(f.substr(3), line);
      for (auto& [pq, pa] : e.factors)
        if (pq == q) throw ParseError(line, "qubit repeated in one term");
      widest = std::max(widest, q);
      e.factors.push_back({q, axis});
    }
    blocks.back().push_back(std::move(e));
  }
  if (blocks.back().empty()) blocks.pop_back();
  if (blocks.empty()) throw ParseError(line, "no Kraus operators found");
  int n = n_qubits ? n_qubits : (declared ? declared : widest);
  if (widest > n) throw DomainError("term qubit exceeds the channel width");
  std::vector<CorrelatedElement> ops;
  for (auto& b : blocks) {
    CorrelatedElement q(n);
    for (auto& e : b) {
      std::size_t idx = 0;
      for (auto& [fq, fa] : e.factors) idx |= static_cast<std::size_t>(fa) << (2 * (n - fq));
      q[idx] += e.c;
    }
    ops.push_back(std::move(q));
  }
  return KrausChannel(n, std::move(ops));
}

inline KrausChannel parse_kraus(const std::string& text, int n_qubits = 0) {
  std::istringstream in(text);
  return parse_kraus(in, n_qubits);
}

// Inverse of parse_kraus.
inline std::string format_kraus(const KrausChannel& ch) {
  std::ostringstream os;
  os.precision(17);
  os << "qubits " << ch.n_qubits << "\n";
  for (std::size_t k = 0; k < ch.ops.size(); ++k) {
    if (k) os << "\n";
    const auto& q = ch.ops[k];
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == cplx{}) continue;
      os << "term";
      if (i == 0) os << " 1";
      for (int p = 1; p <= ch.n_qubits; ++p)
        if (int d = q.digit(i, p)) os << " s" << "0xyz"[d] << "^" << p;
      os << " : " << q[i].real() << " " << q[i].imag() << "\n";
    }
  }
  return os.str();
}

}  // namespace gaqi
