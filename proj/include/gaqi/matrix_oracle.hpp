#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include "gaqi/correlated.hpp"
#include "gaqi/errors.hpp"

namespace gaqi {

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, cplx{}) {}
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != dim * dim) throw DomainError("matrix entry count mismatch");
  }
  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
  static ComplexMatrix diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  // |u><v|
  static ComplexMatrix dyad(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    if (u.size() != v.size()) throw DomainError("dyad size mismatch");
    ComplexMatrix m(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
  }

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
  const std::vector<cplx>& entries() const { return a_; }

  std::vector<cplx> column(std::size_t j) const {
    std::vector<cplx> c(dim_);
    for (std::size_t i = 0; i < dim_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }
  cplx trace() const {
    cplx t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }
  double max_abs() const {
    double m = 0;
    for (auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }
  double max_abs_diff(const ComplexMatrix& o) const { return (*this - o).max_abs(); }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a.same(b);
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a.same(b);
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    for (auto& v : a.a_) v *= s;
    return a;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.same(b);
    const std::size_t n = a.dim_;
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        cplx v = a(i, k);
        if (v == cplx{}) continue;
        for (std::size_t j = 0; j < n; ++j) r(i, j) += v * b(k, j);
      }
    return r;
  }
  friend std::vector<cplx> operator*(const ComplexMatrix& a, const std::vector<cplx>& x) {
    if (x.size() != a.dim_) throw DomainError("matrix-vector size mismatch");
    std::vector<cplx> y(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i)
      for (std::size_t j = 0; j < a.dim_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

 private:
  void same(const ComplexMatrix& o) const {
    if (dim_ != o.dim_) throw DomainError("matrix dimension mismatch");
  }
  std::size_t dim_ = 0;
  std::vector<cplx> a_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim(), m = b.dim();
  ComplexMatrix r(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) r(i * m + k, j * m + l) = a(i, j) * b(k, l);
  return r;
}

// The four 2x2 Pauli matrices, identity first.
inline const ComplexMatrix& pauli_matrix(int mu) {
  static const std::array<ComplexMatrix, 4> m = {
      ComplexMatrix(2, {1, 0, 0, 1}),
      ComplexMatrix(2, {0, 1, 1, 0}),
      ComplexMatrix(2, {0, cplx{0, -1}, cplx{0, 1}, 0}),
      ComplexMatrix(2, {1, 0, 0, -1}),
  };
  if (mu < 0 || mu > 3) throw DomainError("Pauli axis out of range");
  return m[static_cast<std::size_t>(mu)];
}

inline int log2_dim(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) throw DomainError("matrix dimension is not a power of two");
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

// Kronecker product of Pauli matrices; qubit 1 is the leftmost factor.
inline ComplexMatrix pauli_string_matrix(int n, std::size_t idx) {
  ComplexMatrix r = ComplexMatrix::identity(1);
  for (int q = 1; q <= n; ++q) r = kron(r, pauli_matrix(static_cast<int>((idx >> (2 * (n - q))) & 3)));
  return r;
}

// Matrix of a correlated element. Each Pauli string is a monomial matrix
// built entry by entry from the 2x2 Pauli matrices.
inline ComplexMatrix represent(const CorrelatedElement& a) {
  const int n = a.qubits();
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix m(dim);
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    cplx c = a[idx];
    if (c == cplx{}) continue;
    for (std::size_t row = 0; row < dim; ++row) {
      std::size_t col = 0;
      cplx v = c;
      for (int q = 1; q <= n; ++q) {
        int mu = static_cast<int>((idx >> (2 * (n - q))) & 3);
        std::size_t br = (row >> (n - q)) & 1;
        std::size_t bc = (mu == 1 || mu == 2) ? br ^ 1 : br;
        v *= pauli_matrix(mu)(br, bc);
        col |= bc << (n - q);
      }
      m(row, col) += v;
    }
  }
  return m;
}

// Inverse of represent: coefficient of P is tr(P M) / 2^n.
inline CorrelatedElement unrepresent(const ComplexMatrix& m) {
  const int n = log2_dim(m.dim());
  const std::size_t dim = m.dim();
  CorrelatedElement r(n);
  for (std::size_t idx = 0; idx < r.size(); ++idx) {
    cplx t{};
    // tr(P M) = sum_row P(row, col(row)) M(col(row), row)
    for (std::size_t row = 0; row < dim; ++row) {
      std::size_t col = 0;
      cplx v = 1.0;
      for (int q = 1; q <= n; ++q) {
        int mu = static_cast<int>((idx >> (2 * (n - q))) & 3);
        std::size_t br = (row >> (n - q)) & 1;
        std::size_t bc = (mu == 1 || mu == 2) ? br ^ 1 : br;
        v *= pauli_matrix(mu)(br, bc);
        col |= bc << (n - q);
      }
      t += v * m(col, row);
    }
    r[idx] = t / static_cast<double>(dim);
  }
  return r;
}

struct EigenResult {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns
};

inline constexpr double kJacobiTol = 1e-13;

// Cyclic Jacobi for Hermitian matrices.
inline EigenResult hermitian_eigen(const ComplexMatrix& m, double herm_tol = 1e-10) {
  const std::size_t n = m.dim();
  if (m.max_abs_diff(m.adjoint()) > herm_tol * std::max(1.0, m.max_abs()))
    throw DomainError("matrix is not Hermitian");
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  auto off = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };
  const double scale = std::max(1.0, m.max_abs());
  int sweep = 0;
  while (off() > kJacobiTol * scale) {
    if (++sweep > 100) throw ConvergenceError("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        cplx b = a(p, q);
        double ab = std::abs(b);
        if (ab < 1e-300) continue;
        double x = a(p, p).real(), d = a(q, q).real();
        double th = 0.5 * std::atan2(2 * ab, x - d);
        double c = std::cos(th), s = std::sin(th);
        cplx ph = std::conj(b) / ab;  // e^{-i arg b}
        cplx gpp = c, gpq = -s, gqp = s * ph, gqq = c * ph;
        for (std::size_t k = 0; k < n; ++k) {
          cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0;
        a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenResult r{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    r.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
  }
  return r;
}

// Trace over qubit q (1-based) of an n-qubit matrix.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int q) {
  const int n = log2_dim(m.dim());
  if (n < 2 || q < 1 || q > n) throw DomainError("partial trace needs N >= 2 and a valid qubit");
  const std::size_t out = m.dim() / 2;
  const int shift = n - q;
  auto expand = [shift](std::size_t i, std::size_t bit) {
    std::size_t hi = i >> shift, lo = i & ((std::size_t{1} << shift) - 1);
    return (hi << (shift + 1)) | (bit << shift) | lo;
  };
  ComplexMatrix r(out);
  for (std::size_t i = 0; i < out; ++i)
    for (std::size_t j = 0; j < out; ++j)
      for (std::size_t b = 0; b < 2; ++b) r(i, j) += m(expand(i, b), expand(j, b));
  return r;
}

// Choi matrix sum_ij Omega(|i><j|) (x) |i><j| of a single-qubit linear map.
inline ComplexMatrix choi_from_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& omega) {
  ComplexMatrix c(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      ComplexMatrix e(2);
      e(i, j) = 1.0;
      ComplexMatrix img = omega(e);
      if (img.dim() != 2) throw DomainError("single-qubit map expected");
      c = c + kron(img, e);
    }
  return c;
}

inline ComplexMatrix choi_matrix(const std::vector<ComplexMatrix>& kraus) {
  return choi_from_map([&](const ComplexMatrix& x) {
    ComplexMatrix y(2);
    for (auto& k : kraus) y = y + k * x * k.adjoint();
    return y;
  });
}

}  // namespace gaqi
