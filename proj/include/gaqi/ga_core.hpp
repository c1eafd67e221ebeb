#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gaqi/errors.hpp"

namespace gaqi {

using Mask = std::uint64_t;

inline constexpr double kPruneTol = 1e-14;
inline constexpr double kCompareTol = 1e-10;

class Signature {
 public:
  Signature(int p, int q, std::vector<std::string> labels = {},
            std::optional<int> time_index = std::nullopt)
      : p_(p), q_(q), labels_(std::move(labels)), time_(time_index) {
    if (p < 0 || q < 0 || p + q > 64) throw DomainError("signature needs p, q >= 0 and p + q <= 64");
    if (labels_.empty()) {
      for (int i = 0; i < p + q; ++i) labels_.push_back("e" + std::to_string(i + 1));
    }
    if (static_cast<int>(labels_.size()) != p + q) throw DomainError("one label per generator required");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j]) throw DomainError("duplicate generator label '" + labels_[i] + "'");
    if (time_ && (*time_ < 0 || *time_ >= p)) throw DomainError("time generator must square to +1");
    neg_ = 0;
    for (int i = p; i < p + q; ++i) neg_ |= Mask{1} << i;
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return p_ + q_; }
  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> time_index() const { return time_; }
  int square(int i) const { return i < p_ ? 1 : -1; }
  Mask negative_mask() const { return neg_; }

  int index_of(std::string_view name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == name) return static_cast<int>(i);
    throw DomainError("unknown generator '" + std::string(name) + "'");
  }

  bool operator==(const Signature& o) const {
    return p_ == o.p_ && q_ == o.q_ && labels_ == o.labels_ && time_ == o.time_;
  }

 private:
  int p_, q_;
  std::vector<std::string> labels_;
  std::optional<int> time_;
  Mask neg_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

// G3: x, y, z all square to +1.
inline const SignaturePtr& pauli_signature() {
  static const SignaturePtr s = std::make_shared<const Signature>(3, 0, std::vector<std::string>{"x", "y", "z"});
  return s;
}

// G(1,3): t squares to +1, x, y, z to -1.
inline const SignaturePtr& dirac_signature() {
  static const SignaturePtr s =
      std::make_shared<const Signature>(1, 3, std::vector<std::string>{"t", "x", "y", "z"}, 0);
  return s;
}

// G(n,3n): generators t1..tn first, then x1 y1 z1 x2 y2 z2 ...
inline SignaturePtr multiparticle_dirac_signature(int n) {
  static std::mutex mu;
  static std::map<int, SignaturePtr> cache;
  if (n < 1 || 4 * n > 64) throw DomainError("particle count out of range");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::string> labels;
  for (int k = 1; k <= n; ++k) labels.push_back("t" + std::to_string(k));
  for (int k = 1; k <= n; ++k)
    for (const char* a : {"x", "y", "z"}) labels.push_back(a + std::to_string(k));
  auto sig = std::make_shared<const Signature>(n, 3 * n, std::move(labels), 0);
  cache.emplace(n, sig);
  return sig;
}


inline int grade_of(Mask m) { return std::popcount(m); }

// Sign of e_a e_b relative to the canonical blade e_{a^b}: transposition
// parity of the merge, times the metric sign of every annihilated generator.
inline int blade_sign(Mask a, Mask b, Mask negative) {
  int swaps = std::popcount(a & b & negative);
  for (Mask s = a >> 1; s; s >>= 1) swaps += std::popcount(s & b);
  return (swaps & 1) ? -1 : 1;
}

class Multivector {
 public:
  using Term = std::pair<Mask, double>;

  explicit Multivector(SignaturePtr sig) : sig_(std::move(sig)) {}
  Multivector(SignaturePtr sig, double scalar) : sig_(std::move(sig)) {
    if (std::abs(scalar) >= kPruneTol) terms_.push_back({0, scalar});
  }

  static Multivector blade(SignaturePtr sig, Mask m, double c = 1.0) {
    check_mask(*sig, m);
    Multivector r(std::move(sig));
    if (std::abs(c) >= kPruneTol) r.terms_.push_back({m, c});
    return r;
  }
  static Multivector generator(SignaturePtr sig, int i) {
    if (i < 0 || i >= sig->dim()) throw DomainError("generator index out of range");
    return blade(std::move(sig), Mask{1} << i);
  }
  static Multivector generator(SignaturePtr sig, std::string_view name) {
    int i = sig->index_of(name);
    return generator(std::move(sig), i);
  }
  // Product of named generators in the given order, e.g. {"x","t"}.
  static Multivector product_of(const SignaturePtr& sig, std::initializer_list<std::string_view> names) {
    Multivector r(sig, 1.0);
    for (auto n : names) r = r * generator(sig, n);
    return r;
  }
  static Multivector vector(SignaturePtr sig, const std::vector<double>& c) {
    if (static_cast<int>(c.size()) != sig->dim()) throw DomainError("vector component count mismatch");
    std::vector<Term> t;
    for (std::size_t i = 0; i < c.size(); ++i) t.push_back({Mask{1} << i, c[i]});
    return from_terms(std::move(sig), std::move(t));
  }
  // Accepts unsorted terms with possible repeats.
  static Multivector from_terms(SignaturePtr sig, std::vector<Term> t) {
    for (auto& [m, c] : t) check_mask(*sig, m);
    std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    Multivector r(std::move(sig));
    for (auto& [m, c] : t) {
      if (!r.terms_.empty() && r.terms_.back().first == m)
        r.terms_.back().second += c;
      else
        r.terms_.push_back({m, c});
    }
    r.prune();
    return r;
  }

  const Signature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double coeff(Mask m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Mask k) { return t.first < k; });
    return (it != terms_.end() && it->first == m) ? it->second : 0.0;
  }
  double scalar() const { return coeff(0); }

  std::vector<double> vector_components() const {
    std::vector<double> v(static_cast<std::size_t>(sig_->dim()), 0.0);
    for (auto& [m, c] : terms_)
      if (grade_of(m) == 1) v[static_cast<std::size_t>(std::countr_zero(m))] = c;
    return v;
  }

  bool is_grade(int k) const {
    return std::all_of(terms_.begin(), terms_.end(), [k](const Term& t) { return grade_of(t.first) == k; });
  }
  bool is_even() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return grade_of(t.first) % 2 == 0; });
  }

  // Euclidean norm of the coefficient vector.
  double coeff_norm() const {
    double s = 0;
    for (auto& t : terms_) s += t.second * t.second;
    return std::sqrt(s);
  }
  double coeff_l1() const {
    double s = 0;
    for (auto& t : terms_) s += std::abs(t.second);
    return s;
  }

  double max_abs_diff(const Multivector& o) const {
    same_sig(o);
    double worst = 0;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
        worst = std::max(worst, std::abs(terms_[i++].second));
      } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
        worst = std::max(worst, std::abs(o.terms_[j++].second));
      } else {
        worst = std::max(worst, std::abs(terms_[i++].second - o.terms_[j++].second));
      }
    }
    return worst;
  }
  bool approx_equal(const Multivector& o, double tol = kCompareTol) const { return max_abs_diff(o) <= tol; }

  Multivector operator-() const {
    Multivector r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  friend Multivector operator+(const Multivector& a, const Multivector& b) { return a.combine(b, 1.0); }
  friend Multivector operator-(const Multivector& a, const Multivector& b) { return a.combine(b, -1.0); }
  friend Multivector operator*(double s, const Multivector& a) {
    Multivector r(a.sig_);
    for (auto& [m, c] : a.terms_)
      if (std::abs(s * c) >= kPruneTol) r.terms_.push_back({m, s * c});
    return r;
  }
  friend Multivector operator*(const Multivector& a, double s) { return s * a; }
  friend Multivector operator+(const Multivector& a, double s) { return a + Multivector(a.sig_, s); }
  friend Multivector operator+(double s, const Multivector& a) { return a + s; }
  friend Multivector operator-(const Multivector& a, double s) { return a + (-s); }
  friend Multivector operator-(double s, const Multivector& a) { return Multivector(a.sig_, s) - a; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  // Apply f(mask) -> factor to every term.
  template <class F>
  Multivector map_terms(F f) const {
    Multivector r(sig_);
    for (auto& [m, c] : terms_) {
      double v = c * f(m);
      if (std::abs(v) >= kPruneTol) r.terms_.push_back({m, v});
    }
    return r;
  }

  void same_sig(const Multivector& o) const {
    if (sig_ != o.sig_ && !(*sig_ == *o.sig_)) throw SignatureMismatch();
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (auto& [m, c] : terms_) {
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      os << std::abs(c);
      for (int i = 0; i < sig_->dim(); ++i)
        if (m >> i & 1) os << (i == std::countr_zero(m) ? "*" : "") << sig_->label(i);
    }
    return os.str();
  }

  // Internal: build from dense or hashed accumulators.
  static Multivector from_sorted_unchecked(SignaturePtr sig, std::vector<Term> t) {
    Multivector r(std::move(sig));
    r.terms_ = std::move(t);
    r.prune();
    return r;
  }

 private:
  static void check_mask(const Signature& s, Mask m) {
    if (s.dim() < 64 && (m >> s.dim()) != 0) throw DomainError("blade outside signature");
  }
  void prune() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return std::abs(t.second) < kPruneTol; }),
                 terms_.end());
  }
  Multivector combine(const Multivector& b, double sb) const {
    same_sig(b);
    Multivector r(sig_);
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < terms_.size() && terms_[i].first < b.terms_[j].first)) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || b.terms_[j].first < terms_[i].first) {
        r.terms_.push_back({b.terms_[j].first, sb * b.terms_[j].second});
        ++j;
      } else {
        r.terms_.push_back({terms_[i].first, terms_[i].second + sb * b.terms_[j].second});
        ++i;
        ++j;
      }
    }
    r.prune();
    return r;
  }

  SignaturePtr sig_;
  std::vector<Term> terms_;
};

namespace detail {

// Sum of c_a c_b * kernel(ma, mb) into blade ma^mb, where kernel returns 0
// to skip a pair.
template <class Kernel>
Multivector bilinear(const Multivector& a, const Multivector& b, Kernel kernel) {
  a.same_sig(b);
  const auto& sig = a.signature_ptr();
  const int dim = sig->dim();
  std::vector<Multivector::Term> out;
  if (dim <= 14) {
    std::vector<double> acc(std::size_t{1} << dim, 0.0);
    std::vector<char> seen(acc.size(), 0);
    std::vector<Mask> touched;
    for (auto& [ma, ca] : a.terms())
      for (auto& [mb, cb] : b.terms()) {
        int s = kernel(ma, mb);
        if (!s) continue;
        Mask m = ma ^ mb;
        acc[m] += s * ca * cb;
        if (!seen[m]) {
          seen[m] = 1;
          touched.push_back(m);
        }
      }
    std::sort(touched.begin(), touched.end());
    for (Mask m : touched) out.push_back({m, acc[m]});
  } else {
    std::unordered_map<Mask, double> acc;
    for (auto& [ma, ca] : a.terms())
      for (auto& [mb, cb] : b.terms()) {
        int s = kernel(ma, mb);
        if (s) acc[ma ^ mb] += s * ca * cb;
      }
    out.assign(acc.begin(), acc.end());
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
  }
  return Multivector::from_sorted_unchecked(sig, std::move(out));
}

}  // namespace detail

inline Multivector geometric_product(const Multivector& a, const Multivector& b) {
  const Mask neg = a.signature().negative_mask();
  return detail::bilinear(a, b, [neg](Mask x, Mask y) { return blade_sign(x, y, neg); });
}

inline Multivector operator*(const Multivector& a, const Multivector& b) { return geometric_product(a, b); }

inline Multivector outer_product(const Multivector& a, const Multivector& b) {
  return detail::bilinear(a, b, [](Mask x, Mask y) { return (x & y) ? 0 : blade_sign(x, y, 0); });
}

// Hestenes inner product: grade |r-s| part of A_r B_s, zero when either is a scalar.
inline Multivector inner_product(const Multivector& a, const Multivector& b) {
  const Mask neg = a.signature().negative_mask();
  return detail::bilinear(a, b, [neg](Mask x, Mask y) {
    if (x == 0 || y == 0) return 0;
    int r = grade_of(x), s = grade_of(y);
    if (grade_of(x ^ y) != std::abs(r - s)) return 0;
    return blade_sign(x, y, neg);
  });
}

inline Multivector grade_project(const Multivector& a, int k) {
  if (k < 0 || k > a.signature().dim()) throw DomainError("grade out of range");
  return a.map_terms([k](Mask m) { return grade_of(m) == k ? 1.0 : 0.0; });
}

inline Multivector even_part(const Multivector& a) {
  return a.map_terms([](Mask m) { return grade_of(m) % 2 == 0 ? 1.0 : 0.0; });
}

inline double inner_product_vectors(const Multivector& a, const Multivector& b) {
  if (!a.is_grade(1) || !b.is_grade(1)) throw DomainError("inner_product_vectors needs grade-1 arguments");
  a.same_sig(b);
  double s = 0;
  for (auto& [m, c] : a.terms()) s += c * b.coeff(m) * a.signature().square(std::countr_zero(m));
  return s;
}

inline Multivector reverse(const Multivector& a) {
  return a.map_terms([](Mask m) {
    int k = grade_of(m);
    return ((k * (k - 1) / 2) % 2) ? -1.0 : 1.0;
  });
}

inline Multivector grade_involution(const Multivector& a) {
  return a.map_terms([](Mask m) { return grade_of(m) % 2 ? -1.0 : 1.0; });
}

// gamma_t * reverse(a) * gamma_t for the designated time generator.
inline Multivector spatial_reverse(const Multivector& a) {
  auto t = a.signature().time_index();
  if (!t) throw DomainError("signature has no designated time generator");
  Multivector g = Multivector::generator(a.signature_ptr(), *t);
  return g * reverse(a) * g;
}

// Inverse of an invertible vector, a / a^2.
inline Multivector vector_inverse(const Multivector& a) {
  double n = inner_product_vectors(a, a);
  if (std::abs(n) < 1e-300) throw DomainError("vector has no inverse");
  return (1.0 / n) * a;
}

inline constexpr int kExpSeriesCap = 64;

namespace detail {

inline Multivector exp_series(const Multivector& x) {
  Multivector sum(x.signature_ptr(), 1.0);
  Multivector term(x.signature_ptr(), 1.0);
  for (int k = 1; k <= kExpSeriesCap; ++k) {
    term = (1.0 / k) * (term * x);
    sum = sum + term;
    if (term.coeff_l1() <= 1e-17 * std::max(1.0, sum.coeff_l1())) return sum;
  }
  throw ConvergenceError("exponential series did not converge within the term cap");
}

}  // namespace detail

// e^B. Closed form when B^2 is a scalar, scale-and-square series otherwise.
inline Multivector exp_bivector(const Multivector& b) {
  const auto& sig = b.signature_ptr();
  if (b.is_zero()) return Multivector(sig, 1.0);
  Multivector b2 = b * b;
  double s = b2.scalar();
  Multivector rest = b2 - s;
  if (rest.coeff_l1() <= 1e-13 * std::max(1.0, std::abs(s))) {
    if (s < 0) {
      double th = std::sqrt(-s);
      return std::cos(th) + (std::sin(th) / th) * b;
    }
    if (s > 0) {
      double nu = std::sqrt(s);
      return std::cosh(nu) + (std::sinh(nu) / nu) * b;
    }
    return 1.0 + b;
  }
  double n = b.coeff_l1();
  int k = 0;
  while (n >= 0.5) {
    n *= 0.5;
    ++k;
  }
  Multivector r = detail::exp_series(std::ldexp(1.0, -k) * b);
  for (int i = 0; i < k; ++i) r = r * r;
  return r;
}

// 1 - B*tau for a unit bivector blade B (B^2 = -1).
inline Multivector outer_exponential(const Multivector& b, double tau) {
  if (!b.is_grade(2)) throw DomainError("outer exponential needs a bivector");
  Multivector b2 = b * b;
  if ((b2 + 1.0).coeff_l1() > 1e-10) throw DomainError("outer exponential needs a unit bivector (B^2 = -1)");
  return 1.0 - tau * b;
}

}  // namespace gaqi
