#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

namespace gaqi {
namespace {

using testing::Rng;

Multivector g3v(int i) { return Multivector::generator(pauli_signature(), i); }
Multivector sta(const char* n) { return Multivector::generator(dirac_signature(), n); }

TEST(Signature, RejectsInvalid) {
  EXPECT_THROW(Signature(-1, 0), DomainError);
  EXPECT_THROW(Signature(40, 25), DomainError);
  EXPECT_THROW(Signature(2, 0, {"a", "a"}), DomainError);
  EXPECT_THROW(Signature(2, 0, {"a"}), DomainError);
  EXPECT_THROW(Signature(1, 3, {"t", "x", "y", "z"}, 2), DomainError);
  EXPECT_NO_THROW(Signature(64, 0));
}

TEST(Signature, MultiparticleLayout) {
  auto s = multiparticle_dirac_signature(2);
  EXPECT_EQ(s->p(), 2);
  EXPECT_EQ(s->q(), 6);
  EXPECT_EQ(s->label(0), "t1");
  EXPECT_EQ(s->label(5), "x2");
  EXPECT_EQ(s, multiparticle_dirac_signature(2));
}

TEST(BladeSign, KnownCases) {
  // e2 e1 = -e1 e2
  EXPECT_EQ(blade_sign(0b10, 0b01, 0), -1);
  EXPECT_EQ(blade_sign(0b01, 0b10, 0), 1);
  // e1 e1 with e1^2 = -1
  EXPECT_EQ(blade_sign(0b1, 0b1, 0b1), -1);
  // (e1 e2)(e1 e2) = -1 in Euclidean signature
  EXPECT_EQ(blade_sign(0b11, 0b11, 0), -1);
}

TEST(GeometricProduct, PauliExamples) {
  auto x = g3v(0), y = g3v(1), z = g3v(2);
  EXPECT_TRUE((x * x).approx_equal(Multivector(pauli_signature(), 1.0)));
  auto iota = x * y * z;
  EXPECT_TRUE((x * y).approx_equal(iota * z));
  EXPECT_TRUE((iota * iota).approx_equal(Multivector(pauli_signature(), -1.0)));
}

TEST(GeometricProduct, DiracBivectors) {
  auto t = sta("t"), x = sta("x"), y = sta("y");
  EXPECT_TRUE(((x * t) * (y * t)).approx_equal(-(x * y)));
  EXPECT_DOUBLE_EQ((t * t).scalar(), 1.0);
  EXPECT_DOUBLE_EQ((x * x).scalar(), -1.0);
}

TEST(GeometricProduct, SignatureMismatchThrows) {
  EXPECT_THROW(g3v(0) * sta("t"), SignatureMismatch);
  EXPECT_THROW(g3v(0) + sta("t"), SignatureMismatch);
}

TEST(GeometricProduct, LargeSignatureUsesSparsePath) {
  auto sig = std::make_shared<const Signature>(10, 10);
  auto a = Multivector::generator(sig, 17), b = Multivector::generator(sig, 3);
  EXPECT_TRUE((a * a).approx_equal(Multivector(sig, -1.0)));
  EXPECT_TRUE((a * b).approx_equal(-(b * a)));
}

TEST(OuterProduct, Examples) {
  auto x = g3v(0), y = g3v(1), z = g3v(2);
  EXPECT_TRUE(outer_product(x, x).is_zero());
  EXPECT_TRUE(outer_product(x, y).approx_equal(Multivector::blade(pauli_signature(), 0b011)));
  EXPECT_TRUE(outer_product(outer_product(x, y), z).approx_equal(x * y * z));
}

TEST(OuterProduct, VectorsAreAntisymmetricPart) {
  Rng g(11);
  for (int k = 0; k < 50; ++k) {
    auto a = testing::random_vector(g, dirac_signature()), b = testing::random_vector(g, dirac_signature());
    EXPECT_LT(outer_product(a, b).max_abs_diff(0.5 * (a * b - b * a)), 1e-14);
  }
}

TEST(OuterProduct, Associative) {
  Rng g(12);
  for (int k = 0; k < 50; ++k) {
    auto a = testing::random_multivector(g, dirac_signature());
    auto b = testing::random_multivector(g, dirac_signature());
    auto c = testing::random_multivector(g, dirac_signature());
    EXPECT_LT(outer_product(outer_product(a, b), c).max_abs_diff(outer_product(a, outer_product(b, c))), 1e-12);
  }
}

TEST(InnerProductVectors, Examples) {
  EXPECT_EQ(inner_product_vectors(g3v(0), g3v(1)), 0.0);
  EXPECT_EQ(inner_product_vectors(g3v(2), g3v(2)), 1.0);
  EXPECT_EQ(inner_product_vectors(sta("x"), sta("x")), -1.0);
  EXPECT_THROW(inner_product_vectors(g3v(0) * g3v(1), g3v(0)), DomainError);
}

TEST(GradeProject, Examples) {
  auto one = Multivector(pauli_signature(), 1.0);
  auto z = g3v(2);
  EXPECT_DOUBLE_EQ(grade_project(one + z, 0).scalar(), 1.0);
  auto p = 0.3 * g3v(0) + 0.4 * z;
  EXPECT_TRUE(grade_project(0.5 * (one + p), 1).approx_equal(0.5 * p));
  EXPECT_TRUE(grade_project(g3v(0) * g3v(1), 1).is_zero());
  EXPECT_THROW(grade_project(z, 4), DomainError);
}

TEST(Reverse, Examples) {
  auto x = g3v(0), y = g3v(1);
  EXPECT_TRUE(reverse(x * y).approx_equal(y * x));
  EXPECT_TRUE(reverse(x * y).approx_equal(-(x * y)));
  Rng g(3);
  auto f = testing::random_grade(g, dirac_signature(), 2);
  EXPECT_TRUE(reverse(f).approx_equal(-f));
}

TEST(GradeInvolution, Examples) {
  auto one = Multivector(pauli_signature(), 1.0);
  auto z = g3v(2);
  auto ep = 0.5 * (one + z), em = 0.5 * (one - z);
  EXPECT_TRUE(grade_involution(ep).approx_equal(em));
  auto xy = g3v(0) * g3v(1);
  EXPECT_TRUE(grade_involution(xy).approx_equal(xy));
  auto iota = xy * z;
  EXPECT_TRUE(grade_involution(iota).approx_equal(-iota));
}

TEST(SpatialReverse, Examples) {
  auto t = sta("t");
  // E + iota B with E = sigma_x, B = sigma_y.
  auto e = sta("x") * t;
  auto iota = t * sta("x") * sta("y") * sta("z");
  auto b = sta("y") * t;
  auto f = e + iota * b;
  EXPECT_TRUE(spatial_reverse(f).approx_equal(e - iota * b));
  EXPECT_TRUE(spatial_reverse(Multivector(dirac_signature(), 1.0)).approx_equal(Multivector(dirac_signature(), 1.0)));
  Rng g(5);
  for (int k = 0; k < 20; ++k) {
    // Relative vectors are fixed; on the spatial-bivector (Pauli-even) part
    // spatial reverse and reverse agree.
    auto r = testing::random_vector(g, dirac_signature()) * t;
    EXPECT_TRUE(spatial_reverse(grade_project(r, 2)).approx_equal(grade_project(r, 2)));
    auto q = testing::uniform(g) + testing::uniform(g) * sta("x") * sta("y") + testing::uniform(g) * sta("y") * sta("z") +
             testing::uniform(g) * sta("x") * sta("z");
    EXPECT_TRUE(spatial_reverse(q).approx_equal(reverse(q)));
  }
  EXPECT_THROW(spatial_reverse(g3v(0)), DomainError);
}

TEST(ExpBivector, ClosedForms) {
  auto iz = g3v(0) * g3v(1);  // iota sigma_z
  auto r = exp_bivector((-std::numbers::pi / 4) * iz);
  auto expect = std::cos(std::numbers::pi / 4) - std::sin(std::numbers::pi / 4) * iz;
  EXPECT_LT(r.max_abs_diff(expect), 1e-15);
  // sigma_z = gamma_z gamma_t squares to +1 in G(1,3).
  auto sz = sta("z") * sta("t");
  double lam = 0.8;
  auto l = exp_bivector((-lam / 2) * sz);
  EXPECT_LT(l.max_abs_diff(std::cosh(lam / 2) - std::sinh(lam / 2) * sz), 1e-15);
  auto zero = Multivector(pauli_signature());
  EXPECT_TRUE(exp_bivector(zero).approx_equal(Multivector(pauli_signature(), 1.0)));
}

Multivector series40(const Multivector& b) {
  Multivector sum(b.signature_ptr(), 1.0), term(b.signature_ptr(), 1.0);
  for (int k = 1; k <= 40; ++k) {
    term = (1.0 / k) * (term * b);
    sum = sum + term;
  }
  return sum;
}

TEST(ExpBivector, MatchesTruncatedSeriesOnGeneralBivectors) {
  Rng g(7);
  for (int k = 0; k < 200; ++k) {
    auto b = testing::random_grade(g, dirac_signature(), 2);
    b = (testing::uniform(g, 0, 2) / b.coeff_norm()) * b;
    auto e = exp_bivector(b);
    EXPECT_LT(e.max_abs_diff(series40(b)), 1e-12);
    EXPECT_LT((e * exp_bivector(-b) - 1.0).coeff_l1(), 1e-12);
  }
}

TEST(ExpBivector, SeriesFallbackForNonCommutingInput) {
  auto sig = multiparticle_dirac_signature(2);
  Rng g(9);
  auto b = testing::random_grade(g, sig, 2);
  b = (1.5 / b.coeff_norm()) * b;
  EXPECT_LT(exp_bivector(b).max_abs_diff(series40(b)), 1e-12);
}

TEST(OuterExponential, Examples) {
  auto b = g3v(1) * g3v(2);  // iota sigma_x
  EXPECT_TRUE(outer_exponential(b, 0).approx_equal(Multivector(pauli_signature(), 1.0)));
  double tau = 0.7;
  auto o = outer_exponential(b, tau);
  EXPECT_NEAR((o * reverse(o)).scalar(), 1 + tau * tau, 1e-15);
  double theta = 1.1;
  auto n = outer_exponential(b, std::tan(theta / 2));
  n = (1 / std::sqrt((n * reverse(n)).scalar())) * n;
  EXPECT_LT(n.max_abs_diff(exp_bivector((-theta / 2) * b)), 1e-15);
  EXPECT_THROW(outer_exponential(2.0 * b, 1), DomainError);
  EXPECT_THROW(outer_exponential(g3v(0), 1), DomainError);
}

TEST(Multivector, Formatting) {
  auto a = 2.0 * g3v(0) * g3v(1) - 1.5;
  EXPECT_EQ(a.to_string(), "-1.5 + 2*xy");
}

}  // namespace
}  // namespace gaqi
