#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

namespace gaqi {
namespace {

using testing::Rng;
constexpr double kPi = std::numbers::pi;

// 2x2 SU(2) matrix of a rotor through the oracle.
ComplexMatrix su2_oracle(const Rotor& r) {
  auto ck = cayley_klein_of_rotor(r);
  auto m = su2_matrix(ck);
  return ComplexMatrix(2, {m[0][0], m[0][1], m[1][0], m[1][1]});
}

Multivector random_unit_vector(Rng& g) {
  auto v = g3::vec(testing::gauss(g), testing::gauss(g), testing::gauss(g));
  return (1 / g3::norm(v)) * v;
}

TEST(Reflect, Examples) {
  EXPECT_TRUE(reflect(g3::sz(), g3::sz()).approx_equal(-g3::sz()));
  EXPECT_TRUE(reflect(g3::sz(), g3::sx()).approx_equal(g3::sx()));
  EXPECT_THROW(reflect(g3::vec(0, 0, 0), g3::sx()), DomainError);
}

TEST(Reflect, TwoReflectionsRotateByTwiceTheAngle) {
  double a = 0.4;
  auto n1 = g3::sx(), n2 = g3::vec(std::cos(a), std::sin(a), 0);
  auto x = g3::vec(0.3, -0.7, 0.2);
  auto twice = reflect(n2, reflect(n1, x));
  auto rot = rotate(rotor_from_axis_angle(g3::sz(), 2 * a), x);
  EXPECT_LT(twice.max_abs_diff(rot), 1e-14);
}

TEST(RotorFromAxisAngle, Examples) {
  EXPECT_TRUE(rotor_from_axis_angle(g3::sz(), 0).value().approx_equal(g3::scalar(1)));
  EXPECT_LT(rotor_from_axis_angle(g3::sz(), kPi).value().max_abs_diff(-(g3::iota() * g3::sz())), 1e-15);
  Rng g(31);
  for (int k = 0; k < 20; ++k) {
    auto r = random_unit_vector(g);
    double th = testing::uniform(g, -3, 3);
    auto a = rotor_from_axis_angle(r, th).value();
    EXPECT_LT(a.max_abs_diff(rotor_from_axis_angle(-r, -th).value()), 1e-14);
    EXPECT_LT(a.max_abs_diff(-rotor_from_axis_angle(r, th + 2 * kPi).value()), 1e-14);
    // Euler-Rodrigues pair
    EXPECT_NEAR(a.scalar(), std::cos(th / 2), 1e-15);
  }
  EXPECT_THROW(rotor_from_axis_angle(g3::vec(1, 1, 0), 1), DomainError);
}

TEST(AxisAngle, RoundTrip) {
  Rng g(32);
  for (int k = 0; k < 50; ++k) {
    auto r = testing::random_rotor(g);
    auto aa = axis_angle_of_rotor(r);
    EXPECT_LT(rotor_from_axis_angle(aa.axis, aa.theta).value().max_abs_diff(r.value()), 1e-13);
  }
  auto id = axis_angle_of_rotor(Rotor(g3::scalar(1)));
  EXPECT_TRUE(id.axis.approx_equal(g3::sz()));
  EXPECT_EQ(id.theta, 0);
}

TEST(Rotate, QuarterTurnAboutZMatchesOracle) {
  auto r = rotor_from_axis_angle(g3::sz(), kPi / 2);
  auto out = rotate(r, g3::sx());
  // Oracle: conjugate the Pauli matrix X by the SU(2) matrix of exp(-i pi Z/4).
  auto u = su2_oracle(r);
  auto img = u * pauli_matrix(1) * u.adjoint();
  auto c = unrepresent(img);
  EXPECT_NEAR(c[2].real(), 1, 1e-15);
  EXPECT_TRUE(out.approx_equal(g3::sy(), 1e-15));
}

TEST(Rotate, Properties) {
  Rng g(33);
  for (int k = 0; k < 50; ++k) {
    auto axis = random_unit_vector(g);
    auto r = rotor_from_axis_angle(axis, testing::uniform(g, -4, 4));
    EXPECT_LT(rotate(r, axis).max_abs_diff(axis), 1e-14);
    auto x = g3::vec(testing::uniform(g), testing::uniform(g), testing::uniform(g));
    EXPECT_NEAR(g3::norm(rotate(r, x)), g3::norm(x), 1e-14);
    auto r1 = testing::random_rotor(g), r2 = testing::random_rotor(g);
    EXPECT_LT(rotate(r1 * r2, x).max_abs_diff(rotate(r1, rotate(r2, x))), 1e-14);
    EXPECT_LT(rotate(Rotor(-r1.value()), x).max_abs_diff(rotate(r1, x)), 1e-15);
    // Oracle: u X u^+ for each basis vector.
    auto u = su2_oracle(r1);
    for (int mu = 1; mu <= 3; ++mu) {
      auto img = unrepresent(u * pauli_matrix(mu) * u.adjoint());
      auto got = g3::components(rotate(r1, g3::sigma(mu)));
      for (int i = 0; i < 3; ++i) EXPECT_NEAR(img[static_cast<std::size_t>(i + 1)].real(), got[i], 1e-14);
    }
  }
}

TEST(CayleyKlein, Examples) {
  auto one = cayley_klein_of_rotor(Rotor(g3::scalar(1)));
  EXPECT_EQ(one.psi1, cplx(1));
  EXPECT_EQ(one.psi2, cplx(0));
  auto r = Rotor(-(g3::iota() * g3::sy()));
  auto ck = cayley_klein_of_rotor(r);
  EXPECT_EQ(ck.psi1, cplx(0));
  EXPECT_EQ(ck.psi2, cplx(1));
}

TEST(CayleyKlein, RoundTripAndUnitNorm) {
  Rng g(34);
  for (int k = 0; k < 100; ++k) {
    auto r = testing::random_rotor(g);
    auto ck = cayley_klein_of_rotor(r);
    EXPECT_NEAR(std::norm(ck.psi1) + std::norm(ck.psi2), 1, 1e-14);
    EXPECT_LT(rotor_of_cayley_klein(ck).value().max_abs_diff(r.value()), 1e-12);
    // First column of the SU(2) matrix is the ket.
    auto m = su2_oracle(r);
    EXPECT_LT(std::abs(m(0, 0) - ck.psi1) + std::abs(m(1, 0) - ck.psi2), 1e-15);
  }
  EXPECT_THROW(rotor_of_cayley_klein({2.0, 0.0}), DomainError);
}

TEST(DensityFromRotor, Examples) {
  EXPECT_TRUE(density_from_rotor(Rotor(g3::scalar(1))).polarization().approx_equal(g3::sz()));
  auto down = Rotor(-(g3::iota() * g3::sy()));
  auto p = density_from_rotor(down).polarization();
  // Oracle: conjugate diag(1, 0) by the rotor matrix.
  auto u = su2_oracle(down);
  auto img = unrepresent(u * ComplexMatrix::diagonal({1, 0}) * u.adjoint());
  EXPECT_NEAR(img[3].real() * 2, -1, 1e-15);
  EXPECT_TRUE(p.approx_equal(-g3::sz()));
  auto mix = QubitDensity::mixture({0.5, 0.5}, {Rotor(g3::scalar(1)), down});
  EXPECT_LT(g3::norm(mix.polarization()), 1e-15);
  EXPECT_FALSE(mix.is_pure());
}

TEST(DensityFromRotor, IdempotentAndPure) {
  Rng g(35);
  for (int k = 0; k < 30; ++k) {
    auto rho = density_from_rotor(testing::random_rotor(g));
    EXPECT_TRUE(rho.is_pure());
    EXPECT_LT((rho.value() * rho.value()).max_abs_diff(rho.value()), 1e-14);
  }
  EXPECT_THROW(QubitDensity(g3::vec(1, 1, 0)), DomainError);
}

TEST(Expectation1q, Examples) {
  auto up = density_from_rotor(Rotor(g3::scalar(1)));
  EXPECT_DOUBLE_EQ(expectation_1q(3, up), 1);
  EXPECT_DOUBLE_EQ(expectation_1q(1, up), 0);
  Rng g(36);
  for (int k = 0; k < 20; ++k) {
    auto rho = QubitDensity::mixture({0.3, 0.7}, {testing::random_rotor(g), testing::random_rotor(g)});
    auto c = g3::components(rho.polarization());
    ComplexMatrix m = 0.5 * (ComplexMatrix::identity(2) + (cplx(c[0]) * pauli_matrix(1)) +
                             (cplx(c[1]) * pauli_matrix(2)) + (cplx(c[2]) * pauli_matrix(3)));
    for (int mu = 1; mu <= 3; ++mu)
      EXPECT_NEAR(expectation_1q(mu, rho), (pauli_matrix(mu) * m).trace().real(), 1e-12);
  }
}

TEST(Stereographic, Examples) {
  EXPECT_EQ(stereographic_ratio(g3::sz()), cplx(0));
  EXPECT_LT(std::abs(stereographic_ratio(g3::sx()) - cplx(1)), 1e-15);
  EXPECT_LT(std::abs(stereographic_ratio(g3::sy()) - cplx(0, 1)), 1e-15);
  EXPECT_THROW(stereographic_ratio(-g3::sz()), DomainError);
  // Oracle: eigenvectors of X and Y with eigenvalue +1 give psi2/psi1 = 1, i.
  for (int mu : {1, 2}) {
    auto e = hermitian_eigen(pauli_matrix(mu));
    auto v = e.vectors.column(1);
    EXPECT_LT(std::abs(v[1] / v[0] - stereographic_ratio(g3::sigma(mu))), 1e-14);
  }
}

TEST(Stereographic, MobiusCompatibility) {
  Rng g(37);
  for (int k = 0; k < 100; ++k) {
    auto r = testing::random_rotor(g);
    auto p = density_from_rotor(testing::random_rotor(g)).polarization();
    if (g3::components(p)[2] < -0.99) continue;
    auto rp = rotate(r, p);
    if (g3::components(rp)[2] < -0.99) continue;
    auto m = su2_matrix(cayley_klein_of_rotor(r));
    cplx z = stereographic_ratio(p);
    cplx moved = (m[1][0] + m[1][1] * z) / (m[0][0] + m[0][1] * z);
    EXPECT_LT(std::abs(moved - stereographic_ratio(rp)), 1e-10);
  }
}

TEST(Stereographic, RotorRouteMatchesVectorRoute) {
  Rng g(38);
  for (int k = 0; k < 50; ++k) {
    auto r = testing::random_rotor(g);
    auto p = density_from_rotor(r).polarization();
    if (g3::components(p)[2] < -0.99) continue;
    EXPECT_LT(std::abs(stereographic_ratio_of_rotor(r) - stereographic_ratio(p)), 1e-12);
  }
}

TEST(Cross, DualOfOuterProduct) {
  Rng g(39);
  for (int k = 0; k < 50; ++k) {
    auto a = testing::random_vector(g, pauli_signature()), b = testing::random_vector(g, pauli_signature());
    EXPECT_LT(g3::cross(a, b).max_abs_diff(-(g3::iota() * outer_product(a, b))), 1e-15);
  }
}

}  // namespace
}  // namespace gaqi
