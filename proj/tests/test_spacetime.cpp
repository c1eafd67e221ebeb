#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

namespace gaqi {
namespace {

using testing::Rng;

Multivector random_g3(Rng& g) { return testing::random_multivector(g, pauli_signature()); }

TEST(PauliEmbed, Examples) {
  EXPECT_TRUE(pauli_embed(g3::sx()).approx_equal(sta::gamma(1) * sta::gt()));
  EXPECT_TRUE(pauli_embed(g3::sx() * g3::sy()).approx_equal(-(sta::gamma(1) * sta::gamma(2))));
  auto i4 = sta::gt() * sta::gamma(1) * sta::gamma(2) * sta::gamma(3);
  EXPECT_TRUE(pauli_embed(g3::iota()).approx_equal(i4));
  EXPECT_THROW(pauli_embed(sta::gt()), SignatureMismatch);
  EXPECT_THROW(pauli_extract(sta::gt()), DomainError);
}

TEST(PauliEmbed, IsomorphismAndRoundTrip) {
  Rng g(41);
  for (int k = 0; k < 200; ++k) {
    auto a = random_g3(g), b = random_g3(g);
    EXPECT_LT(pauli_embed(a * b).max_abs_diff(pauli_embed(a) * pauli_embed(b)), 1e-13);
    EXPECT_LT(pauli_extract(pauli_embed(a)).max_abs_diff(a), 1e-15);
    // Hermitian conjugate in G3 is reversion; in G(1,3) it is the spatial reverse.
    EXPECT_LT(pauli_embed(reverse(a)).max_abs_diff(spatial_reverse(pauli_embed(a))), 1e-15);
  }
}

TEST(SpacetimeSplit, Examples) {
  auto r = spacetime_split(sta::gt(), sta::gt());
  EXPECT_DOUBLE_EQ(r.t, 1);
  EXPECT_TRUE(r.s.is_zero());
  auto r2 = spacetime_split(sta::gt() + sta::gamma(1), sta::gt());
  EXPECT_DOUBLE_EQ(r2.t, 1);
  EXPECT_TRUE(r2.s.approx_equal(g3::sx()));
  EXPECT_THROW(spacetime_split(sta::gt(), 2.0 * sta::gt()), DomainError);
  EXPECT_THROW(spacetime_split(sta::gt(), sta::gamma(1)), DomainError);
  EXPECT_THROW(spacetime_split(sta::gt(), -sta::gt()), DomainError);
}

TEST(SpacetimeSplit, IntervalIsInvariant) {
  Rng g(42);
  for (int k = 0; k < 100; ++k) {
    auto e = testing::random_vector(g, dirac_signature());
    double l = testing::uniform(g, -1.5, 1.5);
    auto u = std::cosh(l) * sta::gt() + std::sinh(l) * sta::gamma(3);
    for (auto frame : {sta::gt(), u}) {
      auto s = spacetime_split(e, frame);
      double n2 = (s.s * s.s).scalar();
      EXPECT_NEAR((e * e).scalar(), s.t * s.t - n2, 1e-12);
    }
  }
}

TEST(RelativeVelocity, Examples) {
  EXPECT_TRUE(relative_velocity(sta::gt(), sta::gt()).is_zero());
  Rng g(43);
  for (int k = 0; k < 20; ++k) {
    double l = testing::uniform(g, -3, 3);
    auto v = std::cosh(l) * sta::gt() + std::sinh(l) * sta::gamma(3);
    EXPECT_LT(relative_velocity(v, sta::gt()).max_abs_diff(std::tanh(l) * g3::sz()), 1e-14);
    auto w = testing::random_vector(g, dirac_signature());
    auto wc = w.vector_components();
    double sp = std::sqrt(wc[1] * wc[1] + wc[2] * wc[2] + wc[3] * wc[3]);
    auto timelike = (sp + 0.1 + std::abs(wc[0])) * sta::gt() + w - wc[0] * sta::gt();
    EXPECT_LT(g3::norm(relative_velocity(timelike, sta::gt())), 1);
  }
  EXPECT_THROW(relative_velocity(sta::gamma(1), sta::gt()), DomainError);
}

TEST(FaradaySplit, Examples) {
  auto pure_e = faraday_split(sta::gamma(1) * sta::gt(), sta::gt());
  EXPECT_TRUE(pure_e.e.approx_equal(g3::sx()));
  EXPECT_TRUE(pure_e.b.is_zero());
  // gamma_y gamma_x = -(gamma_x gamma_t)(gamma_y gamma_t)... expanded blade by blade:
  // embed(iota sigma_z) = gamma_x gamma_t gamma_y gamma_t = gamma_y gamma_x, so B = +sigma_z.
  auto f = sta::gamma(2) * sta::gamma(1);
  EXPECT_TRUE(pauli_embed(g3::iota() * g3::sz()).approx_equal(f));
  auto pure_b = faraday_split(f, sta::gt());
  EXPECT_TRUE(pure_b.e.is_zero());
  EXPECT_TRUE(pure_b.b.approx_equal(g3::sz()));
  EXPECT_THROW(faraday_split(sta::gt(), sta::gt()), DomainError);
}

TEST(FaradaySplit, ReconstructsField) {
  Rng g(44);
  for (int k = 0; k < 100; ++k) {
    auto f = testing::random_grade(g, dirac_signature(), 2);
    auto s = faraday_split(f, sta::gt());
    auto rebuilt = pauli_embed(s.e) + pauli_embed(g3::iota()) * pauli_embed(s.b);
    EXPECT_LT(rebuilt.max_abs_diff(f), 1e-14);
  }
}

TEST(LorentzForce, Examples) {
  Multivector zero(dirac_signature());
  EXPECT_TRUE(lorentz_force(1, 1, zero, sta::gt()).is_zero());
  // F.v for F = gx gt, v = gt: (gx gt).gt = gx.
  auto a = lorentz_force(2, 3, sta::gamma(1) * sta::gt(), sta::gt());
  EXPECT_TRUE(a.approx_equal(1.5 * sta::gamma(1)));
  EXPECT_THROW(lorentz_force(0, 1, zero, sta::gt()), DomainError);
  Rng g(45);
  for (int k = 0; k < 100; ++k) {
    auto f = testing::random_grade(g, dirac_signature(), 2);
    auto v = testing::random_vector(g, dirac_signature());
    EXPECT_NEAR(inner_product_vectors(lorentz_force(1.3, -0.4, f, v), v), 0, 1e-14);
  }
}

TEST(BoostPolarization, Examples) {
  for (double l : {-2.0, -0.3, 0.0, 1.1, 3.0}) {
    EXPECT_NEAR(boost_polarization(0, l), -std::tanh(l), 1e-15);
    EXPECT_EQ(boost_polarization(1, l), 1);
    EXPECT_EQ(boost_polarization(-1, l), -1);
  }
  EXPECT_THROW(boost_polarization(1.01, 0), DomainError);
  for (int i = 0; i <= 60; ++i) {
    double l = -3 + 0.1 * i;
    for (double h : {-2.0, -0.5, 0.0, 0.7, 2.0})
      EXPECT_NEAR(boost_polarization(std::tanh(-h), l), boost_polarization_thermal(h, l), 1e-12);
  }
}

TEST(BoostPolarization, OnlyFixedPointsArePlusMinusOne) {
  for (int i = 1; i < 40; ++i) {
    double a = -1 + i * 0.05;
    EXPECT_GT(std::abs(boost_polarization(a, 0.5) - a), 1e-3);
  }
}

TEST(Rapidity, Examples) {
  EXPECT_EQ(rapidity_of_velocity(0), 0);
  EXPECT_NEAR(std::tanh(rapidity_of_velocity(0.6)), 0.6, 1e-15);
  EXPECT_THROW(rapidity_of_velocity(1), DomainError);
}

TEST(BoostDensity, Examples) {
  auto rho = RelativisticDensity::from_polarization(0);
  EXPECT_TRUE(boost_density(rho, 0).value().approx_equal(rho.value()));
  double l = 0.7;
  auto b = boost_density(rho, l);
  EXPECT_LT(b.value().max_abs_diff(0.5 * (std::cosh(l) * sta::gt() - std::sinh(l) * sta::gamma(3))), 1e-15);
  EXPECT_THROW(RelativisticDensity(sta::gamma(1)), DomainError);
  EXPECT_THROW(RelativisticDensity(-sta::gt()), DomainError);
  EXPECT_THROW(RelativisticDensity::from_polarization(0.5, 4), DomainError);
}

TEST(BoostDensity, MatchesScalarFormula) {
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      double a = -1 + 0.1 * i, l = -3 + 0.3 * j;
      auto rho = boost_density(RelativisticDensity::from_polarization(a), l);
      EXPECT_LT(rho.polarization().max_abs_diff(boost_polarization(a, l) * g3::sz()), 1e-12);
    }
}

TEST(BoostDensity, GroupLawAndInvariantNorm) {
  Rng g(46);
  for (int k = 0; k < 50; ++k) {
    double a = testing::uniform(g), l1 = testing::uniform(g, -2, 2), l2 = testing::uniform(g, -2, 2);
    int axis = 1 + k % 3;
    auto rho = RelativisticDensity::from_polarization(a, axis);
    auto two = boost_density(boost_density(rho, l1, axis), l2, axis);
    auto one = boost_density(rho, l1 + l2, axis);
    EXPECT_LT(two.value().max_abs_diff(one.value()), 1e-12);
    EXPECT_NEAR(inner_product_vectors(one.value(), one.value()), inner_product_vectors(rho.value(), rho.value()),
                1e-12);
  }
}

}  // namespace
}  // namespace gaqi
