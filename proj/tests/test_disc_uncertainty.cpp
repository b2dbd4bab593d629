#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kohn/disc_uncertainty.hpp"
#include "kohn/error.hpp"

using namespace kohn;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int K = 16;

DiscFunction mono(int a, int b, std::complex<double> c = {}, double r = 1.0) {
  return DiscFunction::monomial(a, b, K, K, c, r);
}

double max_coeff_diff(const DiscFunction& f, const DiscFunction& g) {
  double worst = 0.0;
  for (int k = -f.max_angular(); k <= f.max_angular(); ++k) {
    for (int j = 0; j <= f.max_radial(); ++j) worst = std::max(worst, std::abs(f.coeff(k, j) - g.coeff(k, j)));
  }
  return worst;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST(Disc, MonomialNormsMatchMoments) {
  for (int m = 0; m <= 10; ++m) {
    EXPECT_NEAR(l2_norm_sq(mono(m, 0)), kPi / (m + 1), 1e-13);
    EXPECT_NEAR(l2_norm_sq(mono(m, 1)), kPi / (m + 2), 1e-13);
  }
  // Scaled disc: int_{D(c,R)} 1 = pi R^2.
  EXPECT_NEAR(l2_norm_sq(mono(0, 0, {2.0, -1.0}, 3.0)), 9 * kPi, 1e-12);
}

TEST(Disc, PointEvaluation) {
  const auto f = mono(2, 1);
  const std::complex<double> z(0.3, -0.4);
  EXPECT_NEAR(std::abs(f(z) - z * z * std::conj(z)), 0.0, 1e-14);
}

TEST(Bergman, Examples) {
  EXPECT_LE(l2_norm_sq(bergman_project(mono(0, 1))), 1e-26);
  const auto p = bergman_project(mono(1, 1));
  EXPECT_NEAR(p.coeff(0, 0).real(), 0.5, 1e-10);
  EXPECT_NEAR(std::abs(p(std::complex<double>(0.2, 0.7)) - 0.5), 0.0, 1e-10);
  EXPECT_LE(max_coeff_diff(bergman_project(mono(3, 0)), mono(3, 0)), 1e-12);
}

TEST(Bergman, ProjectionProperties) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto f = random_disc_function(seed, 6, K, K);
    const auto g = random_disc_function(seed + 100, 6, K, K);
    const auto bf = bergman_project(f, K);
    const auto bg = bergman_project(g, K);
    const double scale = l2_norm_sq(f);
    EXPECT_LE(max_coeff_diff(bergman_project(bf, K), bf), 1e-10);
    EXPECT_LE(std::abs(inner_product(bf, g) - inner_product(f, bg)), 1e-10 * std::sqrt(scale * l2_norm_sq(g)));
    auto rest = f;
    rest -= bf;
    EXPECT_NEAR(l2_norm_sq(bf) + l2_norm_sq(rest), scale, 1e-10 * scale);
  }
}

TEST(Bergman, TruncationTooSmall) {
  EXPECT_EQ(code_of([] { bergman_project(mono(5, 0), 3); }), ErrorCode::TruncationTooSmall);
  EXPECT_EQ(code_of([] { DiscFunction::monomial(40, 0, K, K); }), ErrorCode::TruncationTooSmall);
}

TEST(Dbar, Examples) {
  EXPECT_NEAR(dbar_energy(mono(4, 0)), 0.0, 1e-14);
  EXPECT_NEAR(dbar_energy(mono(0, 1)), kPi, 1e-12);
  EXPECT_NEAR(dbar_energy(mono(1, 1)), kPi / 2, 1e-12);
}

TEST(Poincare, Examples) {
  auto d = poincare_defect(mono(3, 0));
  EXPECT_NEAR(d.lhs, 0.0, 1e-13);
  EXPECT_NEAR(d.rhs, 0.0, 1e-13);
  d = poincare_defect(mono(0, 1));
  EXPECT_NEAR(d.lhs, kPi / 2, 1e-12);
  EXPECT_NEAR(d.rhs, kPi, 1e-12);
  d = poincare_defect(mono(1, 1));
  EXPECT_NEAR(d.lhs, kPi / 12, 1e-12);
  EXPECT_NEAR(d.rhs, kPi / 2, 1e-12);
}

TEST(Poincare, HoldsOnRandomFunctions) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto d = poincare_defect(random_disc_function(seed, 6, K, K));
    EXPECT_LE(d.lhs, d.rhs * (1 + 1e-12));
  }
}

TEST(Cauchy, ClosedForm) {
  EXPECT_NEAR(cauchy_annulus_ratio(mono(0, 0)), 4.0 / 3.0, 1e-10);
  EXPECT_NEAR(cauchy_annulus_ratio(mono(1, 0)), 16.0 / 15.0, 1e-10);
  double prev = 10.0;
  for (int k = 0; k <= 50; ++k) {
    const double r = cauchy_annulus_ratio(DiscFunction::monomial(k, 0, 50, 2));
    EXPECT_NEAR(r, 1.0 / (1.0 - std::pow(4.0, -(k + 1))), 1e-8) << k;
    EXPECT_LE(r, prev + 1e-15);
    prev = r;
  }
  EXPECT_EQ(code_of([] { cauchy_annulus_ratio(mono(0, 1)); }), ErrorCode::NotHolomorphic);
}

TEST(Uncertainty, Examples) {
  for (double c : {0.25, 1.0}) {
    EXPECT_NEAR(uncertainty_ratio(mono(0, 0), RadialPotential::annulus_indicator(c)), 0.75, 1e-12);
  }
  EXPECT_EQ(code_of([] { uncertainty_ratio(mono(0, 1), RadialPotential()); }),
            ErrorCode::ZeroDenominator);
  EXPECT_EQ(code_of([] {
              uncertainty_ratio(mono(3, 0), RadialPotential::inner_disc_indicator(1.0));
            }),
            ErrorCode::ZeroDenominator);
  EXPECT_EQ(code_of([] {
              uncertainty_ratio(DiscFunction(K, K), RadialPotential::annulus_indicator(1.0));
            }),
            ErrorCode::ZeroDenominator);
}

TEST(Uncertainty, InvariantUnderRescaling) {
  const auto pot = RadialPotential::annulus_indicator(2.0);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = random_disc_function(seed, 5, K, K);
    const double base = uncertainty_ratio(f, pot);
    for (double s : {0.1, 3.0}) {
      const auto g = f.moved_to({1.0, 2.0}, s);
      EXPECT_NEAR(uncertainty_ratio(g, pot.dilated(s)), base, 1e-9 * base);
    }
  }
}

TEST(Uncertainty, LowerBoundOnFamily) {
  double worst = 1e300;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto f = random_disc_function(seed, 6, K, K);
    for (double c : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      worst = std::min(worst, uncertainty_ratio(f, RadialPotential::annulus_indicator(c)));
    }
  }
  EXPECT_GE(worst, 0.05);
}

TEST(FalseInequality, ClosedFormAndDecay) {
  for (int m = 0; m <= 10; ++m) {
    EXPECT_NEAR(false_inequality_ratio(m), std::pow(4.0, -m) / kPi, 1e-8);
    if (m > 0) {
      EXPECT_NEAR(std::log(false_inequality_ratio(m - 1) / false_inequality_ratio(m)) / std::log(4.0),
                  1.0, 1e-8);
    }
  }
}

TEST(Disc, TruncationStable) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f16 = random_disc_function(seed, 6, 16, 16);
    const auto f32 = f16.embedded(32, 32);
    const auto pot = RadialPotential::annulus_indicator(0.5);
    EXPECT_NEAR(uncertainty_ratio(f16, pot), uncertainty_ratio(f32, pot),
                1e-6 * uncertainty_ratio(f16, pot));
    const auto p16 = poincare_defect(f16);
    const auto p32 = poincare_defect(f32);
    EXPECT_NEAR(p16.lhs, p32.lhs, 1e-6 * std::max(p16.lhs, 1e-300));
  }
}

TEST(Potential, Basics) {
  const auto v = RadialPotential::annulus_indicator(2.0);
  EXPECT_DOUBLE_EQ(v.annulus_inf(1.0), 2.0);
  EXPECT_NEAR(v.integral(1.0), 2.0 * 0.75 * kPi, 1e-12);
  EXPECT_NEAR(potential_mass(mono(0, 0), v), 2.0 * 0.75 * kPi, 1e-12);
  EXPECT_THROW(RadialPotential({{0.5, 0.2, 1.0}}), Error);
}
