#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kohn/energy_verifier.hpp"
#include "kohn/error.hpp"

using namespace kohn;

namespace {

constexpr double kPi = std::numbers::pi;
const ExponentSet kLin{{1, 0}, {0, 1}};
const ExponentSet kMixed{{2, 0}, {0, 2}, {1, 1}};
const ExponentSet kFive{{16, 0}, {12, 3}, {8, 6}, {4, 9}, {0, 12}};

double unscaled(const EnergyReport& r, double v) { return v * std::exp(r.log_scale); }

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

TEST(TestFunction, GaussianDerivative) {
  const auto u = TestFunction::gaussian(1.0, 2.0);
  // u = exp(-r^2 - 2 s^2): |du/dzbar| = r u, |du/dwbar| = 2 s u.
  EXPECT_NEAR(u.log_value(0.5, 0.3), -0.25 - 0.18, 1e-15);
  EXPECT_NEAR(u.log_dz(0.5, 0.3), std::log(0.5) - 0.43, 1e-14);
  EXPECT_NEAR(u.log_dw(0.5, 0.3), std::log(0.6) - 0.43, 1e-14);
  EXPECT_TRUE(std::isinf(u.log_dz(0.0, 0.3)));
}

// Central difference of log u in r against |du/dzbar| = |d_r u| / 2.
TEST(TestFunction, DerivativesMatchFiniteDifferences) {
  for (const auto& u : {TestFunction::bump(1.5, 0.0, 0.75), TestFunction::bump(0.0, 2.0, 0.4),
                        TestFunction::polynomial_gaussian(2, 1, 1.0, 0.5)}) {
    for (double r : {0.3, 1.1, 2.0}) {
      for (double s : {0.4, 1.7}) {
        const double h = 1e-6;
        const double val = std::exp(u.log_value(r, s));
        const double dr = (std::exp(u.log_value(r + h, s)) - std::exp(u.log_value(r - h, s))) / (2 * h);
        const double ds = (std::exp(u.log_value(r, s + h)) - std::exp(u.log_value(r, s - h))) / (2 * h);
        EXPECT_NEAR(std::exp(u.log_dz(r, s)), std::abs(dr) / 2, 1e-6 * (val + std::abs(dr))) << u.describe();
        EXPECT_NEAR(std::exp(u.log_dw(r, s)), std::abs(ds) / 2, 1e-6 * (val + std::abs(ds))) << u.describe();
      }
    }
  }
}

TEST(Energy, GaussianClosedForm) {
  const auto rep = weighted_energy(kLin, CoercivityMultiplier{}, TestFunction::gaussian(1, 1), {});
  const double quarter = kPi / 4;
  EXPECT_NEAR(unscaled(rep, rep.f_value), 2 * (kPi / 16) * quarter + 2 * quarter * quarter, 1e-8);
  EXPECT_NEAR(unscaled(rep, rep.plain_mass), quarter * quarter, 1e-8);
  EXPECT_NEAR(unscaled(rep, rep.mu_mass), 9 * quarter * quarter, 1e-8);
  ASSERT_TRUE(rep.ratio.has_value());
  EXPECT_NEAR(*rep.ratio, (2 * (kPi / 16) * quarter + 2 * quarter * quarter) / (9 * quarter * quarter),
              1e-8);
  EXPECT_NEAR(unscaled(rep, rep.dz_term), (kPi / 16) * quarter, 1e-8);
  EXPECT_NEAR(unscaled(rep, rep.lambda_term), 2 * quarter * quarter, 1e-8);
}

TEST(Energy, PolynomialGaussianClosedForm) {
  // u = |z|^2 e^{-|z|^2-|w|^2} on phi = |z|^2+|w|^2: int |u|^2 e^{-2 phi} =
  // int |z|^4 e^{-4|z|^2} * int e^{-4|w|^2} = (pi * 2/64) (pi/4).
  const auto rep = weighted_energy(kLin, CoercivityMultiplier{},
                                   TestFunction::polynomial_gaussian(1, 0, 1, 1), {});
  EXPECT_NEAR(unscaled(rep, rep.plain_mass), (kPi / 32) * (kPi / 4), 1e-9);
}

TEST(Energy, MuMassSelfConvergence) {
  const auto u = TestFunction::gaussian(1, 1);
  QuadratureSpec lo, hi;
  hi.order = 32;
  const auto a = weighted_energy(kMixed, u, lo);
  const auto b = weighted_energy(kMixed, u, hi);
  ASSERT_EQ(a.log_scale, b.log_scale);
  EXPECT_NEAR(a.mu_mass, b.mu_mass, 1e-6 * b.mu_mass);
  EXPECT_NEAR(a.f_value, b.f_value, 1e-6 * b.f_value);
}

TEST(Energy, ConcentratedAtOriginLivesInU0) {
  QuadratureSpec spec;
  const auto u = TestFunction::gaussian(8, 8);
  const auto whole = weighted_energy(kFive, u, spec);
  spec.region = RegionLabel::U0;
  const auto u0 = weighted_energy(kFive, u, spec);
  EXPECT_GT(u0.f_value * std::exp(u0.log_scale - whole.log_scale) / whole.f_value, 0.99);
}

TEST(Energy, ZeroMassRegion) {
  // A narrow bump at the origin has no mass beyond |z| = 1, where Ur starts.
  QuadratureSpec spec;
  spec.region = RegionLabel::Ur;
  const auto u = TestFunction::bump(0.0, 0.0, 0.02);
  EXPECT_EQ(code_of([&] { weighted_energy(kMixed, u, spec); }), ErrorCode::ZeroMass);
  const auto rep = EnergyIntegrator(kMixed, coercivity_multiplier(kMixed)).integrate_unchecked(u, spec);
  EXPECT_FALSE(rep.ratio.has_value());
}

TEST(Energy, TailBoundViolated) {
  QuadratureSpec spec;
  spec.radius = 0.3;
  EXPECT_EQ(code_of([&] { weighted_energy(kLin, TestFunction::gaussian(1, 1), spec); }),
            ErrorCode::TailBoundViolated);
}

TEST(Energy, PositivityAndMonotonicity) {
  const auto fam = standard_family(20);
  for (std::size_t i = 0; i < fam.size(); i += 3) {
    const auto dec = region_decomposition_check(kMixed, fam[i], {});
    const auto& whole = dec.whole;
    EXPECT_GE(whole.f_value, whole.lambda_term);
    EXPECT_GE(whole.lambda_term, 0.0);
    double mu_sum = 0.0;
    for (const auto& [label, rep] : dec.regions) {
      const double k = std::exp(rep.log_scale - whole.log_scale);
      EXPECT_LE(rep.f_value * k, whole.f_value * (1 + 1e-9)) << region_name(label);
      EXPECT_LE(rep.mu_mass * k, whole.mu_mass * (1 + 1e-9)) << region_name(label);
      mu_sum += rep.mu_mass * k;
    }
    EXPECT_GE(mu_sum, whole.mu_mass * (1 - 1e-9)) << fam[i].describe();
  }
}

TEST(Energy, RegionCoverOnRandomFunctions) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> c(0.0, 3.0), h(0.3, 1.2);
  for (int i = 0; i < 10; ++i) {
    const auto u = TestFunction::bump(c(rng), c(rng), h(rng));
    const auto dec = region_decomposition_check(kFive, u, {});
    double mu_sum = 0.0;
    for (const auto& [label, rep] : dec.regions) mu_sum += rep.mu_mass * std::exp(rep.log_scale - dec.whole.log_scale);
    EXPECT_GE(mu_sum, dec.whole.mu_mass * (1 - 1e-9)) << u.describe();
  }
}

TEST(Energy, UrDominatesForBumpInUr) {
  const auto dec = region_decomposition_check(kMixed, TestFunction::bump(3.0, 0.05, 0.05), {});
  const auto& ur = dec.regions.at(RegionLabel::Ur);
  EXPECT_GT(ur.mu_mass * std::exp(ur.log_scale - dec.whole.log_scale) / dec.whole.mu_mass, 0.99);
}

TEST(Energy, IntegratorMatchesFreeFunction) {
  const EnergyIntegrator integ(kMixed, coercivity_multiplier(kMixed));
  const auto u = TestFunction::bump(1.0, 2.0, 0.75);
  const auto a = integ.integrate(u, {});
  const auto b = weighted_energy(kMixed, u, {});
  EXPECT_DOUBLE_EQ(a.f_value, b.f_value);
  EXPECT_DOUBLE_EQ(a.mu_mass, b.mu_mass);
}

TEST(Energy, ThreadCountDoesNotChangeResult) {
  QuadratureSpec one, four;
  four.threads = 4;
  const auto u = TestFunction::bump(1.5, 1.0, 0.75);
  const auto a = weighted_energy(kFive, u, one);
  const auto b = weighted_energy(kFive, u, four);
  EXPECT_EQ(a.f_value, b.f_value);
  EXPECT_EQ(a.mu_mass, b.mu_mass);
}

TEST(Energy, StandardFamilySizes) {
  EXPECT_EQ(standard_family(20).size(), 20u);
  EXPECT_EQ(standard_family(60).size(), 60u);
}
