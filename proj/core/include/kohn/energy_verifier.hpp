#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kohn/exponent_set.hpp"
#include "kohn/support_optimizer.hpp"

namespace kohn {

// Bi-radial test function u(z, w) = g(|z|, |w|) with closed-form
// |du/dzbar| and |du/dwbar|.
struct TestFunction {
  enum class Kind { GaussianRadial, BumpRadial, PolynomialTimesGaussian };

  Kind kind = Kind::GaussianRadial;
  double rate_z = 1.0;  // exp(-rate_z |z|^2 - rate_w |w|^2)
  double rate_w = 1.0;
  // exp(-q(|z|, cz) - q(|w|, cw)), q(r, c) = (r^2 - c^2)^2 / (width^2 (4c^2 + width^2)):
  // smooth in |z|^2 and close to a Gaussian of the given width around |z| = c.
  double center_z = 0.0;
  double center_w = 0.0;
  double width = 1.0;
  int power_z = 0;  // |z|^{2p} |w|^{2q} exp(-rate_z |z|^2 - rate_w |w|^2)
  int power_w = 0;

  static TestFunction gaussian(double rate_z, double rate_w);
  static TestFunction bump(double center_z, double center_w, double width);
  static TestFunction polynomial_gaussian(int power_z, int power_w, double rate_z,
                                          double rate_w);

  // Logarithms of |u|, |du/dzbar|, |du/dwbar| at (|z|, |w|) = (r, s);
  // -infinity where the quantity vanishes.
  double log_value(double r, double s) const;
  double log_dz(double r, double s) const;
  double log_dw(double r, double s) const;

  std::string describe() const;
};

struct QuadratureSpec {
  int order = 16;   // Gauss-Legendre points per panel, per variable
  int panels = 24;  // panels across [0, R]
  double radius = 0.0;  // truncation of both |z| and |w|; 0 picks it per function
  double tail_tol = 1e-12;  // max relative size of the integrand on the truncation edge
  std::optional<RegionLabel> region;  // empty: all of C^2
  unsigned threads = 1;
};

struct EnergyReport {
  // All integrals are multiplied by exp(-log_scale).
  double f_value = 0.0;      // F_Omega(u)
  double mu_mass = 0.0;      // int_Omega mu^2 |u|^2 e^{-2 phi}
  double plain_mass = 0.0;   // int_Omega |u|^2 e^{-2 phi}
  double dz_term = 0.0;
  double dw_term = 0.0;
  double lambda_term = 0.0;  // 2 int_Omega lambda |u|^2 e^{-2 phi}
  std::optional<double> ratio;  // f_value / mu_mass
  std::optional<RegionLabel> region;
  double log_scale = 0.0;
  double radius = 0.0;
  double tail_estimate = 0.0;  // edge integrand relative to its maximum
};

// Tensor Gauss-Legendre integration of the weighted energy of bi-radial
// functions, with node tables (phi, lambda, mu) cached per truncation and region.
class EnergyIntegrator {
 public:
  EnergyIntegrator(ExponentSet gamma, CoercivityMultiplier mu);
  ~EnergyIntegrator();
  EnergyIntegrator(EnergyIntegrator&&) noexcept;
  EnergyIntegrator& operator=(EnergyIntegrator&&) noexcept;

  const ExponentSet& gamma() const;
  const CoercivityMultiplier& multiplier() const;

  // Error(TailBoundViolated) when the truncation edge is too heavy;
  // Error(ZeroMass) when the region carries no weighted mass of u.
  EnergyReport integrate(const TestFunction& u, const QuadratureSpec& spec) const;

  // Like integrate() but reports a massless region with ratio absent.
  EnergyReport integrate_unchecked(const TestFunction& u, const QuadratureSpec& spec) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

EnergyReport weighted_energy(const ExponentSet& gamma, const TestFunction& u,
                             const QuadratureSpec& spec);
EnergyReport weighted_energy(const ExponentSet& gamma, const CoercivityMultiplier& mu,
                             const TestFunction& u, const QuadratureSpec& spec);

struct Certificate {
  double value = 0.0;  // min over the family of F / mu-mass
  std::size_t argmin = 0;
  std::vector<double> ratios;
};

// Empirical lower bound for c^2; spec.region is ignored (whole space).
Certificate coercivity_certificate(const ExponentSet& gamma,
                                   const std::vector<TestFunction>& family,
                                   const QuadratureSpec& spec);
Certificate coercivity_certificate(const ExponentSet& gamma, const CoercivityMultiplier& mu,
                                   const std::vector<TestFunction>& family,
                                   const QuadratureSpec& spec);

struct RegionDecomposition {
  std::map<RegionLabel, EnergyReport> regions;  // E, U0, Ur, Uu
  EnergyReport whole;
};

// Uses the multiplier from coercivity_multiplier when available and
// (0, 0) otherwise.
RegionDecomposition region_decomposition_check(const ExponentSet& gamma,
                                               const TestFunction& u,
                                               const QuadratureSpec& spec);

// Bumps centered on a grid over [0,3]^2. count 20: 5 x 4 centers at width
// 0.75; count 60 adds the same centers at widths 0.4 and 1.5.
std::vector<TestFunction> standard_family(int count);

}  // namespace kohn
