#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace kohn {

// Truncated polar expansion on the disc D(center, radius):
//   f = sum_{|k|<=K, j<=J} c_{k,j} rho^{|k|+2j} e^{i k theta},
// with rho, theta the polar coordinates of (z - center) / radius. Each term
// is zeta^a conj(zeta)^b with a - b = k and min(a, b) = j.
class DiscFunction {
 public:
  DiscFunction(int max_angular, int max_radial,
               std::complex<double> center = {}, double radius = 1.0);

  // zeta^a conj(zeta)^b; throws Error(TruncationTooSmall) if it does not fit.
  static DiscFunction monomial(int a, int b, int max_angular, int max_radial,
                               std::complex<double> center = {}, double radius = 1.0);

  int max_angular() const { return max_angular_; }
  int max_radial() const { return max_radial_; }
  std::complex<double> center() const { return center_; }
  double radius() const { return radius_; }

  std::complex<double> coeff(int k, int j) const { return coeffs_[index(k, j)]; }
  void set_coeff(int k, int j, std::complex<double> c) { coeffs_[index(k, j)] = c; }
  void add_coeff(int k, int j, std::complex<double> c) { coeffs_[index(k, j)] += c; }

  std::complex<double> operator()(std::complex<double> z) const;

  DiscFunction& operator+=(const DiscFunction& other);
  DiscFunction& operator-=(const DiscFunction& other);
  DiscFunction& operator*=(std::complex<double> s);

  // Same normalized profile on another disc: g(z) = f(c + R (z - c') / R').
  DiscFunction moved_to(std::complex<double> center, double radius) const;
  // Copy into larger (or equal) truncation orders.
  DiscFunction embedded(int max_angular, int max_radial) const;

  // Largest positive angular index with a nonzero coefficient, or -1.
  int highest_positive_mode() const;
  // Largest |k| with a nonzero coefficient, or -1 for the zero function.
  int highest_mode() const;

  // Gauss-Legendre order used for radial integrals: 2J + 2K + 4.
  int quadrature_order() const { return 2 * max_radial_ + 2 * max_angular_ + 4; }

 private:
  std::size_t index(int k, int j) const;
  void require_same_disc(const DiscFunction& other) const;

  int max_angular_;
  int max_radial_;
  std::complex<double> center_;
  double radius_;
  std::vector<std::complex<double>> coeffs_;
};

// Int over the sub-annulus rho_in <= |z - c|/R <= rho_out of |f|^2.
double annulus_norm_sq(const DiscFunction& f, double rho_in, double rho_out);
double l2_norm_sq(const DiscFunction& f);
// <f, g> = int f conj(g); both on the same disc.
std::complex<double> inner_product(const DiscFunction& f, const DiscFunction& g);

// Orthogonal projection onto span{zeta^k : 0 <= k <= basis_order}, the
// holomorphic L^2 functions of the truncation class. basis_order < 0 uses
// max_angular(). Error(TruncationTooSmall) if f has positive modes beyond it.
DiscFunction bergman_project(const DiscFunction& f, int basis_order = -1);

// d f / d conj(z), exact in the representation (angular order grows by one).
DiscFunction dbar(const DiscFunction& f);
double dbar_energy(const DiscFunction& f);

struct PoincareDefect {
  double lhs = 0.0;  // int |f - B f|^2
  double rhs = 0.0;  // int |df/dzbar|^2
};

PoincareDefect poincare_defect(const DiscFunction& f);

// int_D |h|^2 / int_{D \ D/2} |h|^2 for holomorphic h.
// Error(NotHolomorphic) when the relative projection defect exceeds 1e-10.
double cauchy_annulus_ratio(const DiscFunction& h);

// Nonnegative potential, piecewise constant on annuli around the disc center.
class RadialPotential {
 public:
  struct Piece {
    double inner = 0.0;  // absolute distance from the center
    double outer = 0.0;
    double value = 0.0;
  };

  RadialPotential() = default;
  // Pieces must be nonoverlapping with inner < outer and value >= 0.
  explicit RadialPotential(std::vector<Piece> pieces);

  // c * 1_{radius/2 <= |z - c| <= radius}.
  static RadialPotential annulus_indicator(double c, double radius = 1.0);
  // value * 1_{|z - c| < radius/2}.
  static RadialPotential inner_disc_indicator(double value, double radius = 1.0);

  const std::vector<Piece>& pieces() const { return pieces_; }

  // Essential infimum of V on D(c, radius) \ D(c, radius/2).
  double annulus_inf(double radius) const;
  // V(z) -> V(z / s) / s^2, the scaling that leaves the uncertainty ratio fixed.
  RadialPotential dilated(double s) const;
  // int_{D(c, radius)} V.
  double integral(double radius) const;

 private:
  std::vector<Piece> pieces_;
};

// int V |f|^2 over f's disc.
double potential_mass(const DiscFunction& f, const RadialPotential& pot);

// [int |dbar f|^2 + int V |f|^2] / [min{c, 1/r^2} int |f|^2].
// Error(ZeroDenominator) when c = 0 or f = 0.
double uncertainty_ratio(const DiscFunction& f, const RadialPotential& pot);

// The hypothetical improvement tested on f = z^m, V = 1_{D(0,1/2)}:
// [int |dbar f|^2 + int V |f|^2] / [min{int V, 1} int |f|^2] = 4^{-m} / pi.
double false_inequality_ratio(int m);

// int |f_i - B f_i|^2 / int |f_i|^2 with f_i = f 1_{D(c, r/2)}.
double inner_disc_defect_ratio(const DiscFunction& f);

// Deterministic random function with |k| <= modes, j <= modes and
// complex Gaussian coefficients damped by 1/(1 + |k| + j).
DiscFunction random_disc_function(std::uint64_t seed, int modes, int max_angular,
                                  int max_radial);

}  // namespace kohn
