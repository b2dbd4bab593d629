#pragma once

#include <vector>

#include "kohn/exponent_set.hpp"
#include "kohn/rational.hpp"
#include "kohn/weight_evaluator.hpp"

namespace kohn {

// Laplacian of phi_Gamma on R^4, 4 (h_zz + h_ww).
double laplacian(const ExponentSet& gamma, const Point2C& p);

// Sampled sup of the Laplacian over the closed ball B(p, r). The Laplacian is
// nondecreasing in |z| and |w|, so the sup is attained on the arc
// (|z| + r cos t, |w| + r sin t), t in [0, pi/2]; `samples` arc points plus
// the center are taken.
double ball_sup_laplacian(const MonomialWeight& weight, const Point2C& p, double r,
                          int samples = 512);

// sup{r > 0 : sup_{B(p,r)} Laplacian <= r^-2}, by bisection in log r on
// [1e-8, 1e8] to relative tolerance `tol`. Error(NotAdmissible) when the
// crossing is outside the bracket.
double rho_by_definition(const ExponentSet& gamma, const Point2C& p, double tol = 1e-10,
                         int samples = 512);

// min over nonzero mixed Wirtinger derivatives D of the Laplacian at p of
// |D|^{-1/(order(D) + 2)}.
double rho_by_poly_formula(const ExponentSet& gamma, const Point2C& p);

struct RadiusEstimate {
  double by_definition = 0.0;
  double by_poly_formula = 0.0;
  Point2C at;
};

RadiusEstimate radius_estimate(const ExponentSet& gamma, const Point2C& p);

// (|z|, |w|) sample points: 0 plus `count` log-spaced values in [lo, hi] per axis.
std::vector<Point2C> radial_sample_grid(double lo, double hi, int count);

struct Band {
  double min = 0.0;
  double max = 0.0;
  double width() const { return max / min; }
};

// Range of rho_by_definition / rho_by_poly_formula over the points.
Band rho_comparability(const ExponentSet& gamma, const std::vector<Point2C>& points);

struct DoublingSpec {
  int centers = 12;       // per axis, log-spaced in [1e-2, 1e2], plus 0
  int radii = 16;         // log-spaced in [1e-3, 1e3]
  int samples = 128;      // arc points per ball
};

struct DoublingResult {
  double constant = 0.0;  // sampled max of sup_{B(z,2r)} / sup_{B(z,r)}
  double cap = 0.0;       // Chebyshev cap T_d(2), d the real degree of the Laplacian
  Point2C worst_center;
  double worst_radius = 0.0;
};

DoublingResult doubling_constant(const ExponentSet& gamma, const DoublingSpec& spec = {});

// T_d(2) for the real degree d of the Laplacian: restricting to a line
// through the center, |q(2)| <= T_d(2) max_[-1,1] |q| for deg q <= d.
double doubling_cap(const ExponentSet& gamma);

// Sampled max of (1+|z|^a+|w|^b) / (1+|z0|^a+|w0|^b) over (z,w) in B((z0,w0),1).
double kappa_radius_check(const Rational& a, const Rational& b, int samples = 64);

// Sampled inf over the points of sup_{B(z,c)} Laplacian.
double lower_bound_inf(const ExponentSet& gamma, const std::vector<Point2C>& points,
                       double c = 1.0);

// Smallest sampled C with rho(z') / rho(z) in [1/C, C] for z' in B(z, rho(z)).
double radius_function_constant(const ExponentSet& gamma,
                                const std::vector<Point2C>& points, int angles = 16);

}  // namespace kohn
