#pragma once

#include <complex>
#include <optional>

#include "kohn/exponent_set.hpp"

namespace kohn {

using Complex = std::complex<double>;

struct Point2C {
  Complex z{};
  Complex w{};

  // Radial representative (|z|, |w|) on the positive real axes.
  static Point2C radial(double abs_z, double abs_w) { return {abs_z, abs_w}; }
  bool finite() const;
};

// Entries of the complex Hessian [[h_zz, h_zw], [conj(h_zw), h_ww]],
// h_zw = d_z dbar_w phi.
struct HessianEval {
  double h_zz = 0.0;
  double h_ww = 0.0;
  Complex h_zw{};
  double det = 0.0;
  double trace = 0.0;
  double lambda_min = 0.0;
};

struct DetTrace {
  double det = 0.0;
  double trace = 0.0;
};

// phi_Gamma(z,w) = sum |z^a w^b|^2, precomputing the derived sets once so
// grid sweeps do not rebuild them per point.
class MonomialWeight {
 public:
  // Throws Error(EmptySet) for an empty set.
  explicit MonomialWeight(ExponentSet gamma);

  const ExponentSet& gamma() const { return gamma_; }
  const DerivedSets& derived() const { return derived_; }

  double value(const Point2C& p) const;
  // p_Gamma(x, y) with x = |z|^2, y = |w|^2.
  double value_xy(double x, double y) const;
  HessianEval hessian(const Point2C& p) const;
  DetTrace det_trace_closed_form(const Point2C& p) const;
  std::optional<double> lambda_approx(const Point2C& p) const;

  // Minimal eigenvalue at (|z|,|w|) = (r,s); same as hessian(radial).lambda_min.
  double lambda_min_radial(double r, double s) const;
  // Trace of the Hessian at (|z|,|w|) = (r,s).
  double trace_radial(double r, double s) const;

 private:
  ExponentSet gamma_;
  DerivedSets derived_;
};

// p_A(x, y) = sum x^a y^b; 0 for an empty set.
double monomial_sum(const ExponentSet& a, double x, double y);

double weight_value(const ExponentSet& gamma, const Point2C& p);
HessianEval hessian_at(const ExponentSet& gamma, const Point2C& p);
DetTrace det_trace_closed_form(const ExponentSet& gamma, const Point2C& p);
// phi_{Gamma^(1)} / phi_{Gamma^(2)}; absent where the denominator vanishes.
std::optional<double> lambda_approx(const ExponentSet& gamma, const Point2C& p);

// Smallest eigenvalue of a PSD 2x2 Hermitian matrix from det and trace,
// in the cancellation-free form 2 det / (tr + sqrt(tr^2 - 4 det)).
double min_eigenvalue(double det, double trace);

}  // namespace kohn
