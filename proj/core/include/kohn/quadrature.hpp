#pragma once

#include <vector>

namespace kohn {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
QuadratureRule gauss_legendre(int n);

// The same rule affinely mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// Composite rule: `panels` equal panels of an n-point rule on [a, b].
QuadratureRule composite_gauss_legendre(int n, int panels, double a, double b);

}  // namespace kohn
