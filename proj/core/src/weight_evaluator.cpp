#include "kohn/weight_evaluator.hpp"

#include <cmath>
#include <vector>

#include "kohn/error.hpp"

namespace kohn {

namespace {

// x^k for k >= 0 with 0^0 = 1.
double ipow(double x, std::int64_t k) {
  double result = 1.0;
  double base = x;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

Complex ipow(Complex x, std::int64_t k) {
  Complex result{1.0, 0.0};
  Complex base = x;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace

bool Point2C::finite() const {
  return std::isfinite(z.real()) && std::isfinite(z.imag()) &&
         std::isfinite(w.real()) && std::isfinite(w.imag());
}

double monomial_sum(const ExponentSet& a, double x, double y) {
  double s = 0.0;
  for (const auto& p : a) s += ipow(x, p.alpha) * ipow(y, p.beta);
  return s;
}

double min_eigenvalue(double det, double trace) {
  if (trace <= 0.0) return 0.0;
  const double disc = trace * trace - 4.0 * det;
  if (disc < -1e-12 * trace * trace) {
    throw Error(ErrorCode::Internal,
                "Hessian is not positive semidefinite beyond rounding");
  }
  const double lambda = 2.0 * det / (trace + std::sqrt(std::max(disc, 0.0)));
  return std::max(lambda, 0.0);
}

MonomialWeight::MonomialWeight(ExponentSet gamma)
    : gamma_(std::move(gamma)), derived_(derived_sets(gamma_)) {
  if (gamma_.empty()) {
    throw Error(ErrorCode::EmptySet, "weight requires a nonempty exponent set");
  }
}

double MonomialWeight::value(const Point2C& p) const {
  return value_xy(std::norm(p.z), std::norm(p.w));
}

double MonomialWeight::value_xy(double x, double y) const {
  return monomial_sum(gamma_, x, y);
}

HessianEval MonomialWeight::hessian(const Point2C& p) const {
  const double x = std::norm(p.z);
  const double y = std::norm(p.w);
  HessianEval h;

  // Gradient (d_z h_j, d_w h_j) of each holomorphic monomial h_j = z^a w^b.
  struct Grad {
    Complex dz;
    Complex dw;
  };
  std::vector<Grad> grads;
  grads.reserve(gamma_.size());

  for (const auto& e : gamma_) {
    const auto a = e.alpha;
    const auto b = e.beta;
    if (a >= 1) h.h_zz += double(a * a) * ipow(x, a - 1) * ipow(y, b);
    if (b >= 1) h.h_ww += double(b * b) * ipow(x, a) * ipow(y, b - 1);
    if (a >= 1 && b >= 1) {
      h.h_zw += double(a * b) * ipow(x, a - 1) * ipow(y, b - 1) *
                (std::conj(p.z) * p.w);
    }
    Grad g;
    g.dz = a >= 1 ? double(a) * ipow(p.z, a - 1) * ipow(p.w, b) : Complex{};
    g.dw = b >= 1 ? double(b) * ipow(p.z, a) * ipow(p.w, b - 1) : Complex{};
    grads.push_back(g);
  }

  // Gram determinant of sum_j g_j g_j^*: sum over pairs |g_j x g_k|^2. The
  // minor of a dependent pair vanishes identically, so it is skipped rather
  // than left to round to a spurious tiny positive value.
  const auto pts = gamma_.points();
  double det = 0.0;
  for (std::size_t j = 0; j < grads.size(); ++j) {
    for (std::size_t k = j + 1; k < grads.size(); ++k) {
      if (!linearly_independent(pts[j], pts[k])) continue;
      det += std::norm(grads[j].dz * grads[k].dw - grads[j].dw * grads[k].dz);
    }
  }
  h.det = det;
  h.trace = h.h_zz + h.h_ww;
  h.lambda_min = min_eigenvalue(h.det, h.trace);
  return h;
}

DetTrace MonomialWeight::det_trace_closed_form(const Point2C& p) const {
  const double x = std::norm(p.z);
  const double y = std::norm(p.w);
  const auto pts = gamma_.points();
  DetTrace out;
  // Ordered double sum, halved: (ad - bc)^2 |z^{a+c-1} w^{b+d-1}|^2.
  double det = 0.0;
  for (const auto& u : pts) {
    for (const auto& v : pts) {
      const auto c = cross(u, v);
      if (c == 0) continue;
      det += double(c) * double(c) *
             ipow(x, u.alpha + v.alpha - 1) * ipow(y, u.beta + v.beta - 1);
    }
  }
  out.det = 0.5 * det;
  for (const auto& u : pts) {
    if (u.alpha >= 1) out.trace += double(u.alpha * u.alpha) * ipow(x, u.alpha - 1) * ipow(y, u.beta);
    if (u.beta >= 1) out.trace += double(u.beta * u.beta) * ipow(x, u.alpha) * ipow(y, u.beta - 1);
  }
  return out;
}

std::optional<double> MonomialWeight::lambda_approx(const Point2C& p) const {
  const double x = std::norm(p.z);
  const double y = std::norm(p.w);
  const double denom = monomial_sum(derived_.second, x, y);
  if (denom == 0.0) return std::nullopt;
  return monomial_sum(derived_.first, x, y) / denom;
}

double MonomialWeight::lambda_min_radial(double r, double s) const {
  const auto dt = det_trace_closed_form(Point2C::radial(r, s));
  return min_eigenvalue(dt.det, dt.trace);
}

double MonomialWeight::trace_radial(double r, double s) const {
  return det_trace_closed_form(Point2C::radial(r, s)).trace;
}

double weight_value(const ExponentSet& gamma, const Point2C& p) {
  return MonomialWeight(gamma).value(p);
}

HessianEval hessian_at(const ExponentSet& gamma, const Point2C& p) {
  return MonomialWeight(gamma).hessian(p);
}

DetTrace det_trace_closed_form(const ExponentSet& gamma, const Point2C& p) {
  return MonomialWeight(gamma).det_trace_closed_form(p);
}

std::optional<double> lambda_approx(const ExponentSet& gamma, const Point2C& p) {
  return MonomialWeight(gamma).lambda_approx(p);
}

}  // namespace kohn
