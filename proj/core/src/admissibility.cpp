#include "kohn/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kohn/error.hpp"

namespace kohn {

namespace {

constexpr double kBracketLo = 1e-8;
constexpr double kBracketHi = 1e8;

// Laplacian of phi = sum c_{a,b} |z|^{2a} |w|^{2b}.
struct LaplacianTerm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  double coeff = 0.0;
};

std::vector<LaplacianTerm> laplacian_terms(const ExponentSet& gamma) {
  std::vector<LaplacianTerm> terms;
  auto add = [&](std::int64_t a, std::int64_t b, double c) {
    for (auto& t : terms) {
      if (t.a == a && t.b == b) {
        t.coeff += c;
        return;
      }
    }
    terms.push_back({a, b, c});
  };
  for (const auto& p : gamma) {
    if (p.alpha > 0) add(p.alpha - 1, p.beta, 4.0 * double(p.alpha * p.alpha));
    if (p.beta > 0) add(p.alpha, p.beta - 1, 4.0 * double(p.beta * p.beta));
  }
  return terms;
}

double falling(std::int64_t n, std::int64_t k) {
  double r = 1.0;
  for (std::int64_t i = 0; i < k; ++i) r *= double(n - i);
  return r;
}

// |x|^k with 0^0 = 1.
double ipow(double x, std::int64_t k) {
  double r = 1.0;
  for (std::int64_t i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

double laplacian(const ExponentSet& gamma, const Point2C& p) {
  const auto h = hessian_at(gamma, p);
  return 4.0 * (h.h_zz + h.h_ww);
}

double ball_sup_laplacian(const MonomialWeight& weight, const Point2C& p, double r,
                          int samples) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 ball samples");
  const double az = std::abs(p.z);
  const double aw = std::abs(p.w);
  double best = 4.0 * weight.trace_radial(az, aw);
  for (int k = 0; k < samples; ++k) {
    const double t = 0.5 * std::numbers::pi * k / (samples - 1);
    best = std::max(best, 4.0 * weight.trace_radial(az + r * std::cos(t), aw + r * std::sin(t)));
  }
  return best;
}

double rho_by_definition(const ExponentSet& gamma, const Point2C& p, double tol,
                         int samples) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  const MonomialWeight weight(gamma);
  auto sup = [&](double r) { return ball_sup_laplacian(weight, p, r, samples); };
  auto holds = [](double s, double r) { return s * r * r <= 1.0; };

  double lo = kBracketLo;
  double hi = kBracketHi;
  double sup_lo = sup(lo);
  double sup_hi = sup(hi);
  if (!holds(sup_lo, lo) || holds(sup_hi, hi)) {
    throw Error(ErrorCode::NotAdmissible,
                "radius function crossing lies outside [1e-8, 1e8]");
  }
  while (hi / lo - 1.0 > tol) {
    const double mid = std::sqrt(lo * hi);
    const double s = sup(mid);
    if (s < sup_lo * (1.0 - 1e-12) || s > sup_hi * (1.0 + 1e-12)) {
      throw Error(ErrorCode::Internal, "sampled ball sup is not monotone in the radius");
    }
    if (holds(s, mid)) {
      lo = mid;
      sup_lo = s;
    } else {
      hi = mid;
      sup_hi = s;
    }
  }
  return std::sqrt(lo * hi);
}

double rho_by_poly_formula(const ExponentSet& gamma, const Point2C& p) {
  const auto terms = laplacian_terms(gamma);
  if (terms.empty()) {
    throw Error(ErrorCode::NotAdmissible, "Laplacian vanishes identically");
  }
  std::int64_t amax = 0;
  std::int64_t bmax = 0;
  for (const auto& t : terms) {
    amax = std::max(amax, t.a);
    bmax = std::max(bmax, t.b);
  }
  const double az = std::abs(p.z);
  const double aw = std::abs(p.w);
  // d_z^i d_zbar^j d_w^k d_wbar^l of z^a zbar^a w^b wbar^b has modulus
  // a!/(a-i)! a!/(a-j)! b!/(b-k)! b!/(b-l)! |z|^{2a-i-j} |w|^{2b-k-l}, and
  // every term of the sum carries the same phase.
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i <= amax; ++i) {
    for (std::int64_t j = 0; j <= amax; ++j) {
      for (std::int64_t k = 0; k <= bmax; ++k) {
        for (std::int64_t l = 0; l <= bmax; ++l) {
          double value = 0.0;
          for (const auto& t : terms) {
            if (t.a < std::max(i, j) || t.b < std::max(k, l)) continue;
            value += t.coeff * falling(t.a, i) * falling(t.a, j) * falling(t.b, k) *
                     falling(t.b, l) * ipow(az, 2 * t.a - i - j) * ipow(aw, 2 * t.b - k - l);
          }
          if (value > 0.0) {
            best = std::min(best, std::pow(value, -1.0 / double(i + j + k + l + 2)));
          }
        }
      }
    }
  }
  return best;
}

RadiusEstimate radius_estimate(const ExponentSet& gamma, const Point2C& p) {
  return {rho_by_definition(gamma, p), rho_by_poly_formula(gamma, p), p};
}

std::vector<Point2C> radial_sample_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw Error(ErrorCode::InvalidArgument, "bad sample grid");
  }
  std::vector<double> axis{0.0};
  for (int k = 0; k < count; ++k) {
    axis.push_back(lo * std::pow(hi / lo, double(k) / (count - 1)));
  }
  std::vector<Point2C> out;
  for (double y : axis) {
    for (double x : axis) out.push_back(Point2C::radial(x, y));
  }
  return out;
}

Band rho_comparability(const ExponentSet& gamma, const std::vector<Point2C>& points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "no sample points");
  Band band{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& p : points) {
    const double ratio = rho_by_definition(gamma, p, 1e-8, 128) / rho_by_poly_formula(gamma, p);
    band.min = std::min(band.min, ratio);
    band.max = std::max(band.max, ratio);
  }
  return band;
}

double doubling_cap(const ExponentSet& gamma) {
  std::int64_t degree = 0;
  for (const auto& t : laplacian_terms(gamma)) degree = std::max(degree, 2 * (t.a + t.b));
  return std::cosh(double(degree) * std::acosh(2.0));
}

DoublingResult doubling_constant(const ExponentSet& gamma, const DoublingSpec& spec) {
  if (spec.centers < 2 || spec.radii < 2 || spec.samples < 2) {
    throw Error(ErrorCode::InvalidArgument, "bad doubling sample spec");
  }
  const MonomialWeight weight(gamma);
  DoublingResult res;
  res.cap = doubling_cap(gamma);
  for (const auto& c : radial_sample_grid(1e-2, 1e2, spec.centers)) {
    for (int k = 0; k < spec.radii; ++k) {
      const double r = 1e-3 * std::pow(1e6, double(k) / (spec.radii - 1));
      const double inner = ball_sup_laplacian(weight, c, r, spec.samples);
      if (!(inner > 0.0)) continue;
      const double ratio = ball_sup_laplacian(weight, c, 2.0 * r, spec.samples) / inner;
      if (ratio > res.constant) {
        res.constant = ratio;
        res.worst_center = c;
        res.worst_radius = r;
      }
    }
  }
  if (res.constant == 0.0) {
    throw Error(ErrorCode::NotAdmissible, "Laplacian vanishes on every sampled ball");
  }
  return res;
}

double kappa_radius_check(const Rational& a, const Rational& b, int samples) {
  if (a < 0 || b < 0) throw Error(ErrorCode::InvalidArgument, "exponents must be >= 0");
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 samples");
  const double ea = to_double(a);
  const double eb = to_double(b);
  auto kappa_inv = [&](double x, double y) { return 1.0 + std::pow(x, ea) + std::pow(y, eb); };
  double best = 1.0;
  for (const auto& c : radial_sample_grid(1e-2, 1e3, samples)) {
    const double x0 = std::abs(c.z);
    const double y0 = std::abs(c.w);
    const double base = kappa_inv(x0, y0);
    for (int k = 0; k < samples; ++k) {
      const double t = 0.5 * std::numbers::pi * k / (samples - 1);
      best = std::max(best, kappa_inv(x0 + std::cos(t), y0 + std::sin(t)) / base);
    }
  }
  return best;
}

double lower_bound_inf(const ExponentSet& gamma, const std::vector<Point2C>& points,
                       double c) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "no sample points");
  const MonomialWeight weight(gamma);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::min(best, ball_sup_laplacian(weight, p, c, 128));
  return best;
}

double radius_function_constant(const ExponentSet& gamma,
                                const std::vector<Point2C>& points, int angles) {
  if (points.empty() || angles < 1) {
    throw Error(ErrorCode::InvalidArgument, "bad radius-function sampling");
  }
  double worst = 1.0;
  for (const auto& p : points) {
    const double rho = rho_by_definition(gamma, p, 1e-8, 128);
    const double x = std::abs(p.z);
    const double y = std::abs(p.w);
    for (double frac : {0.5, 1.0}) {
      for (int k = 0; k < angles; ++k) {
        const double t = 2.0 * std::numbers::pi * k / angles;
        const auto q = Point2C::radial(std::abs(x + frac * rho * std::cos(t)),
                                       std::abs(y + frac * rho * std::sin(t)));
        const double ratio = rho_by_definition(gamma, q, 1e-8, 128) / rho;
        worst = std::max({worst, ratio, 1.0 / ratio});
      }
    }
  }
  return worst;
}

}  // namespace kohn
