#include "kohn/disc_uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "kohn/error.hpp"
#include "kohn/quadrature.hpp"

namespace kohn {

namespace {

constexpr double kPi = std::numbers::pi;

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// g_k(rho) = sum_j c_{k,j} rho^{|k|+2j}
std::complex<double> radial_profile(const DiscFunction& f, int k, double rho) {
  std::complex<double> acc{};
  const double rho2 = rho * rho;
  double power = ipow(rho, std::abs(k));
  for (int j = 0; j <= f.max_radial(); ++j) {
    acc += f.coeff(k, j) * power;
    power *= rho2;
  }
  return acc;
}

}  // namespace

DiscFunction::DiscFunction(int max_angular, int max_radial, std::complex<double> center,
                           double radius)
    : max_angular_(max_angular),
      max_radial_(max_radial),
      center_(center),
      radius_(radius),
      coeffs_(std::size_t(2 * max_angular + 1) * std::size_t(max_radial + 1)) {
  if (max_angular < 0 || max_radial < 0) {
    throw Error(ErrorCode::InvalidArgument, "truncation orders must be nonnegative");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "disc radius must be positive and finite");
  }
}

DiscFunction DiscFunction::monomial(int a, int b, int max_angular, int max_radial,
                                    std::complex<double> center, double radius) {
  if (a < 0 || b < 0) throw Error(ErrorCode::InvalidArgument, "negative monomial degree");
  DiscFunction f(max_angular, max_radial, center, radius);
  const int k = a - b;
  const int j = std::min(a, b);
  if (std::abs(k) > max_angular || j > max_radial) {
    throw Error(ErrorCode::TruncationTooSmall,
                "monomial does not fit the truncation orders");
  }
  f.set_coeff(k, j, 1.0);
  return f;
}

std::size_t DiscFunction::index(int k, int j) const {
  if (std::abs(k) > max_angular_ || j < 0 || j > max_radial_) {
    throw Error(ErrorCode::TruncationTooSmall, "mode outside the truncation");
  }
  return std::size_t(k + max_angular_) * std::size_t(max_radial_ + 1) + std::size_t(j);
}

std::complex<double> DiscFunction::operator()(std::complex<double> z) const {
  const std::complex<double> zeta = (z - center_) / radius_;
  const double rho = std::abs(zeta);
  const double theta = std::arg(zeta);
  std::complex<double> acc{};
  for (int k = -max_angular_; k <= max_angular_; ++k) {
    acc += radial_profile(*this, k, rho) * std::polar(1.0, k * theta);
  }
  return acc;
}

void DiscFunction::require_same_disc(const DiscFunction& other) const {
  if (other.center_ != center_ || other.radius_ != radius_) {
    throw Error(ErrorCode::InvalidArgument, "functions live on different discs");
  }
}

DiscFunction& DiscFunction::operator+=(const DiscFunction& other) {
  require_same_disc(other);
  for (int k = -other.max_angular_; k <= other.max_angular_; ++k) {
    for (int j = 0; j <= other.max_radial_; ++j) {
      const auto c = other.coeff(k, j);
      if (c != 0.0) add_coeff(k, j, c);
    }
  }
  return *this;
}

DiscFunction& DiscFunction::operator-=(const DiscFunction& other) {
  DiscFunction neg = other;
  neg *= -1.0;
  return *this += neg;
}

DiscFunction& DiscFunction::operator*=(std::complex<double> s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

DiscFunction DiscFunction::moved_to(std::complex<double> center, double radius) const {
  DiscFunction out(max_angular_, max_radial_, center, radius);
  out.coeffs_ = coeffs_;
  return out;
}

DiscFunction DiscFunction::embedded(int max_angular, int max_radial) const {
  DiscFunction out(max_angular, max_radial, center_, radius_);
  for (int k = -max_angular_; k <= max_angular_; ++k) {
    for (int j = 0; j <= max_radial_; ++j) {
      const auto c = coeff(k, j);
      if (c != 0.0) out.set_coeff(k, j, c);
    }
  }
  return out;
}

int DiscFunction::highest_positive_mode() const {
  for (int k = max_angular_; k >= 0; --k) {
    for (int j = 0; j <= max_radial_; ++j) {
      if (coeff(k, j) != 0.0) return k;
    }
  }
  return -1;
}

int DiscFunction::highest_mode() const {
  for (int k = max_angular_; k >= 0; --k) {
    for (int j = 0; j <= max_radial_; ++j) {
      if (coeff(k, j) != 0.0 || coeff(-k, j) != 0.0) return k;
    }
  }
  return -1;
}

double annulus_norm_sq(const DiscFunction& f, double rho_in, double rho_out) {
  rho_in = std::clamp(rho_in, 0.0, 1.0);
  rho_out = std::clamp(rho_out, 0.0, 1.0);
  if (rho_out <= rho_in) return 0.0;
  const auto rule = gauss_legendre(f.quadrature_order(), rho_in, rho_out);
  double total = 0.0;
  for (int k = -f.max_angular(); k <= f.max_angular(); ++k) {
    double mode = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = rule.nodes[i];
      mode += rule.weights[i] * std::norm(radial_profile(f, k, rho)) * rho;
    }
    total += mode;
  }
  return 2.0 * kPi * f.radius() * f.radius() * total;
}

double l2_norm_sq(const DiscFunction& f) { return annulus_norm_sq(f, 0.0, 1.0); }

std::complex<double> inner_product(const DiscFunction& f, const DiscFunction& g) {
  if (f.center() != g.center() || f.radius() != g.radius()) {
    throw Error(ErrorCode::InvalidArgument, "functions live on different discs");
  }
  const int kmax = std::min(f.max_angular(), g.max_angular());
  const int order = std::max(f.quadrature_order(), g.quadrature_order());
  const auto rule = gauss_legendre(order, 0.0, 1.0);
  std::complex<double> total{};
  for (int k = -kmax; k <= kmax; ++k) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = rule.nodes[i];
      total += rule.weights[i] * radial_profile(f, k, rho) *
               std::conj(radial_profile(g, k, rho)) * rho;
    }
  }
  return 2.0 * kPi * f.radius() * f.radius() * total;
}

DiscFunction bergman_project(const DiscFunction& f, int basis_order) {
  if (basis_order < 0) basis_order = f.max_angular();
  if (f.highest_positive_mode() > basis_order) {
    throw Error(ErrorCode::TruncationTooSmall,
                "function has holomorphic modes beyond the projection basis");
  }
  DiscFunction out(f.max_angular(), f.max_radial(), f.center(), f.radius());
  const auto rule = gauss_legendre(f.quadrature_order(), 0.0, 1.0);
  const int kmax = std::min(basis_order, f.max_angular());
  for (int k = 0; k <= kmax; ++k) {
    // <g_k, rho^k> / <rho^k, rho^k> with weight rho d rho on [0, 1].
    std::complex<double> num{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = rule.nodes[i];
      num += rule.weights[i] * radial_profile(f, k, rho) * ipow(rho, k) * rho;
    }
    out.set_coeff(k, 0, num * double(2 * k + 2));
  }
  return out;
}

DiscFunction dbar(const DiscFunction& f) {
  DiscFunction out(f.max_angular() + 1, f.max_radial(), f.center(), f.radius());
  for (int k = -f.max_angular(); k <= f.max_angular(); ++k) {
    for (int j = 0; j <= f.max_radial(); ++j) {
      const auto c = f.coeff(k, j);
      if (c == 0.0) continue;
      const int total = std::abs(k) + 2 * j;
      const int a = (total + k) / 2;
      const int b = (total - k) / 2;
      if (b == 0) continue;
      // d/dzbar (zeta^a zetabar^b) = b zeta^a zetabar^{b-1} / R
      out.add_coeff(k + 1, std::min(a, b - 1), c * double(b) / f.radius());
    }
  }
  return out;
}

double dbar_energy(const DiscFunction& f) { return l2_norm_sq(dbar(f)); }

PoincareDefect poincare_defect(const DiscFunction& f) {
  DiscFunction residual = f;
  residual -= bergman_project(f);
  return {l2_norm_sq(residual), dbar_energy(f)};
}

double cauchy_annulus_ratio(const DiscFunction& h) {
  const double total = l2_norm_sq(h);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::ZeroDenominator, "zero function has no annulus ratio");
  }
  DiscFunction residual = h;
  residual -= bergman_project(h);
  if (l2_norm_sq(residual) > 1e-10 * total) {
    throw Error(ErrorCode::NotHolomorphic, "function is not holomorphic on the disc");
  }
  return total / annulus_norm_sq(h, 0.5, 1.0);
}

RadialPotential::RadialPotential(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.inner < b.inner; });
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (!(p.inner >= 0.0 && p.inner < p.outer && p.value >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "invalid potential piece");
    }
    if (i > 0 && p.inner < pieces_[i - 1].outer) {
      throw Error(ErrorCode::InvalidArgument, "potential pieces overlap");
    }
  }
}

RadialPotential RadialPotential::annulus_indicator(double c, double radius) {
  return RadialPotential({{0.5 * radius, radius, c}});
}

RadialPotential RadialPotential::inner_disc_indicator(double value, double radius) {
  return RadialPotential({{0.0, 0.5 * radius, value}});
}

double RadialPotential::annulus_inf(double radius) const {
  // Sweep [radius/2, radius]; any gap of positive length means V = 0 there.
  const double lo = 0.5 * radius;
  const double hi = radius;
  double covered_to = lo;
  double inf = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) {
    if (p.outer <= lo || p.inner >= hi) continue;
    if (p.inner > covered_to) return 0.0;
    inf = std::min(inf, p.value);
    covered_to = std::max(covered_to, p.outer);
  }
  if (covered_to < hi) return 0.0;
  return inf;
}

RadialPotential RadialPotential::dilated(double s) const {
  std::vector<Piece> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back({p.inner * s, p.outer * s, p.value / (s * s)});
  return RadialPotential(std::move(out));
}

double RadialPotential::integral(double radius) const {
  double total = 0.0;
  for (const auto& p : pieces_) {
    const double a = std::min(p.inner, radius);
    const double b = std::min(p.outer, radius);
    total += p.value * kPi * (b * b - a * a);
  }
  return total;
}

double potential_mass(const DiscFunction& f, const RadialPotential& pot) {
  double total = 0.0;
  for (const auto& p : pot.pieces()) {
    if (p.value == 0.0) continue;
    total += p.value * annulus_norm_sq(f, p.inner / f.radius(), p.outer / f.radius());
  }
  return total;
}

double uncertainty_ratio(const DiscFunction& f, const RadialPotential& pot) {
  const double r = f.radius();
  const double c = pot.annulus_inf(r);
  const double mass = l2_norm_sq(f);
  const double scale = std::min(c, 1.0 / (r * r));
  if (!(scale > 0.0) || !(mass > 0.0)) {
    throw Error(ErrorCode::ZeroDenominator,
                "annulus infimum or function mass vanishes; the bound is void");
  }
  return (dbar_energy(f) + potential_mass(f, pot)) / (scale * mass);
}

double false_inequality_ratio(int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "m must be nonnegative");
  const auto f = DiscFunction::monomial(m, 0, m, 0);
  const auto pot = RadialPotential::inner_disc_indicator(1.0, 1.0);
  const double numer = dbar_energy(f) + potential_mass(f, pot);
  return numer / (std::min(pot.integral(1.0), 1.0) * l2_norm_sq(f));
}

double inner_disc_defect_ratio(const DiscFunction& f) {
  const double inner = annulus_norm_sq(f, 0.0, 0.5);
  if (!(inner > 0.0)) {
    throw Error(ErrorCode::ZeroDenominator, "f vanishes on the inner disc");
  }
  // B(f_i) = sum_k b_k zeta^k with b_k = (2k+2) int_0^{1/2} g_k rho^{k+1} d rho.
  const auto rule = gauss_legendre(f.quadrature_order(), 0.0, 0.5);
  double projected = 0.0;
  for (int k = 0; k <= f.max_angular(); ++k) {
    std::complex<double> num{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double rho = rule.nodes[i];
      num += rule.weights[i] * radial_profile(f, k, rho) * ipow(rho, k) * rho;
    }
    const auto b = num * double(2 * k + 2);
    // ||zeta^k||^2 = 2 pi R^2 / (2k + 2)
    projected += std::norm(b) * 2.0 * kPi * f.radius() * f.radius() / double(2 * k + 2);
  }
  return std::max(inner - projected, 0.0) / inner;
}

DiscFunction random_disc_function(std::uint64_t seed, int modes, int max_angular,
                                  int max_radial) {
  if (modes > max_angular || modes > max_radial) {
    throw Error(ErrorCode::TruncationTooSmall, "random modes exceed the truncation");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  DiscFunction f(max_angular, max_radial);
  for (int k = -modes; k <= modes; ++k) {
    for (int j = 0; j <= modes; ++j) {
      const double damp = 1.0 / (1.0 + std::abs(k) + j);
      const double re = normal(rng);
      const double im = normal(rng);
      f.set_coeff(k, j, damp * std::complex<double>(re, im));
    }
  }
  return f;
}

}  // namespace kohn
