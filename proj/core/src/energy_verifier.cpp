#include "kohn/energy_verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <tuple>

#include "kohn/error.hpp"
#include "kohn/parallel.hpp"
#include "kohn/quadrature.hpp"
#include "kohn/weight_evaluator.hpp"

namespace kohn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

std::string fmt(const char* pattern, double a, double b, double c) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// k log x with 0 log 0 = 0.
double klog(int k, double x) { return k == 0 ? 0.0 : k * safe_log(x); }

double bump_q(double r, double c, double h) {
  const double d = r * r - c * c;
  return d * d / (h * h * (4.0 * c * c + h * h));
}

// |dq/dr| / 2 times |u| gives |du/dzbar|.
double bump_half_dq(double r, double c, double h) {
  return 2.0 * r * std::abs(r * r - c * c) / (h * h * (4.0 * c * c + h * h));
}

}  // namespace

TestFunction TestFunction::gaussian(double rate_z, double rate_w) {
  if (!(rate_z > 0.0) || !(rate_w > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "gaussian rates must be positive");
  }
  TestFunction t;
  t.kind = Kind::GaussianRadial;
  t.rate_z = rate_z;
  t.rate_w = rate_w;
  return t;
}

TestFunction TestFunction::bump(double center_z, double center_w, double width) {
  if (!(width > 0.0) || center_z < 0.0 || center_w < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "bump needs width > 0 and centers >= 0");
  }
  TestFunction t;
  t.kind = Kind::BumpRadial;
  t.center_z = center_z;
  t.center_w = center_w;
  t.width = width;
  return t;
}

TestFunction TestFunction::polynomial_gaussian(int power_z, int power_w, double rate_z,
                                               double rate_w) {
  if (power_z < 0 || power_w < 0) {
    throw Error(ErrorCode::InvalidArgument, "powers must be nonnegative");
  }
  TestFunction t = gaussian(rate_z, rate_w);
  t.kind = Kind::PolynomialTimesGaussian;
  t.power_z = power_z;
  t.power_w = power_w;
  return t;
}

double TestFunction::log_value(double r, double s) const {
  switch (kind) {
    case Kind::GaussianRadial:
      return -rate_z * r * r - rate_w * s * s;
    case Kind::BumpRadial:
      return -bump_q(r, center_z, width) - bump_q(s, center_w, width);
    case Kind::PolynomialTimesGaussian:
      return 2.0 * klog(power_z, r) + 2.0 * klog(power_w, s) - rate_z * r * r -
             rate_w * s * s;
  }
  return kNegInf;
}

double TestFunction::log_dz(double r, double s) const {
  switch (kind) {
    case Kind::GaussianRadial:
      return safe_log(rate_z * r) + log_value(r, s);
    case Kind::BumpRadial:
      return safe_log(bump_half_dq(r, center_z, width)) + log_value(r, s);
    case Kind::PolynomialTimesGaussian: {
      // |z|^{2p-1} |p - a|z|^2| |w|^{2q} e^{...}
      const double rest = 2.0 * klog(power_w, s) - rate_z * r * r - rate_w * s * s;
      if (power_z == 0) return safe_log(rate_z * r) + rest;
      return klog(2 * power_z - 1, r) + safe_log(std::abs(power_z - rate_z * r * r)) + rest;
    }
  }
  return kNegInf;
}

double TestFunction::log_dw(double r, double s) const {
  TestFunction swapped = *this;
  std::swap(swapped.rate_z, swapped.rate_w);
  std::swap(swapped.center_z, swapped.center_w);
  std::swap(swapped.power_z, swapped.power_w);
  return swapped.log_dz(s, r);
}

std::string TestFunction::describe() const {
  switch (kind) {
    case Kind::GaussianRadial:
      return fmt("gaussian_radial(a=%.6g,b=%.6g)", rate_z, rate_w, 0.0);
    case Kind::BumpRadial:
      return fmt("bump_radial(cz=%.6g,cw=%.6g,width=%.6g)", center_z, center_w, width);
    case Kind::PolynomialTimesGaussian:
      return "polynomial_times_gaussian(p=" + std::to_string(power_z) +
             ",q=" + std::to_string(power_w) +
             fmt(",a=%.6g,b=%.6g)", rate_z, rate_w, 0.0);
  }
  return "?";
}

namespace {

// Nodes of the iterated rule for one outer |z| node.
struct Column {
  double r = 0.0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct NodeTable {
  std::vector<Column> columns;
  std::vector<double> r;
  std::vector<double> s;
  std::vector<double> weight;  // (2 pi)^2 r s w_r w_s
  std::vector<double> two_phi;
  std::vector<double> lambda;
  std::vector<double> log_mu2;
};

using TableKey = std::tuple<double, int, int, int>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

}  // namespace

struct EnergyIntegrator::Impl {
  ExponentSet gamma;
  CoercivityMultiplier mu;
  MonomialWeight weight;
  double sigma = 0.0;
  double tau = 0.0;

  mutable std::mutex mutex;
  mutable std::map<TableKey, std::shared_ptr<const NodeTable>> tables;

  Impl(ExponentSet g, CoercivityMultiplier m)
      : gamma(std::move(g)), mu(std::move(m)), weight(gamma) {
    const auto profile = classify(gamma);
    sigma = to_double(profile.sigma);
    tau = to_double(profile.tau);
  }

  double log_mu2(double r, double s) const { return 2.0 * std::log(mu.shape(r, s)); }

  // The |w|-slice of the region at |z| = r, intersected with [0, R].
  std::optional<Interval> slice(std::optional<RegionLabel> region, double r,
                                double radius) const {
    Interval iv{0.0, radius};
    if (region) {
      switch (*region) {
        case RegionLabel::E:
          if (r >= 1.0) {
            iv.lo = std::pow(r, -sigma);
          } else if (tau > 0.0) {
            iv.lo = std::pow(r, -1.0 / tau);
          } else {
            return std::nullopt;
          }
          break;
        case RegionLabel::U0:
          if (r > 2.0) return std::nullopt;
          iv.hi = 2.0;
          break;
        case RegionLabel::Ur:
          if (r <= 1.0) return std::nullopt;
          iv.hi = 2.0 * std::pow(r, -sigma);
          break;
        case RegionLabel::Uu:
          iv.lo = 1.0;
          if (tau > 0.0) {
            iv.hi = std::pow(2.0 / r, 1.0 / tau);
          } else if (r > 2.0) {
            return std::nullopt;
          }
          break;
        default:
          throw Error(ErrorCode::Unsupported,
                      "energy integration supports E, U0, Ur, Uu or the whole space");
      }
    }
    iv.lo = std::max(iv.lo, 0.0);
    iv.hi = std::min(iv.hi, radius);
    if (!(iv.hi > iv.lo)) return std::nullopt;
    return iv;
  }

  // |z| values where some region slice limit crosses 0..R or changes formula.
  std::vector<double> region_breaks(std::optional<RegionLabel> region, double radius) const {
    std::vector<double> out{1.0, 2.0};
    if (!region) return out;
    if (sigma > 0.0) {
      out.push_back(std::pow(radius, -1.0 / sigma));
      out.push_back(std::pow(2.0 / radius, 1.0 / sigma));
    }
    if (tau > 0.0) {
      out.push_back(std::pow(radius, -tau));
      out.push_back(2.0 * std::pow(radius, -tau));
    }
    return out;
  }

  // Points of [lo, hi] where f(t) - f(lo) crosses 1/4, 1/2, ..., 256; f is
  // nondecreasing. Grades the panels into the decay front of e^{-2 phi}.
  template <typename F>
  static void level_breaks(F f, double lo, double hi, std::vector<double>& out) {
    const double base = f(lo);
    const double top = f(hi);
    for (double level = 0.25; level <= 256.0; level *= 2.0) {
      if (top - base <= level) break;
      double a = lo;
      double b = hi;
      for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (a + b);
        (f(m) - base > level ? b : a) = m;
      }
      out.push_back(0.5 * (a + b));
    }
  }

  static void append_rule(double lo, double hi, std::vector<double> breaks, int order,
                          int panels, double radius, std::vector<double>& nodes,
                          std::vector<double>& weights) {
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    double prev = lo;
    for (double b : breaks) {
      if (b <= prev || b > hi) continue;
      const double len = b - prev;
      const int count =
          std::max(1, static_cast<int>(std::ceil(panels * len / radius - 1e-9)));
      const auto rule = composite_gauss_legendre(order, count, prev, b);
      nodes.insert(nodes.end(), rule.nodes.begin(), rule.nodes.end());
      weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
      prev = b;
    }
  }

  std::shared_ptr<const NodeTable> table(std::optional<RegionLabel> region, double radius,
                                         int order, int panels, unsigned threads) const {
    const TableKey key{radius, order, panels, region ? static_cast<int>(*region) : -1};
    {
      std::lock_guard lock(mutex);
      if (auto it = tables.find(key); it != tables.end()) return it->second;
    }

    std::vector<double> rb = region_breaks(region, radius);
    level_breaks([&](double r) { return 2.0 * weight.value_xy(r * r, 0.0); }, 0.0, radius,
                 rb);
    std::vector<double> outer_nodes;
    std::vector<double> outer_weights;
    append_rule(0.0, radius, rb, order, panels, radius, outer_nodes, outer_weights);

    struct Partial {
      std::vector<double> s, weight, two_phi, lambda, log_mu2;
    };
    std::vector<Partial> parts(outer_nodes.size());
    constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    parallel_for(outer_nodes.size(), threads, [&](std::size_t i) {
      const double r = outer_nodes[i];
      const auto iv = slice(region, r, radius);
      if (!iv) return;
      std::vector<double> sb{1.0, 2.0};
      level_breaks([&](double s) { return 2.0 * weight.value_xy(r * r, s * s); }, iv->lo,
                   iv->hi, sb);
      std::vector<double> nodes;
      std::vector<double> weights;
      append_rule(iv->lo, iv->hi, sb, order, panels, radius, nodes, weights);
      auto& p = parts[i];
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double s = nodes[j];
        p.s.push_back(s);
        p.weight.push_back(four_pi_sq * r * s * outer_weights[i] * weights[j]);
        p.two_phi.push_back(2.0 * weight.value_xy(r * r, s * s));
        p.lambda.push_back(weight.lambda_min_radial(r, s));
        p.log_mu2.push_back(log_mu2(r, s));
      }
    });

    auto out = std::make_shared<NodeTable>();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      auto& p = parts[i];
      if (p.s.empty()) continue;
      Column c{outer_nodes[i], out->s.size(), out->s.size() + p.s.size()};
      out->columns.push_back(c);
      out->r.insert(out->r.end(), p.s.size(), c.r);
      out->s.insert(out->s.end(), p.s.begin(), p.s.end());
      out->weight.insert(out->weight.end(), p.weight.begin(), p.weight.end());
      out->two_phi.insert(out->two_phi.end(), p.two_phi.begin(), p.two_phi.end());
      out->lambda.insert(out->lambda.end(), p.lambda.begin(), p.lambda.end());
      out->log_mu2.insert(out->log_mu2.end(), p.log_mu2.begin(), p.log_mu2.end());
    }

    std::lock_guard lock(mutex);
    auto [it, inserted] = tables.emplace(key, std::move(out));
    return it->second;
  }

  // Largest log of any integrand density (with the r s measure) at (r, s).
  double log_envelope(const TestFunction& u, double r, double s) const {
    if (!(r > 0.0) || !(s > 0.0)) return kNegInf;
    const double base = safe_log(r * s) - 2.0 * weight.value_xy(r * r, s * s);
    const double lu = 2.0 * u.log_value(r, s);
    const double lam = safe_log(2.0 * weight.lambda_min_radial(r, s));
    const double terms = std::max({2.0 * u.log_dz(r, s), 2.0 * u.log_dw(r, s), lam + lu,
                                   log_mu2(r, s) + lu, lu});
    return base + terms;
  }

  // Max of the envelope on the two far edges of the square [0, R]^2.
  double edge_max(const TestFunction& u, double radius) const {
    constexpr int kSamples = 64;
    double best = kNegInf;
    for (int j = 0; j <= kSamples; ++j) {
      const double t = radius * j / kSamples;
      best = std::max({best, log_envelope(u, radius, t), log_envelope(u, t, radius)});
    }
    return best;
  }

  struct Truncation {
    double radius = 0.0;
    double log_peak = kNegInf;
    double log_edge = kNegInf;
  };

  Truncation truncation(const TestFunction& u, const QuadratureSpec& spec) const {
    Truncation t;
    if (spec.radius > 0.0) {
      constexpr int kSquares = 96;
      for (int k = 1; k <= kSquares; ++k) {
        const double e = edge_max(u, spec.radius * k / kSquares);
        t.log_peak = std::max(t.log_peak, e);
        t.log_edge = e;
      }
      t.radius = spec.radius;
      return t;
    }
    const double stop = std::log(spec.tail_tol) - 20.0;
    for (double radius = 0.05; radius < 1e4; radius *= 1.1) {
      const double e = edge_max(u, radius);
      t.log_peak = std::max(t.log_peak, e);
      t.log_edge = e;
      t.radius = radius;
      if (std::isfinite(t.log_peak) && e - t.log_peak < stop) return t;
    }
    throw Error(ErrorCode::TailBoundViolated,
                "no truncation radius below 1e4 makes the tail negligible for " +
                    u.describe());
  }
};

EnergyIntegrator::EnergyIntegrator(ExponentSet gamma, CoercivityMultiplier mu)
    : impl_(std::make_unique<Impl>(std::move(gamma), std::move(mu))) {}
EnergyIntegrator::~EnergyIntegrator() = default;
EnergyIntegrator::EnergyIntegrator(EnergyIntegrator&&) noexcept = default;
EnergyIntegrator& EnergyIntegrator::operator=(EnergyIntegrator&&) noexcept = default;

const ExponentSet& EnergyIntegrator::gamma() const { return impl_->gamma; }
const CoercivityMultiplier& EnergyIntegrator::multiplier() const { return impl_->mu; }

namespace {

struct Sums {
  double dz = 0.0, dw = 0.0, lambda = 0.0, mu = 0.0, plain = 0.0;
};

Sums accumulate(const NodeTable& t, const TestFunction& u, double shift, unsigned threads) {
  const std::size_t n = t.columns.size();
  std::vector<std::array<double, 5>> cols(n);
  parallel_for(n, threads, [&](std::size_t i) {
    std::array<double, 5> acc{};
    for (std::size_t k = t.columns[i].begin; k < t.columns[i].end; ++k) {
      const double r = t.r[k];
      const double s = t.s[k];
      const double base = -t.two_phi[k] - shift;
      const double lu = 2.0 * u.log_value(r, s);
      const double w = t.weight[k];
      acc[0] += w * std::exp(2.0 * u.log_dz(r, s) + base);
      acc[1] += w * std::exp(2.0 * u.log_dw(r, s) + base);
      acc[2] += w * 2.0 * t.lambda[k] * std::exp(lu + base);
      acc[3] += w * std::exp(t.log_mu2[k] + lu + base);
      acc[4] += w * std::exp(lu + base);
    }
    cols[i] = acc;
  });
  std::array<std::vector<double>, 5> by_term;
  for (auto& v : by_term) v.reserve(n);
  for (const auto& c : cols) {
    for (int j = 0; j < 5; ++j) by_term[j].push_back(c[j]);
  }
  return {pairwise_sum(by_term[0]), pairwise_sum(by_term[1]), pairwise_sum(by_term[2]),
          pairwise_sum(by_term[3]), pairwise_sum(by_term[4])};
}

void validate(const QuadratureSpec& spec) {
  if (spec.order < 2 || spec.order > 256 || spec.panels < 1 || spec.panels > 4096 ||
      !(spec.radius >= 0.0) || !(spec.tail_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "invalid quadrature spec");
  }
}

}  // namespace

EnergyReport EnergyIntegrator::integrate_unchecked(const TestFunction& u,
                                                   const QuadratureSpec& spec) const {
  validate(spec);
  const auto trunc = impl_->truncation(u, spec);
  EnergyReport rep;
  rep.region = spec.region;
  rep.radius = trunc.radius;
  rep.log_scale = trunc.log_peak;
  rep.tail_estimate = std::exp(trunc.log_edge - trunc.log_peak);
  if (!(rep.tail_estimate <= spec.tail_tol)) {
    throw Error(ErrorCode::TailBoundViolated,
                "integrand at the truncation edge is " + std::to_string(rep.tail_estimate) +
                    " of its peak for " + u.describe());
  }

  const auto table =
      impl_->table(spec.region, trunc.radius, spec.order, spec.panels, spec.threads);
  const Sums sums = accumulate(*table, u, trunc.log_peak, spec.threads);
  rep.dz_term = sums.dz;
  rep.dw_term = sums.dw;
  rep.lambda_term = sums.lambda;
  rep.f_value = sums.dz + sums.dw + sums.lambda;
  rep.mu_mass = sums.mu;
  rep.plain_mass = sums.plain;

  double whole_plain = sums.plain;
  if (spec.region) {
    const auto whole = impl_->table(std::nullopt, trunc.radius, spec.order, spec.panels,
                                    spec.threads);
    whole_plain = accumulate(*whole, u, trunc.log_peak, spec.threads).plain;
  }
  const bool massless = !(rep.plain_mass > 0.0) || rep.plain_mass < 1e-30 * whole_plain;
  if (!massless && rep.mu_mass > 0.0) rep.ratio = rep.f_value / rep.mu_mass;
  return rep;
}

EnergyReport EnergyIntegrator::integrate(const TestFunction& u,
                                         const QuadratureSpec& spec) const {
  auto rep = integrate_unchecked(u, spec);
  if (!rep.ratio) {
    throw Error(ErrorCode::ZeroMass,
                "no weighted mass of " + u.describe() + " in " +
                    (spec.region ? std::string(region_name(*spec.region)) : "C^2"));
  }
  return rep;
}

namespace {

CoercivityMultiplier multiplier_or_flat(const ExponentSet& gamma) {
  try {
    return coercivity_multiplier(gamma);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported && e.code() != ErrorCode::PreconditionFailed) {
      throw;
    }
    return CoercivityMultiplier{};
  }
}

}  // namespace

EnergyReport weighted_energy(const ExponentSet& gamma, const CoercivityMultiplier& mu,
                             const TestFunction& u, const QuadratureSpec& spec) {
  return EnergyIntegrator(gamma, mu).integrate(u, spec);
}

EnergyReport weighted_energy(const ExponentSet& gamma, const TestFunction& u,
                             const QuadratureSpec& spec) {
  return weighted_energy(gamma, multiplier_or_flat(gamma), u, spec);
}

Certificate coercivity_certificate(const ExponentSet& gamma, const CoercivityMultiplier& mu,
                                   const std::vector<TestFunction>& family,
                                   const QuadratureSpec& spec) {
  if (family.empty()) {
    throw Error(ErrorCode::InvalidArgument, "certificate needs a nonempty family");
  }
  QuadratureSpec whole = spec;
  whole.region.reset();
  const EnergyIntegrator integrator(gamma, mu);
  Certificate cert;
  cert.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double ratio = *integrator.integrate(family[i], whole).ratio;
    cert.ratios.push_back(ratio);
    if (ratio < cert.value) {
      cert.value = ratio;
      cert.argmin = i;
    }
  }
  return cert;
}

Certificate coercivity_certificate(const ExponentSet& gamma,
                                   const std::vector<TestFunction>& family,
                                   const QuadratureSpec& spec) {
  return coercivity_certificate(gamma, coercivity_multiplier(gamma), family, spec);
}

RegionDecomposition region_decomposition_check(const ExponentSet& gamma,
                                               const TestFunction& u,
                                               const QuadratureSpec& spec) {
  const EnergyIntegrator integrator(gamma, multiplier_or_flat(gamma));
  QuadratureSpec s = spec;
  if (s.radius == 0.0) {
    s.region.reset();
    s.radius = integrator.integrate_unchecked(u, s).radius;
  }
  RegionDecomposition out;
  s.region.reset();
  out.whole = integrator.integrate(u, s);
  for (auto label : {RegionLabel::E, RegionLabel::U0, RegionLabel::Ur, RegionLabel::Uu}) {
    s.region = label;
    out.regions.emplace(label, integrator.integrate_unchecked(u, s));
  }
  return out;
}

std::vector<TestFunction> standard_family(int count) {
  if (count != 20 && count != 60) {
    throw Error(ErrorCode::InvalidArgument, "standard families have 20 or 60 members");
  }
  std::vector<double> widths{0.75};
  if (count == 60) {
    widths.push_back(0.4);
    widths.push_back(1.5);
  }
  std::vector<TestFunction> out;
  for (double h : widths) {
    for (double cw : {0.0, 1.0, 2.0, 3.0}) {
      for (double cz : {0.0, 0.75, 1.5, 2.25, 3.0}) out.push_back(TestFunction::bump(cz, cw, h));
    }
  }
  return out;
}

}  // namespace kohn
