#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "kohn/admissibility.hpp"
#include "kohn/cli.hpp"
#include "kohn/disc_uncertainty.hpp"
#include "kohn/energy_verifier.hpp"
#include "kohn/error.hpp"
#include "kohn/support_optimizer.hpp"
#include "kohn/weight_evaluator.hpp"

namespace kohn::cli {

namespace {

using nlohmann::json;

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

Check make(std::string name, bool pass, json measured) {
  return {std::move(name), pass, std::move(measured)};
}

Check failed(std::string name, const std::exception& e) {
  return {std::move(name), false, {{"error", e.what()}}};
}

ExponentSet random_gamma(std::mt19937_64& rng, int max_size, int max_degree) {
  std::uniform_int_distribution<int> size(1, max_size);
  std::uniform_int_distribution<std::int64_t> deg(0, max_degree);
  std::vector<Exponent> pts;
  const int n = size(rng);
  while (static_cast<int>(pts.size()) < n) {
    Exponent p{deg(rng), deg(rng)};
    if (p.alpha + p.beta == 0) continue;
    pts.push_back(p);
  }
  return ExponentSet(pts);
}

Point2C random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mod(0.3, 1.5);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  return {std::polar(mod(rng), arg(rng)), std::polar(mod(rng), arg(rng))};
}

// Second-difference Hessian of phi in the real coordinates of C^2.
HessianEval fd_hessian(const ExponentSet& gamma, const Point2C& p) {
  const double h = 1e-4;
  auto f = [&](double a, double b, double c, double d) {
    return weight_value(gamma, {p.z + Complex(a, b), p.w + Complex(c, d)});
  };
  const double f0 = f(0, 0, 0, 0);
  auto second = [&](int i) {
    double e[4] = {0, 0, 0, 0};
    e[i] = h;
    const double fp = f(e[0], e[1], e[2], e[3]);
    e[i] = -h;
    const double fm = f(e[0], e[1], e[2], e[3]);
    return (fp - 2.0 * f0 + fm) / (h * h);
  };
  auto mixed = [&](int i, int j) {
    double acc = 0.0;
    for (int si : {1, -1}) {
      for (int sj : {1, -1}) {
        double e[4] = {0, 0, 0, 0};
        e[i] = si * h;
        e[j] = sj * h;
        acc += si * sj * f(e[0], e[1], e[2], e[3]);
      }
    }
    return acc / (4.0 * h * h);
  };
  HessianEval out;
  out.h_zz = 0.25 * (second(0) + second(1));
  out.h_ww = 0.25 * (second(2) + second(3));
  out.h_zw = 0.25 * Complex(mixed(0, 2) + mixed(1, 3), mixed(0, 3) - mixed(1, 2));
  return out;
}

SuiteResult hessian_suite(const std::optional<ExponentSet>& gamma, const RunConfig& cfg) {
  SuiteResult res{"hessian", {}};
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<ExponentSet, Point2C>> cases;
  for (int i = 0; i < 200; ++i) {
    auto g = random_gamma(rng, 6, 6);
    cases.emplace_back(std::move(g), random_point(rng));
  }
  if (gamma) {
    for (int i = 0; i < 20; ++i) cases.emplace_back(*gamma, random_point(rng));
  }
  double worst_cf = 0.0;
  double worst_fd = 0.0;
  std::size_t fd_ok = 0;
  for (const auto& [g, p] : cases) {
    const auto h = hessian_at(g, p);
    const auto cf = det_trace_closed_form(g, p);
    worst_cf = std::max({worst_cf, rel_diff(h.det, cf.det), rel_diff(h.trace, cf.trace)});
    const auto fd = fd_hessian(g, p);
    const double scale = std::max({std::abs(h.h_zz), std::abs(h.h_ww), 1e-300});
    const double err = std::max({std::abs(fd.h_zz - h.h_zz), std::abs(fd.h_ww - h.h_ww),
                                 std::abs(fd.h_zw - h.h_zw)}) / scale;
    worst_fd = std::max(worst_fd, err);
    if (err <= 1e-5) ++fd_ok;
  }
  res.checks.push_back(make("closed_form_agreement", worst_cf <= 1e-10,
                            {{"cases", cases.size()}, {"max_relative_error", worst_cf}}));
  const double rate = double(fd_ok) / double(cases.size());
  res.checks.push_back(make("finite_difference_agreement", fd_ok == cases.size(),
                            {{"cases", cases.size()},
                             {"agreement_rate", rate},
                             {"max_relative_error", worst_fd}}));
  return res;
}

std::vector<double> log_axis(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return v;
}

struct PowerBand {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::size_t count = 0;
  double constant() const { return count == 0 ? 1.0 : std::max(hi, 1.0 / lo); }
};

// Band of lambda_min / predicted_lambda over a log grid on [1e-2, 1e2]^2
// restricted to the region, plus samples on the region's boundary curves
// (where the sup sits), so the band converges under refinement.
PowerBand power_band(const ExponentSet& gamma, RegionLabel region, int res) {
  const MonomialWeight weight(gamma);
  const auto profile = classify(gamma);
  const auto frame = RegionFrame::from(profile);
  const double slope = double(frame.m) / double(frame.n);
  const double nu = to_double(frame.nu);
  constexpr double eps = 1e-12;
  const double top = 1e2 * (1.0 + eps);
  // Closed regions in the oriented frame.
  auto in_closure = [&](double a, double b) {
    switch (region) {
      case RegionLabel::E1:
        return a >= 1.0 - eps && b <= std::pow(a, slope) * (1.0 + eps);
      case RegionLabel::E2:
        return b >= 1.0 - eps && std::pow(b, nu) * (1.0 - eps) <= a &&
               a <= std::pow(b, 1.0 / slope) * (1.0 + eps);
      default:
        return b >= 1.0 - eps && a <= std::pow(b, nu) * (1.0 + eps);
    }
  };
  const auto axis = log_axis(1e-2, 1e2, res);
  std::vector<std::pair<double, double>> oriented;
  for (double b : axis) {
    for (double a : axis) oriented.emplace_back(a, b);
  }
  for (double t : axis) {
    oriented.emplace_back(1.0, t);
    oriented.emplace_back(t, 1.0);
    oriented.emplace_back(t, std::pow(t, slope));
    oriented.emplace_back(std::pow(t, 1.0 / slope), t);
    oriented.emplace_back(std::pow(t, nu), t);
  }
  PowerBand band;
  for (const auto& [a, b] : oriented) {
    if (a > top || b > top || !in_closure(a, b)) continue;
    const double x = frame.swapped ? b : a;
    const double y = frame.swapped ? a : b;
    double predicted = 0.0;
    try {
      predicted = predicted_lambda(profile, Point2C::radial(x, y));
    } catch (const Error&) {
      continue;  // rounded just outside E1 u E2 u E3
    }
    const double ratio = weight.lambda_min_radial(x, y) / predicted;
    band.lo = std::min(band.lo, ratio);
    band.hi = std::max(band.hi, ratio);
    ++band.count;
  }
  return band;
}

SuiteResult regions_suite(const ExponentSet& gamma) {
  SuiteResult res{"regions", {}};
  const auto profile = classify(gamma);
  std::size_t uncovered = 0;
  const auto axis = log_axis(1e-2, 1e2, 64);
  for (double y : axis) {
    for (double x : axis) {
      const auto set = region_membership(profile, Point2C::radial(x, y));
      if (!set.contains(RegionLabel::E) && !set.contains(RegionLabel::U0) &&
          !set.contains(RegionLabel::Ur) && !set.contains(RegionLabel::Uu)) {
        ++uncovered;
      }
    }
  }
  res.checks.push_back(make("cover", uncovered == 0, {{"uncovered_points", uncovered}}));
  try {
    (void)RegionFrame::from(profile);
  } catch (const Error& e) {
    res.checks.push_back(failed("power_laws_applicable", e));
    return res;
  }
  for (auto region : {RegionLabel::E1, RegionLabel::E2, RegionLabel::E3}) {
    const auto coarse = power_band(gamma, region, 64);
    const auto fine = power_band(gamma, region, 128);
    const double c64 = coarse.constant();
    const double c128 = fine.constant();
    const bool stable = std::isfinite(c128) && rel_diff(c64, c128) <= 0.05;
    res.checks.push_back(make("power_law_" + std::string(region_name(region)), stable,
                              {{"points_64", coarse.count},
                               {"points_128", fine.count},
                               {"C_64", c64},
                               {"C_128", c128}}));
  }
  return res;
}

SuiteResult delta_suite(const ExponentSet& gamma) {
  SuiteResult res{"delta", {}};
  DeltaResult best;
  try {
    best = optimal_delta(gamma);
  } catch (const Error& e) {
    res.checks.push_back(failed("optimal_delta", e));
    return res;
  }
  const auto profile = classify(gamma);
  const auto derived = derived_sets(gamma);
  // Dense rational rays on the two cone segments.
  const int n = 5000;
  Rational oracle_min(std::numeric_limits<std::int64_t>::max() / 4);
  const Direction a1(Rational(1), -profile.sigma), b1(Rational(0), Rational(1));
  const Direction a2(-profile.tau, Rational(1)), b2(Rational(1), Rational(0));
  for (const auto& [a, b] : {std::pair{a1, b1}, std::pair{a2, b2}}) {
    for (int k = 0; k <= n; ++k) {
      const Rational t(k, n);
      const Direction d(a.u * (1 - t) + b.u * t, a.v * (1 - t) + b.v * t);
      oracle_min = min(oracle_min, delta_ratio(derived, d));
    }
  }
  const Rational at_ray = delta_ratio(derived, best.minimizing_ray);
  const Rational sufficient = sufficient_delta(gamma);
  json m{{"delta", to_string(best.delta)},
         {"delta_float", to_double(best.delta)},
         {"minimizing_ray", {to_string(best.minimizing_ray.u), to_string(best.minimizing_ray.v)}},
         {"oracle_min", to_string(oracle_min)},
         {"oracle_rays", 2 * (n + 1)},
         {"sufficient_bound", to_string(sufficient)}};
  res.checks.push_back(make("oracle_lower_bound", best.delta <= oracle_min, m));
  res.checks.push_back(make("attained_on_ray", at_ray == best.delta,
                            {{"ratio_at_ray", to_string(at_ray)}}));
  res.checks.push_back(make("above_sufficient_bound", best.delta >= sufficient,
                            {{"sufficient_bound", to_string(sufficient)}}));
  return res;
}

SuiteResult uncertainty_suite(const RunConfig& cfg) {
  SuiteResult res{"uncertainty", {}};
  double worst_closed = 0.0;
  double worst_decay = 0.0;
  for (int m = 0; m <= 10; ++m) {
    const double r = false_inequality_ratio(m);
    worst_closed = std::max(worst_closed, rel_diff(r, std::pow(4.0, -m) / std::numbers::pi));
    if (m < 10) worst_decay = std::max(worst_decay, std::abs(false_inequality_ratio(m + 1) / r - 0.25));
  }
  res.checks.push_back(make("false_inequality_decay", worst_closed <= 1e-8 && worst_decay <= 1e-8,
                            {{"max_relative_error", worst_closed},
                             {"max_decay_factor_error", worst_decay}}));

  double max_cauchy = 0.0;
  double worst_idem = 0.0;
  double worst_adj = 0.0;
  double worst_pyth = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = random_disc_function(cfg.seed + i, 6, 16, 16);
    const auto g = random_disc_function(cfg.seed + 1000 + i, 6, 16, 16);
    const auto bf = bergman_project(f);
    const auto bg = bergman_project(g);
    const double nf = l2_norm_sq(f);
    max_cauchy = std::max(max_cauchy, cauchy_annulus_ratio(bf));
    auto diff = bergman_project(bf);
    diff -= bf;
    worst_idem = std::max(worst_idem, std::sqrt(l2_norm_sq(diff) / nf));
    worst_adj = std::max(worst_adj, std::abs(inner_product(bf, g) - inner_product(f, bg)) /
                                        std::sqrt(nf * l2_norm_sq(g)));
    auto rest = f;
    rest -= bf;
    worst_pyth = std::max(worst_pyth, std::abs(l2_norm_sq(bf) + l2_norm_sq(rest) - nf) / nf);
  }
  res.checks.push_back(make("cauchy_annulus_bound", max_cauchy <= 4.0 / 3.0 + 1e-12,
                            {{"max_ratio", max_cauchy}}));
  res.checks.push_back(make("projection_idempotent", worst_idem <= 1e-10, {{"max_error", worst_idem}}));
  res.checks.push_back(make("projection_self_adjoint", worst_adj <= 1e-10, {{"max_error", worst_adj}}));
  res.checks.push_back(make("pythagoras", worst_pyth <= 1e-10, {{"max_error", worst_pyth}}));

  double floor = std::numeric_limits<double>::infinity();
  double worst_trunc = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = random_disc_function(cfg.seed + 5000 + i, 6, 16, 16);
    const auto f32 = f.embedded(32, 32);
    for (double c : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      const auto pot = RadialPotential::annulus_indicator(c);
      const double r16 = uncertainty_ratio(f, pot);
      floor = std::min(floor, r16);
      worst_trunc = std::max(worst_trunc, rel_diff(r16, uncertainty_ratio(f32, pot)));
    }
  }
  res.checks.push_back(make("uncertainty_floor", floor >= 0.05,
                            {{"min_ratio", floor}, {"functions", 100}, {"potentials", 5}}));
  res.checks.push_back(make("truncation_stability", worst_trunc <= 1e-6,
                            {{"max_relative_change", worst_trunc}}));
  return res;
}

SuiteResult energy_suite(const ExponentSet& gamma, const RunConfig& cfg) {
  SuiteResult res{"energy", {}};
  const double pi = std::numbers::pi;
  QuadratureSpec spec;
  spec.threads = cfg.threads;
  {
    const ExponentSet linear{{1, 0}, {0, 1}};
    const CoercivityMultiplier flat;
    const auto rep = weighted_energy(linear, flat, TestFunction::gaussian(1.0, 1.0), spec);
    const double scale = std::exp(rep.log_scale);
    const double f_exact = 2.0 * (pi / 16) * (pi / 4) + 2.0 * (pi / 4) * (pi / 4);
    const double ratio_exact = f_exact / (9.0 * (pi / 4) * (pi / 4));
    const double err = std::max(rel_diff(rep.f_value * scale, f_exact),
                                rel_diff(*rep.ratio, ratio_exact));
    res.checks.push_back(make("gaussian_calibration", err <= 1e-8,
                              {{"f_value", rep.f_value * scale},
                               {"ratio", *rep.ratio},
                               {"max_relative_error", err}}));
  }
  CoercivityMultiplier mu;
  try {
    mu = coercivity_multiplier(gamma);
  } catch (const Error& e) {
    res.checks.push_back(failed("certificate", e));
    return res;
  }
  const auto family = standard_family(20);
  const auto c16 = coercivity_certificate(gamma, mu, family, spec);
  QuadratureSpec fine = spec;
  fine.order = 32;
  const auto c32 = coercivity_certificate(gamma, mu, family, fine);
  double drift = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    drift = std::max(drift, rel_diff(c16.ratios[i], c32.ratios[i]));
  }
  const auto c60 = coercivity_certificate(gamma, mu, standard_family(60), spec);
  res.checks.push_back(make("certificate_positive", c16.value > 0.0,
                            {{"certificate", c16.value},
                             {"argmin", family[c16.argmin].describe()},
                             {"family_size", family.size()}}));
  res.checks.push_back(make("self_convergence", drift <= cfg.tol,
                            {{"max_relative_change", drift}, {"tol", cfg.tol}}));
  res.checks.push_back(make("family_stability", c60.value > 0.0 && c60.value >= 0.5 * c16.value,
                            {{"certificate_20", c16.value}, {"certificate_60", c60.value}}));
  return res;
}

SuiteResult admissibility_suite(const ExponentSet& gamma) {
  SuiteResult res{"admissibility", {}};
  try {
    const auto coarse = rho_comparability(gamma, radial_sample_grid(1e-2, 2.0, 9));
    const auto fine = rho_comparability(gamma, radial_sample_grid(1e-2, 2.0, 17));
    res.checks.push_back(make("rho_comparability", fine.width() <= 1.5 * coarse.width(),
                              {{"band_9", {coarse.min, coarse.max}},
                               {"band_17", {fine.min, fine.max}}}));
  } catch (const Error& e) {
    res.checks.push_back(failed("rho_comparability", e));
  }
  try {
    const auto d1 = doubling_constant(gamma);
    DoublingSpec dense;
    dense.centers = 24;
    dense.radii = 32;
    dense.samples = 256;
    const auto d2 = doubling_constant(gamma, dense);
    const bool ok = std::isfinite(d2.constant) && d2.constant <= d1.cap &&
                    rel_diff(d1.constant, d2.constant) <= 0.05;
    res.checks.push_back(make("doubling_constant", ok,
                              {{"D", d1.constant}, {"D_dense", d2.constant}, {"cap", d1.cap}}));
  } catch (const Error& e) {
    res.checks.push_back(failed("doubling_constant", e));
  }
  try {
    const double lb1 = lower_bound_inf(gamma, radial_sample_grid(1e-2, 1e2, 16));
    const double lb2 = lower_bound_inf(gamma, radial_sample_grid(1e-2, 1e2, 32));
    res.checks.push_back(make("lower_bound", lb2 > 0.0 && rel_diff(lb1, lb2) <= 0.05,
                              {{"inf_16", lb1}, {"inf_32", lb2}}));
  } catch (const Error& e) {
    res.checks.push_back(failed("lower_bound", e));
  }
  try {
    const auto mu = coercivity_multiplier(gamma);
    const double k1 = kappa_radius_check(mu.exponent_z, mu.exponent_w, 32);
    const double k2 = kappa_radius_check(mu.exponent_z, mu.exponent_w, 64);
    res.checks.push_back(make("kappa_radius_function",
                              std::isfinite(k2) && rel_diff(k1, k2) <= 0.05,
                              {{"a", to_string(mu.exponent_z)},
                               {"b", to_string(mu.exponent_w)},
                               {"C_32", k1},
                               {"C_64", k2}}));
  } catch (const Error& e) {
    res.checks.push_back(failed("kappa_radius_function", e));
  }
  return res;
}

}  // namespace

bool SuiteResult::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<SuiteResult> run_verify(const std::optional<ExponentSet>& gamma,
                                    std::string_view suite, const RunConfig& cfg) {
  std::vector<std::string_view> wanted;
  if (suite == "all") {
    wanted.assign(std::begin(kSuites), std::end(kSuites));
  } else if (std::find(std::begin(kSuites), std::end(kSuites), suite) != std::end(kSuites)) {
    wanted.push_back(suite);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
  }
  auto need = [&](std::string_view name) -> const ExponentSet& {
    if (!gamma) {
      throw Error(ErrorCode::InvalidArgument, "suite '" + std::string(name) + "' needs --gamma");
    }
    return *gamma;
  };
  std::vector<SuiteResult> out;
  for (auto name : wanted) {
    if (name == "hessian") out.push_back(hessian_suite(gamma, cfg));
    if (name == "regions") out.push_back(regions_suite(need(name)));
    if (name == "delta") out.push_back(delta_suite(need(name)));
    if (name == "uncertainty") out.push_back(uncertainty_suite(cfg));
    if (name == "energy") out.push_back(energy_suite(need(name), cfg));
    if (name == "admissibility") out.push_back(admissibility_suite(need(name)));
  }
  return out;
}

nlohmann::json suites_json(const std::vector<SuiteResult>& results) {
  auto arr = json::array();
  for (const auto& s : results) {
    auto checks = json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}});
    }
    arr.push_back({{"suite", s.suite}, {"pass", s.pass()}, {"checks", checks}});
  }
  return arr;
}

}  // namespace kohn::cli
