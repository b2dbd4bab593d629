#include "kohn/support_optimizer.hpp"

#include <array>
#include <cmath>
#include <set>

#include "kohn/error.hpp"

namespace kohn {

Direction::Direction(Rational u_, Rational v_) : u(u_), v(v_) {
  if (u == Rational(0) && v == Rational(0)) {
    throw Error(ErrorCode::InvalidArgument, "direction (0,0) is not allowed");
  }
}

std::string to_string(const Direction& d) {
  return "(" + to_string(d.u) + "," + to_string(d.v) + ")";
}

SupportMax support_max(const ExponentSet& a, const Direction& d) {
  if (a.empty()) {
    throw Error(ErrorCode::EmptySet, "support_max of an empty set is undefined");
  }
  SupportMax out;
  bool first = true;
  for (const auto& p : a) {
    const Rational value = d.u * p.alpha + d.v * p.beta;
    if (first || value > out.value) {
      out.value = value;
      out.argmax.assign(1, p);
      first = false;
    } else if (value == out.value) {
      out.argmax.push_back(p);
    }
  }
  return out;
}

Rational lambda_exponent(const DerivedSets& derived, const Direction& d) {
  if (derived.first.empty()) {
    throw Error(ErrorCode::DegenerateWeight,
                "Gamma^(1) is empty: lambda vanishes identically");
  }
  return support_max(derived.first, d).value - support_max(derived.second, d).value;
}

Rational lambda_exponent(const ExponentSet& gamma, const Direction& d) {
  return lambda_exponent(derived_sets(gamma), d);
}

std::string_view region_name(RegionLabel label) {
  switch (label) {
    case RegionLabel::E1: return "E1";
    case RegionLabel::E2: return "E2";
    case RegionLabel::E3: return "E3";
    case RegionLabel::E: return "E";
    case RegionLabel::U0: return "U0";
    case RegionLabel::Ur: return "Ur";
    case RegionLabel::Uu: return "Uu";
    case RegionLabel::Outside: return "Outside";
  }
  return "Outside";
}

RegionLabel parse_region(std::string_view name) {
  for (auto r : {RegionLabel::E1, RegionLabel::E2, RegionLabel::E3, RegionLabel::E,
                 RegionLabel::U0, RegionLabel::Ur, RegionLabel::Uu, RegionLabel::Outside}) {
    if (region_name(r) == name) return r;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown region '" + std::string(name) + "'");
}

namespace {

Exponent transposed(const Exponent& p) { return {p.beta, p.alpha}; }

struct Oriented {
  double abs_z;
  double abs_w;
};

Oriented orient(const RegionFrame& frame, const Point2C& p) {
  const double az = std::abs(p.z);
  const double aw = std::abs(p.w);
  return frame.swapped ? Oriented{aw, az} : Oriented{az, aw};
}

bool homogeneous_regions_apply(const WeightProfile& profile) {
  return profile.homogeneous && !profile.decoupled;
}

bool in_e1(const RegionFrame& f, Oriented q) {
  return q.abs_z >= 1.0 &&
         q.abs_w <= std::pow(q.abs_z, double(f.m) / double(f.n));
}
bool in_e2(const RegionFrame& f, Oriented q) {
  return q.abs_w >= 1.0 && std::pow(q.abs_w, to_double(f.nu)) <= q.abs_z &&
         q.abs_z <= std::pow(q.abs_w, double(f.n) / double(f.m));
}
bool in_e3(const RegionFrame& f, Oriented q) {
  return q.abs_w >= 1.0 && q.abs_z <= std::pow(q.abs_w, to_double(f.nu));
}

}  // namespace

RegionFrame RegionFrame::from(const WeightProfile& profile) {
  if (!homogeneous_regions_apply(profile)) {
    throw Error(ErrorCode::PreconditionFailed,
                "E1/E2/E3 need a homogeneous, non-decoupled profile");
  }
  RegionFrame f;
  const auto [m, n] = *profile.homogeneous;
  f.swapped = m < n;
  if (!f.swapped) {
    f.m = m;
    f.n = n;
    f.witness1 = *profile.witness1;
    f.witness2 = *profile.witness2;
  } else {
    f.m = n;
    f.n = m;
    f.witness1 = transposed(*profile.witness2);
    f.witness2 = transposed(*profile.witness1);
  }
  if (f.witness2.alpha != 1) {
    f.nu = Rational(f.n - 1 - f.witness2.beta, f.witness2.alpha - 1);
  } else {
    f.nu = Rational(f.n, f.m);
  }
  return f;
}

RegionSet region_membership(const WeightProfile& profile, const Point2C& p) {
  RegionSet out;
  const double az = std::abs(p.z);
  const double aw = std::abs(p.w);
  if (!std::isfinite(az) || !std::isfinite(aw)) return out;

  if (homogeneous_regions_apply(profile)) {
    const auto frame = RegionFrame::from(profile);
    const auto q = orient(frame, p);
    if (in_e1(frame, q)) out.insert(RegionLabel::E1);
    if (in_e2(frame, q)) out.insert(RegionLabel::E2);
    if (in_e3(frame, q)) out.insert(RegionLabel::E3);
  }
  const double sigma = to_double(profile.sigma);
  const double tau = to_double(profile.tau);
  if ((az >= 1.0 && aw >= std::pow(az, -sigma)) ||
      (aw >= 1.0 && az >= std::pow(aw, -tau))) {
    out.insert(RegionLabel::E);
  }
  if (az <= 2.0 && aw <= 2.0) out.insert(RegionLabel::U0);
  if (az > 1.0 && aw <= 2.0 * std::pow(az, -sigma)) out.insert(RegionLabel::Ur);
  if (aw > 1.0 && az <= 2.0 * std::pow(aw, -tau)) out.insert(RegionLabel::Uu);
  return out;
}

RegionLabel classify_region(const WeightProfile& profile, const Point2C& p) {
  const auto set = region_membership(profile, p);
  for (auto r : {RegionLabel::E1, RegionLabel::E2, RegionLabel::E3, RegionLabel::E,
                 RegionLabel::U0, RegionLabel::Ur, RegionLabel::Uu}) {
    if (set.contains(r)) return r;
  }
  return RegionLabel::Outside;
}

double predicted_lambda(const WeightProfile& profile, const Point2C& p) {
  const auto f = RegionFrame::from(profile);
  const auto q = orient(f, p);
  if (in_e1(f, q)) {
    return std::pow(q.abs_z, 2.0 * double(f.witness1.alpha)) *
           std::pow(q.abs_w, 2.0 * double(f.witness1.beta - 1));
  }
  if (in_e2(f, q)) return std::pow(q.abs_w, 2.0 * double(f.n - 1));
  if (in_e3(f, q)) {
    return std::pow(q.abs_z, 2.0 * double(f.witness2.alpha - 1)) *
           std::pow(q.abs_w, 2.0 * double(f.witness2.beta));
  }
  throw Error(ErrorCode::OutOfRegion, "point lies outside E1 u E2 u E3");
}

bool has_axis_degrees_at_least_two(const ExponentSet& gamma) {
  const auto m = largest_axis_z(gamma);
  const auto n = largest_axis_w(gamma);
  return m && n && *m >= 2 && *n >= 2;
}

Rational delta_ratio(const DerivedSets& derived, const Direction& d) {
  const Rational denom = max(d.u, d.v);
  if (denom <= 0) {
    throw Error(ErrorCode::Internal, "max{u,v} <= 0 on a cone ray " + to_string(d));
  }
  return lambda_exponent(derived, d) / denom;
}

namespace {

void require_delta_hypotheses(const ExponentSet& gamma, const WeightProfile& profile) {
  if (profile.decoupled) {
    throw Error(ErrorCode::PreconditionFailed, "weight is decoupled");
  }
  if (!has_axis_degrees_at_least_two(gamma)) {
    throw Error(ErrorCode::PreconditionFailed,
                "requires (m,0),(0,n) in Gamma with m,n>=2");
  }
}

// Parameters l in [0,1] where (1-l)P + lQ is orthogonal to a difference of
// two points of `a`, i.e. where the argmax of m_{u,v}(a) can change.
void collect_breakpoints(const ExponentSet& a, const Direction& p, const Direction& q,
                         std::set<Rational>& out) {
  const auto pts = a.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Rational d1(pts[i].alpha - pts[j].alpha);
      const Rational d2(pts[i].beta - pts[j].beta);
      const Rational pd = p.u * d1 + p.v * d2;
      const Rational qd = q.u * d1 + q.v * d2;
      if (pd == qd) continue;
      const Rational l = pd / (pd - qd);
      if (l >= 0 && l <= 1) out.insert(l);
    }
  }
}

}  // namespace

DeltaResult optimal_delta(const ExponentSet& gamma) {
  const auto profile = classify(gamma);
  require_delta_hypotheses(gamma, profile);
  const auto derived = derived_sets(gamma);
  if (derived.first.empty()) {
    throw Error(ErrorCode::DegenerateWeight, "Gamma^(1) is empty");
  }

  // Each cone is convex with opening < pi, so it is swept by the segment
  // between its boundary rays. On every piece between breakpoints both the
  // numerator and max{u,v} are affine in l, hence the ratio is monotone and
  // the minimum sits at a breakpoint or an endpoint.
  const std::array<std::pair<Direction, Direction>, 2> cones = {{
      {Direction(1, -profile.sigma), Direction(0, 1)},
      {Direction(-profile.tau, 1), Direction(1, 0)},
  }};

  DeltaResult result;
  bool have = false;
  for (const auto& [p, q] : cones) {
    std::set<Rational> ls{Rational(0), Rational(1)};
    collect_breakpoints(derived.first, p, q, ls);
    collect_breakpoints(derived.second, p, q, ls);
    // Kink of max{u,v} where u = v.
    const Rational pd = p.u - p.v;
    const Rational qd = q.u - q.v;
    if (pd != qd) {
      const Rational l = pd / (pd - qd);
      if (l >= 0 && l <= 1) ls.insert(l);
    }
    for (const auto& l : ls) {
      const Direction ray(p.u * (1 - l) + q.u * l, p.v * (1 - l) + q.v * l);
      const Rational r = delta_ratio(derived, ray);
      result.critical_rays.push_back(ray);
      if (!have || r < result.delta) {
        result.delta = r;
        result.minimizing_ray = ray;
        have = true;
      }
    }
  }
  return result;
}

Rational sufficient_delta(const ExponentSet& gamma) {
  const auto profile = classify(gamma);
  require_delta_hypotheses(gamma, profile);
  const std::int64_t m = *largest_axis_z(gamma);
  const std::int64_t n = *largest_axis_w(gamma);
  Rational d(1);
  for (const Rational& c : {profile.sigma, profile.tau, Rational(n - 1), Rational(m - 1),
                            Rational(n * (m - 1), m), Rational(m * (n - 1), n),
                            Rational(std::min(m, n) - 1)}) {
    d = min(d, c);
  }
  return d;
}

double CoercivityMultiplier::shape(double abs_z, double abs_w) const {
  return 1.0 + std::pow(abs_z, to_double(exponent_z)) +
         std::pow(abs_w, to_double(exponent_w));
}

CoercivityMultiplier coercivity_multiplier(const ExponentSet& gamma) {
  const auto profile = classify(gamma);
  if (profile.decoupled) {
    throw Error(ErrorCode::Unsupported,
                "decoupled weight: no diverging multiplier is available");
  }
  CoercivityMultiplier mu;
  if (profile.homogeneous) {
    mu.exponent_z = profile.sigma;
    mu.exponent_w = profile.tau;
    mu.source = CoercivityMultiplier::Source::Homogeneous;
    return mu;
  }
  if (has_axis_degrees_at_least_two(gamma)) {
    const auto delta = optimal_delta(gamma).delta;
    mu.exponent_z = delta;
    mu.exponent_w = delta;
    mu.source = CoercivityMultiplier::Source::DeltaBound;
    return mu;
  }
  throw Error(ErrorCode::Unsupported,
              "weight is neither homogeneous nor has (m,0),(0,n) with m,n>=2");
}

std::string_view to_string(SpectrumDecision::Kind kind) {
  switch (kind) {
    case SpectrumDecision::Kind::Discrete: return "Discrete";
    case SpectrumDecision::Kind::NotDiscrete: return "NotDiscrete";
    case SpectrumDecision::Kind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

SpectrumDecision spectrum_decision(const ExponentSet& gamma) {
  if (gamma.empty()) {
    return {SpectrumDecision::Kind::Inconclusive, "empty exponent set"};
  }
  if (!has_axis_degrees_at_least_two(gamma)) {
    const auto m = largest_axis_z(gamma);
    const auto n = largest_axis_w(gamma);
    std::string reason = "requires m,n>=2 with (m,0),(0,n) in Gamma; found ";
    reason += m ? "m=" + std::to_string(*m) : std::string("no (m,0)");
    reason += ", ";
    reason += n ? "n=" + std::to_string(*n) : std::string("no (0,n)");
    return {SpectrumDecision::Kind::Inconclusive, reason};
  }
  const auto profile = classify(gamma);
  if (profile.decoupled) {
    return {SpectrumDecision::Kind::NotDiscrete,
            "decoupled weight"};
  }
  return {SpectrumDecision::Kind::Discrete,
          "non-decoupled weight with m,n>=2"};
}

}  // namespace kohn
