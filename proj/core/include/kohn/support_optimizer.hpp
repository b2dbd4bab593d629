#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kohn/exponent_set.hpp"
#include "kohn/rational.hpp"
#include "kohn/weight_evaluator.hpp"

namespace kohn {

// Direction (u, v) of the curve t -> (t^u, t^v) in (|z|^2, |w|^2) space.
struct Direction {
  Rational u{0};
  Rational v{0};

  Direction() = default;
  // Throws Error(InvalidArgument) for (0, 0).
  Direction(Rational u_, Rational v_);

  Direction scaled(const Rational& s) const { return {u * s, v * s}; }
  friend bool operator==(const Direction&, const Direction&) = default;
};

std::string to_string(const Direction& d);

struct SupportMax {
  Rational value{0};
  std::vector<Exponent> argmax;
};

// max of u*alpha + v*beta over a; throws Error(EmptySet) when a is empty.
SupportMax support_max(const ExponentSet& a, const Direction& d);

// m_{u,v}(Gamma^(1)) - m_{u,v}(Gamma^(2)); Error(DegenerateWeight) if Gamma^(1) is empty.
Rational lambda_exponent(const ExponentSet& gamma, const Direction& d);
Rational lambda_exponent(const DerivedSets& derived, const Direction& d);

enum class RegionLabel { E1, E2, E3, E, U0, Ur, Uu, Outside };

std::string_view region_name(RegionLabel label);
// Accepts the names produced by region_name. Throws Error(InvalidArgument).
RegionLabel parse_region(std::string_view name);

// Bit set of regions containing a point (regions overlap).
class RegionSet {
 public:
  void insert(RegionLabel r) { bits_ |= bit(r); }
  bool contains(RegionLabel r) const { return (bits_ & bit(r)) != 0; }
  bool empty() const { return bits_ == 0; }

 private:
  static unsigned bit(RegionLabel r) { return 1u << static_cast<unsigned>(r); }
  unsigned bits_ = 0;
};

// Homogeneous profile seen in coordinates where m >= n; when the original
// has m < n the roles of z and w are exchanged and `swapped` is set.
struct RegionFrame {
  bool swapped = false;
  std::int64_t m = 0;
  std::int64_t n = 0;
  Exponent witness1;  // oriented (alpha1, beta1)
  Exponent witness2;  // oriented (alpha2, beta2)
  Rational nu{0};     // n/m when alpha2 = 1

  // Throws Error(PreconditionFailed) unless homogeneous and non-decoupled.
  static RegionFrame from(const WeightProfile& profile);
};

// Membership in E, U0, Ur, Uu (always) and E1, E2, E3 (homogeneous,
// non-decoupled profiles only).
RegionSet region_membership(const WeightProfile& profile, const Point2C& p);

// First match in the order E1, E2, E3, E, U0, Ur, Uu; Outside otherwise.
RegionLabel classify_region(const WeightProfile& profile, const Point2C& p);

// Region-appropriate monomial predicted for lambda on E1 u E2 u E3.
// Throws Error(OutOfRegion) elsewhere, Error(PreconditionFailed) for
// profiles that are not homogeneous and non-decoupled.
double predicted_lambda(const WeightProfile& profile, const Point2C& p);

struct DeltaResult {
  Rational delta{0};
  Direction minimizing_ray;
  // Every ray at which the minimized ratio was evaluated.
  std::vector<Direction> critical_rays;
};

// (m_{u,v}(Gamma^(1)) - m_{u,v}(Gamma^(2))) / max{u, v} for the cone ray d.
Rational delta_ratio(const DerivedSets& derived, const Direction& d);

// Largest delta with lambda_exponent >= delta * max{u,v} on both cones
// {u >= 0, v >= -sigma u} and {v >= 0, u >= -tau v}, exact.
// Error(PreconditionFailed) unless non-decoupled with (m,0),(0,n), m,n >= 2.
DeltaResult optimal_delta(const ExponentSet& gamma);

// The sufficient choice from the case analysis:
// min{1, sigma, tau, n-1, m-1, n(m-1)/m, m(n-1)/n, min{m,n}-1}.
Rational sufficient_delta(const ExponentSet& gamma);

// True when (m,0), (0,n) lie in gamma for some m, n >= 2.
bool has_axis_degrees_at_least_two(const ExponentSet& gamma);

struct CoercivityMultiplier {
  enum class Source { Homogeneous, DeltaBound };

  Rational exponent_z{0};
  Rational exponent_w{0};
  std::optional<double> constant_hint;
  Source source = Source::Homogeneous;

  // mu(z, w) / c = 1 + |z|^a + |w|^b with 0^0 = 1.
  double shape(double abs_z, double abs_w) const;
};

CoercivityMultiplier coercivity_multiplier(const ExponentSet& gamma);

struct SpectrumDecision {
  enum class Kind { Discrete, NotDiscrete, Inconclusive };

  Kind kind = Kind::Inconclusive;
  std::string reason;
};

std::string_view to_string(SpectrumDecision::Kind kind);

SpectrumDecision spectrum_decision(const ExponentSet& gamma);

}  // namespace kohn
