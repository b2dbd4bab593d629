#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kohn/rational.hpp"

namespace kohn {

// A lattice point (alpha, beta) of N^2: the monomial z^alpha w^beta.
struct Exponent {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;

  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

// Exact 2x2 determinant alpha*delta - beta*gamma.
constexpr std::int64_t cross(const Exponent& p, const Exponent& q) {
  return p.alpha * q.beta - p.beta * q.alpha;
}

constexpr bool linearly_independent(const Exponent& p, const Exponent& q) {
  return cross(p, q) != 0;
}

std::string to_string(const Exponent& p);

// Finite subset of N^2, stored sorted and duplicate free.
class ExponentSet {
 public:
  ExponentSet() = default;
  // Sorts and removes duplicates. Throws Error(NegativeExponent).
  explicit ExponentSet(std::vector<Exponent> points);
  ExponentSet(std::initializer_list<Exponent> points)
      : ExponentSet(std::vector<Exponent>(points)) {}

  std::span<const Exponent> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const Exponent& p) const;

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const ExponentSet&, const ExponentSet&) = default;

 private:
  std::vector<Exponent> points_;
};

std::string to_string(const ExponentSet& gamma);

struct DerivedSets {
  ExponentSet right;   // alpha != 0
  ExponentSet upper;   // beta != 0
  ExponentSet first;   // independent pair sums minus (1,1); det H ~ phi_first
  ExponentSet second;  // [right - (1,0)] u [upper - (0,1)]; tr H ~ phi_second
};

DerivedSets derived_sets(const ExponentSet& gamma);

// Points of gamma that are not multiples of `pivot` (det != 0).
ExponentSet independent_of(const ExponentSet& gamma, const Exponent& pivot);

struct HomogeneousDegrees {
  std::int64_t m = 0;  // (m,0) in gamma
  std::int64_t n = 0;  // (0,n) in gamma

  friend bool operator==(const HomogeneousDegrees&, const HomogeneousDegrees&) = default;
};

struct WeightProfile {
  bool decoupled = true;
  std::optional<HomogeneousDegrees> homogeneous;
  Rational sigma{0};
  Rational tau{0};
  // (n-1-beta2)/(alpha2-1); absent unless homogeneous, non-decoupled and alpha2 != 1.
  std::optional<Rational> nu;
  std::optional<Exponent> witness1;  // alpha1 = sigma * beta1
  std::optional<Exponent> witness2;  // beta2 = tau * alpha2
};

// Requires a nonempty set. Ties between witnesses resolve to the
// lexicographically smallest point.
WeightProfile classify(const ExponentSet& gamma);

// Largest m with (m,0) in gamma and largest n with (0,n) in gamma, if any
// (the zero point is not counted as an axis point).
std::optional<std::int64_t> largest_axis_z(const ExponentSet& gamma);
std::optional<std::int64_t> largest_axis_w(const ExponentSet& gamma);

}  // namespace kohn
