#include "kohn/exponent_set.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kohn/error.hpp"

namespace kohn {

std::string to_string(const Exponent& p) {
  return "(" + std::to_string(p.alpha) + "," + std::to_string(p.beta) + ")";
}

ExponentSet::ExponentSet(std::vector<Exponent> points) : points_(std::move(points)) {
  for (const auto& p : points_) {
    if (p.alpha < 0 || p.beta < 0) {
      throw Error(ErrorCode::NegativeExponent,
                  "negative exponent " + to_string(p));
    }
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool ExponentSet::contains(const Exponent& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

std::string to_string(const ExponentSet& gamma) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& p : gamma) {
    if (!first) os << ',';
    os << to_string(p);
    first = false;
  }
  os << '}';
  return os.str();
}

DerivedSets derived_sets(const ExponentSet& gamma) {
  std::vector<Exponent> right, upper, first, second;
  for (const auto& p : gamma) {
    if (p.alpha != 0) {
      right.push_back(p);
      second.push_back({p.alpha - 1, p.beta});
    }
    if (p.beta != 0) {
      upper.push_back(p);
      second.push_back({p.alpha, p.beta - 1});
    }
  }
  const auto pts = gamma.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (linearly_independent(pts[i], pts[j])) {
        // Independence forces alpha+gamma >= 1 and beta+delta >= 1.
        first.push_back({pts[i].alpha + pts[j].alpha - 1,
                         pts[i].beta + pts[j].beta - 1});
      }
    }
  }
  return {ExponentSet(std::move(right)), ExponentSet(std::move(upper)),
          ExponentSet(std::move(first)), ExponentSet(std::move(second))};
}

ExponentSet independent_of(const ExponentSet& gamma, const Exponent& pivot) {
  std::vector<Exponent> out;
  for (const auto& p : gamma) {
    if (linearly_independent(p, pivot)) out.push_back(p);
  }
  return ExponentSet(std::move(out));
}

std::optional<std::int64_t> largest_axis_z(const ExponentSet& gamma) {
  std::optional<std::int64_t> m;
  for (const auto& p : gamma) {
    if (p.beta == 0 && p.alpha > 0) m = std::max(m.value_or(0), p.alpha);
  }
  return m;
}

std::optional<std::int64_t> largest_axis_w(const ExponentSet& gamma) {
  std::optional<std::int64_t> n;
  for (const auto& p : gamma) {
    if (p.alpha == 0 && p.beta > 0) n = std::max(n.value_or(0), p.beta);
  }
  return n;
}

namespace {

std::optional<HomogeneousDegrees> detect_homogeneous(const ExponentSet& gamma) {
  std::vector<std::int64_t> ms, ns;
  for (const auto& p : gamma) {
    if (p.beta == 0 && p.alpha > 0) ms.push_back(p.alpha);
    if (p.alpha == 0 && p.beta > 0) ns.push_back(p.beta);
  }
  // Two points on the same axis can never share the segment.
  if (ms.size() != 1 || ns.size() != 1) return std::nullopt;
  const std::int64_t m = ms.front();
  const std::int64_t n = ns.front();
  for (const auto& p : gamma) {
    if (n * p.alpha + m * p.beta != n * m) return std::nullopt;
  }
  return HomogeneousDegrees{m, n};
}

}  // namespace

WeightProfile classify(const ExponentSet& gamma) {
  if (gamma.empty()) {
    throw Error(ErrorCode::EmptySet, "classify requires a nonempty exponent set");
  }
  WeightProfile profile;
  profile.homogeneous = detect_homogeneous(gamma);

  // Points are visited in lexicographic order, so strict comparison keeps
  // the smallest point among ties.
  for (const auto& p : gamma) {
    if (p.alpha == 0 || p.beta == 0) continue;
    const Rational slope_z(p.alpha, p.beta);
    const Rational slope_w(p.beta, p.alpha);
    if (!profile.witness1 || slope_z > profile.sigma) {
      profile.sigma = slope_z;
      profile.witness1 = p;
    }
    if (!profile.witness2 || slope_w > profile.tau) {
      profile.tau = slope_w;
      profile.witness2 = p;
    }
  }
  profile.decoupled = !profile.witness1.has_value();

  if (profile.homogeneous && !profile.decoupled) {
    const auto& w2 = *profile.witness2;
    if (w2.alpha != 1) {
      profile.nu = Rational(profile.homogeneous->n - 1 - w2.beta, w2.alpha - 1);
    }
  }
  return profile;
}

}  // namespace kohn
