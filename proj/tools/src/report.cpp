#include "kohn/cli.hpp"
#include "kohn/error.hpp"
#include "kohn/rational.hpp"
#include "kohn/support_optimizer.hpp"

namespace kohn::cli {

namespace {

using nlohmann::json;

void put_rational(json& obj, const std::string& key, const Rational& q) {
  obj[key] = to_string(q);
  obj[key + "_float"] = to_double(q);
}

json exponent_json(const std::optional<Exponent>& p) {
  if (!p) return nullptr;
  return json::array({p->alpha, p->beta});
}

json error_json(const Error& e) {
  return {{"status", std::string(error_code_name(e.code()))}, {"message", e.what()}};
}

json direction_json(const Direction& d) {
  json out;
  put_rational(out, "u", d.u);
  put_rational(out, "v", d.v);
  return out;
}

json profile_json(const ExponentSet& gamma) {
  const auto profile = classify(gamma);
  json out;
  out["decoupled"] = profile.decoupled;
  if (profile.homogeneous) {
    out["homogeneous"] = {{"m", profile.homogeneous->m}, {"n", profile.homogeneous->n}};
  } else {
    out["homogeneous"] = nullptr;
  }
  put_rational(out, "sigma", profile.sigma);
  put_rational(out, "tau", profile.tau);
  if (profile.nu) {
    put_rational(out, "nu", *profile.nu);
  } else {
    out["nu"] = nullptr;
  }
  out["witness1"] = exponent_json(profile.witness1);
  out["witness2"] = exponent_json(profile.witness2);
  try {
    const auto frame = RegionFrame::from(profile);
    out["region_frame"] = {{"swapped", frame.swapped}, {"m", frame.m}, {"n", frame.n}};
    put_rational(out["region_frame"], "nu_effective", frame.nu);
  } catch (const Error& e) {
    out["region_frame"] = error_json(e);
  }
  return out;
}

json derived_json(const ExponentSet& gamma) {
  const auto d = derived_sets(gamma);
  return {{"right", gamma_json(d.right)},
          {"upper", gamma_json(d.upper)},
          {"first", gamma_json(d.first)},
          {"second", gamma_json(d.second)}};
}

json multiplier_json(const ExponentSet& gamma) {
  try {
    const auto mu = coercivity_multiplier(gamma);
    json out{{"status", "ok"}};
    put_rational(out, "exponent_z", mu.exponent_z);
    put_rational(out, "exponent_w", mu.exponent_w);
    out["source"] = mu.source == CoercivityMultiplier::Source::Homogeneous ? "homogeneous"
                                                                           : "delta_bound";
    out["constant_hint"] = nullptr;
    return out;
  } catch (const Error& e) {
    return error_json(e);
  }
}

json delta_json(const ExponentSet& gamma) {
  try {
    const auto res = optimal_delta(gamma);
    json out{{"status", "ok"}};
    put_rational(out, "delta", res.delta);
    out["minimizing_ray"] = direction_json(res.minimizing_ray);
    out["critical_ray_count"] = res.critical_rays.size();
    put_rational(out, "sufficient_bound", sufficient_delta(gamma));
    return out;
  } catch (const Error& e) {
    return error_json(e);
  }
}

}  // namespace

json analysis_report(const ExponentSet& gamma, const RunConfig& config) {
  json report;
  report["schema"] = kSchema;
  report["tool_version"] = kVersion;
  report["config"] = {{"tol", config.tol}, {"threads", config.threads}, {"seed", config.seed}};
  report["gamma"] = gamma_json(gamma);
  report["profile"] = profile_json(gamma);
  report["derived_sets"] = derived_json(gamma);
  report["coercivity_multiplier"] = multiplier_json(gamma);
  const auto decision = spectrum_decision(gamma);
  report["spectrum"] = {{"decision", std::string(to_string(decision.kind))},
                        {"reason", decision.reason}};
  report["delta"] = delta_json(gamma);
  report["verification"] = json::array();
  return report;
}

}  // namespace kohn::cli
