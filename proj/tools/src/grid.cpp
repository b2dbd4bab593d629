#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "kohn/admissibility.hpp"
#include "kohn/cli.hpp"
#include "kohn/error.hpp"
#include "kohn/parallel.hpp"
#include "kohn/support_optimizer.hpp"
#include "kohn/weight_evaluator.hpp"

namespace kohn::cli {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double coord(double lo, double hi, int i, int res) {
  return res == 1 ? lo : lo + (hi - lo) * double(i) / double(res - 1);
}

}  // namespace

void write_grid(const ExponentSet& gamma, const GridRequest& req, std::ostream& out) {
  if (req.resolution < 1 || req.resolution > kMaxResolution) {
    throw Error(ErrorCode::InvalidArgument,
                "resolution must be in [1, " + std::to_string(kMaxResolution) + "]");
  }
  if (!(req.x0 >= 0.0) || !(req.y0 >= 0.0) || !(req.x1 >= req.x0) || !(req.y1 >= req.y0)) {
    throw Error(ErrorCode::InvalidArgument, "bounds must satisfy 0 <= x0 <= x1, 0 <= y0 <= y1");
  }
  const MonomialWeight weight(gamma);
  const auto profile = classify(gamma);

  std::function<std::string(double, double)> cell;
  if (req.what == "lambda") {
    cell = [&](double x, double y) { return num(weight.lambda_min_radial(x, y)); };
  } else if (req.what == "lambda_approx") {
    cell = [&](double x, double y) {
      const auto v = weight.lambda_approx(Point2C::radial(x, y));
      return num(v ? *v : std::nan(""));
    };
  } else if (req.what == "region") {
    cell = [&](double x, double y) {
      return std::string(region_name(classify_region(profile, Point2C::radial(x, y))));
    };
  } else if (req.what == "rho") {
    cell = [&](double x, double y) {
      try {
        return num(rho_by_definition(gamma, Point2C::radial(x, y), 1e-10, 128));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotAdmissible) throw;
        return std::string("nan");
      }
    };
  } else {
    throw Error(ErrorCode::Unsupported,
                "unsupported grid quantity '" + req.what +
                    "' (lambda, lambda_approx, region, rho)");
  }

  const int res = req.resolution;
  std::vector<std::string> rows(static_cast<std::size_t>(res));
  parallel_for(rows.size(), req.threads, [&](std::size_t j) {
    const double y = coord(req.y0, req.y1, int(j), res);
    std::string block;
    for (int i = 0; i < res; ++i) {
      const double x = coord(req.x0, req.x1, i, res);
      block += num(x) + "," + num(y) + "," + cell(x, y) + "\n";
    }
    rows[j] = std::move(block);
  });

  out << "# meta: gamma=" << serialize_gamma(gamma) << "\n";
  out << "# meta: what=" << req.what << "\n";
  out << "# meta: bounds=" << num(req.x0) << "," << num(req.x1) << "," << num(req.y0) << ","
      << num(req.y1) << "\n";
  out << "# meta: resolution=" << res << "\n";
  if (req.what == "rho") out << "# meta: rho values are sampled-sup estimates\n";
  out << "x,y,value\n";
  for (const auto& r : rows) out << r;
}

}  // namespace kohn::cli
