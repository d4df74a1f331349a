#pragma once

// Heaps' law V = k * N^beta, fitted by ordinary least squares of log V on log N.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpsize/errors.hpp"
#include "corpsize/growth.hpp"

namespace corpsize {

struct HeapsParams {
  double k = 1.0;
  double beta = 1.0;
  double r_squared = 1.0;
  std::size_t n_points = 0;

  /// 0 < beta < 1 is what natural-language vocabularies show.
  bool plausible() const noexcept { return beta > 0.0 && beta < 1.0; }
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

/// Unweighted least-squares line through (x, y). Inputs are centered first.
inline LinearFit least_squares_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw FitError("x and y differ in length");
  if (n < 2) throw FitError("need at least 2 points to fit a line");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx, sxy += dx * dy, syy += dy * dy;
  }
  if (sxx == 0.0) throw FitError("need at least 2 distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return f;
}

/// Fits V = k * N^beta to real-valued observations. Logarithms are taken in
/// `log_base`; the result does not depend on it beyond round-off.
inline HeapsParams fit_power_law(std::span<const double> tokens, std::span<const double> types,
                                 double log_base = std::numbers::e) {
  if (tokens.size() != types.size()) throw FitError("token and type columns differ in length");
  std::set<double> distinct;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!(tokens[i] > 0.0) || !(types[i] > 0.0))
      throw FitError("point " + std::to_string(i + 1) + " has a non-positive N or V");
    distinct.insert(tokens[i]);
  }
  if (distinct.size() < 2) throw FitError("need at least 2 points with distinct N");

  const double ln_base = std::log(log_base);
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    lx.push_back(std::log(tokens[i]) / ln_base);
    ly.push_back(std::log(types[i]) / ln_base);
  }
  const LinearFit line = least_squares_line(lx, ly);
  return {std::pow(log_base, line.intercept), line.slope, line.r_squared, tokens.size()};
}

inline HeapsParams fit_heaps(std::span<const GrowthPoint> points, double log_base = std::numbers::e) {
  std::vector<double> n, v;
  for (const auto& p : points) {
    n.push_back(static_cast<double>(p.cum_tokens));
    v.push_back(static_cast<double>(p.cum_types));
  }
  return fit_power_law(n, v, log_base);
}

inline HeapsParams fit_heaps(const GrowthSeries& series) { return fit_heaps(series.points); }

/// Unrounded k * n^beta.
inline double eval_heaps(const HeapsParams& p, double n) { return p.k * std::pow(n, p.beta); }

// --- fit JSON ------------------------------------------------------------------

/// A fit together with the series it came from.
struct FitResult {
  HeapsParams params;
  std::string ordering;  // policy name, or a user label for external series
  std::vector<std::string> corpus_ids;
  std::vector<GrowthPoint> points;
};

inline nlohmann::ordered_json to_json(const FitResult& f) {
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : f.points) pts.push_back({p.cum_tokens, p.cum_types});
  return {{"k", f.params.k},
          {"beta", f.params.beta},
          {"r_squared", f.params.r_squared},
          {"n_points", f.params.n_points},
          {"series", {{"ordering", f.ordering}, {"corpus_ids", f.corpus_ids}, {"points", std::move(pts)}}}};
}

/// Parses fit JSON. Only k and beta are required; the rest defaults.
inline FitResult fit_from_json(const nlohmann::json& j) {
  FitResult f;
  try {
    f.params.k = j.at("k").get<double>();
    f.params.beta = j.at("beta").get<double>();
    f.params.r_squared = j.value("r_squared", 1.0);
    f.params.n_points = j.value("n_points", std::size_t{0});
    if (j.contains("series")) {
      const auto& s = j["series"];
      f.ordering = s.value("ordering", std::string{});
      f.corpus_ids = s.value("corpus_ids", std::vector<std::string>{});
      if (s.contains("points"))
        for (const auto& p : s["points"])
          f.points.push_back({p.at(0).get<std::uint64_t>(), p.at(1).get<std::uint64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed fit JSON: ") + e.what());
  }
  if (!(f.params.k > 0.0) || !std::isfinite(f.params.k) || !std::isfinite(f.params.beta))
    throw ConfigError("fit JSON: k must be a positive finite number and beta finite");
  return f;
}

}  // namespace corpsize
