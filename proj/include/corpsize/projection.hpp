#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "corpsize/errors.hpp"
#include "corpsize/heaps.hpp"

namespace corpsize {

/// Token-count grid start, start+step, ..., end.
struct ProjectionGrid {
  std::uint64_t start = 1'000'000;
  std::uint64_t end = 102'000'000;
  std::uint64_t step = 1'000'000;

  void validate() const {
    if (step < 1) throw ConfigError("grid step must be >= 1");
    if (start < step) throw ConfigError("grid start must be >= grid step");
    if (end < start) throw ConfigError("grid end must be >= grid start");
    if ((end - start) % step != 0) throw ConfigError("grid end - start must be a multiple of step");
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>((end - start) / step + 1); }
};

/// Half-up rounding to `decimals` places.
inline double round_half_up(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(x * scale + 0.5) / scale;
}

struct ProjectionRow {
  std::uint64_t n = 0;
  double v_real = 0.0;
  std::uint64_t v_rounded = 0;
  double ttr = 0.0;
  double ttr_display = 0.0;
  /// Previous ttr minus this ttr; absent on the first row.
  std::optional<double> delta_ttr;
  std::optional<double> delta_display;
};

inline std::vector<ProjectionRow> project(const HeapsParams& params, const ProjectionGrid& grid) {
  grid.validate();
  std::vector<ProjectionRow> rows;
  rows.reserve(grid.size());
  for (std::uint64_t n = grid.start; n <= grid.end; n += grid.step) {
    ProjectionRow r;
    r.n = n;
    r.v_real = eval_heaps(params, static_cast<double>(n));
    r.v_rounded = static_cast<std::uint64_t>(std::floor(r.v_real + 0.5));
    r.ttr = r.v_real / static_cast<double>(n);
    r.ttr_display = round_half_up(r.ttr, 4);
    if (!rows.empty()) {
      r.delta_ttr = rows.back().ttr - r.ttr;
      r.delta_display = round_half_up(std::fabs(*r.delta_ttr), 4);
    }
    rows.push_back(r);
    if (grid.end - n < grid.step) break;
  }
  return rows;
}

enum class RecommendMode {
  paper_compat,  // 4-decimal rounded change <= threshold
  exact          // raw change < threshold
};

inline std::string_view to_string(RecommendMode m) noexcept {
  return m == RecommendMode::exact ? "exact" : "paper-compat";
}

struct Recommendation {
  std::uint64_t n_recommended = 0;
  double threshold = 1e-4;
  RecommendMode mode = RecommendMode::paper_compat;
  HeapsParams params_used;
};

/// First grid point whose TTR change satisfies the threshold rule. Throws
/// NoQualifyingPointError when none does.
inline Recommendation recommend_size(std::span<const ProjectionRow> rows, double threshold,
                                     RecommendMode mode, const HeapsParams& params = {}) {
  if (rows.size() < 2) throw ConfigError("need at least 2 projection rows to measure TTR change");
  for (const auto& r : rows) {
    if (!r.delta_ttr) continue;
    const bool fires = mode == RecommendMode::paper_compat ? *r.delta_display <= threshold
                                                           : *r.delta_ttr < threshold;
    if (fires) return {r.n, threshold, mode, params};
  }
  throw NoQualifyingPointError(fmt::format(
      "no grid point up to {} tokens has a TTR change {} {} ({} mode); raise the grid end",
      rows.back().n, mode == RecommendMode::paper_compat ? "<=" : "<", threshold, to_string(mode)));
}

// --- output formats ------------------------------------------------------------

inline constexpr std::string_view kProjectionCsvHeader =
    "tokens,type_estimate,ttr,ttr_display,ttr_change,ttr_change_display";

/// Full-precision values use the shortest round-trip representation; the
/// display columns are the 4-decimal half-up values.
inline void write_projection_csv(std::ostream& out, std::span<const ProjectionRow> rows) {
  out << kProjectionCsvHeader << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{:.4f},", r.n, r.v_rounded, r.ttr, r.ttr_display);
    if (r.delta_ttr) out << fmt::format("{},{:.4f}", *r.delta_ttr, *r.delta_display);
    else out << ',';
    out << '\n';
  }
}

inline nlohmann::ordered_json to_json(const Recommendation& r) {
  return {{"n_recommended", r.n_recommended},
          {"threshold", r.threshold},
          {"mode", to_string(r.mode)},
          {"k", r.params_used.k},
          {"beta", r.params_used.beta}};
}

}  // namespace corpsize
