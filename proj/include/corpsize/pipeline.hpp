#pragma once

// End-to-end runs: ingest -> tokenize -> sample -> growth -> fit -> project.
// Each cmd_* function backs one CLI subcommand and writes its artifacts to disk.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "corpsize/documents.hpp"
#include "corpsize/errors.hpp"
#include "corpsize/growth.hpp"
#include "corpsize/heaps.hpp"
#include "corpsize/manifest.hpp"
#include "corpsize/projection.hpp"
#include "corpsize/rng.hpp"
#include "corpsize/sampler.hpp"
#include "corpsize/svg_chart.hpp"
#include "corpsize/tokenizer.hpp"

namespace corpsize {

struct RunConfig {
  fs::path manifest;
  std::uint64_t seed = 1;
  /// Unset: the smallest domain's raw token count.
  std::optional<std::uint64_t> target_tokens;
  SampleUnit unit = SampleUnit::sentence;
  std::vector<OrderPolicy> orderings{OrderPolicy::types_desc};
  std::map<std::size_t, std::string> pins;
  ProjectionGrid grid;
  double threshold = 1e-4;
  RecommendMode mode = RecommendMode::paper_compat;
  fs::path out_dir = "out";
  bool emit_svg = false;
  TokenRules rules;
};

/// Process exit status for a failure.
inline int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const NoQualifyingPointError*>(&e)) return 4;
  if (dynamic_cast<const IngestError*>(&e)) return 3;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InsufficientTokensError*>(&e)) return 2;
  if (dynamic_cast<const FitError*>(&e)) return 5;
  return 1;
}

/// Runs `fn`, prefixing any library error with the stage name while keeping
/// its exit-code category.
template <typename F>
auto run_stage(std::string_view stage, F&& fn) -> decltype(fn()) {
  auto msg = [&](const std::exception& e) { return fmt::format("stage '{}' failed: {}", stage, e.what()); };
  try {
    return fn();
  } catch (const NoQualifyingPointError& e) {
    throw NoQualifyingPointError(msg(e));
  } catch (const IngestError& e) {
    throw IngestError(msg(e));
  } catch (const ConfigError& e) {
    throw ConfigError(msg(e));
  } catch (const InsufficientTokensError& e) {
    throw ConfigError(msg(e));
  } catch (const FitError& e) {
    throw FitError(msg(e));
  } catch (const Error& e) {
    throw Error(msg(e));
  }
}

// --- per-domain statistics -------------------------------------------------------

struct DomainStats {
  DomainSpec spec;
  SubCorpus raw;
  SubCorpus sampled;
};

/// The sample size: the configured target, else the smallest raw domain.
inline std::uint64_t resolve_target(const RunConfig& config, const std::vector<DomainStats>& stats) {
  if (config.target_tokens) return *config.target_tokens;
  std::uint64_t target = 0;
  for (const auto& s : stats)
    if (target == 0 || s.raw.inventory.token_total() < target) target = s.raw.inventory.token_total();
  return target;
}

/// Tokenized units of one domain, documents in sorted-path order.
inline std::vector<TokenSequence> load_domain_units(const CorpusManifest& manifest, const DomainSpec& domain,
                                                    SampleUnit unit, const TokenRules& rules) {
  const UnitMode mode = unit == SampleUnit::sentence ? UnitMode::sentence : UnitMode::line;
  std::vector<TokenSequence> units;
  for (const auto& doc : read_documents(manifest, domain.id, mode))
    for (const auto& u : doc.units) units.push_back(tokenize(u, rules));
  return units;
}

/// Ingests every domain concurrently and samples each to the common target
/// with seed derive_seed(config.seed, id).
inline std::vector<DomainStats> collect_stats(const RunConfig& config, const CorpusManifest& manifest) {
  std::vector<std::future<std::vector<TokenSequence>>> jobs;
  for (const auto& d : manifest.domains)
    jobs.push_back(std::async(std::launch::async, [&manifest, &config, &d] {
      return load_domain_units(manifest, d, config.unit, config.rules);
    }));
  std::vector<std::vector<TokenSequence>> units;
  for (auto& j : jobs) units.push_back(j.get());

  std::vector<DomainStats> stats;
  for (std::size_t i = 0; i < manifest.domains.size(); ++i) {
    const auto& d = manifest.domains[i];
    SubCorpus raw = whole_corpus(d.id, units[i]);
    if (raw.inventory.token_total() == 0) throw IngestError("domain " + d.id + " contains no tokens");
    stats.push_back({d, std::move(raw), {}});
  }

  const std::uint64_t target = resolve_target(config, stats);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    auto& s = stats[i];
    const SampleSpec spec{target, config.unit, derive_seed(config.seed, s.spec.id)};
    try {
      s.sampled = downsample(units[i], spec, s.spec.id);
    } catch (const InsufficientTokensError& e) {
      throw ConfigError("domain " + s.spec.id + ": " + e.what());
    }
  }
  return stats;
}

inline void write_stats_csv(std::ostream& out, const std::vector<DomainStats>& stats) {
  out << "domain_id,label,register,raw_tokens,raw_types,sampled_tokens,sampled_types\n";
  TypeInventory raw_all, sampled_all;
  for (const auto& s : stats) {
    out << csv::join({s.spec.id, s.spec.label, std::string(to_string(s.spec.reg)),
                      std::to_string(s.raw.inventory.token_total()), std::to_string(s.raw.inventory.type_total()),
                      std::to_string(s.sampled.inventory.token_total()),
                      std::to_string(s.sampled.inventory.type_total())})
        << '\n';
    raw_all.merge(s.raw.inventory);
    sampled_all.merge(s.sampled.inventory);
  }
  out << fmt::format("ALL,,,{},{},{},{}\n", raw_all.token_total(), raw_all.type_total(),
                     sampled_all.token_total(), sampled_all.type_total());
}

inline void print_stats_table(std::ostream& out, const std::vector<DomainStats>& stats) {
  out << fmt::format("{:<10} {:>12} {:>10} {:>14} {:>13}\n", "domain", "raw_tokens", "raw_types",
                     "sampled_tokens", "sampled_types");
  for (const auto& s : stats)
    out << fmt::format("{:<10} {:>12} {:>10} {:>14} {:>13}\n", s.spec.id, s.raw.inventory.token_total(),
                       s.raw.inventory.type_total(), s.sampled.inventory.token_total(),
                       s.sampled.inventory.type_total());
}

// --- growth / fit ------------------------------------------------------------------

inline Ordering make_ordering(OrderPolicy policy, std::span<const SubCorpus> corpora, const RunConfig& config) {
  switch (policy) {
    case OrderPolicy::types_desc: return order_by_types_desc(corpora);
    case OrderPolicy::manifest: return order_manifest(corpora);
    case OrderPolicy::pinned_shuffle: return order_pinned_shuffle(corpora, config.pins, config.seed);
  }
  return order_manifest(corpora);
}

inline std::vector<SubCorpus> sampled_corpora(const std::vector<DomainStats>& stats) {
  std::vector<SubCorpus> v;
  for (const auto& s : stats) v.push_back(s.sampled);
  return v;
}

inline FitResult fit_series(const GrowthSeries& series, std::string label) {
  return {fit_heaps(series), std::move(label), series.ordering.permutation, series.points};
}

// --- artifacts -----------------------------------------------------------------------

namespace detail {

inline void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  if (!out) throw ConfigError("failed writing " + path.string());
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace detail

/// One fitted function projected over the grid.
struct ProjectionRun {
  std::string name;
  FitResult fit;
  std::vector<ProjectionRow> rows;
};

inline std::vector<svg::LineChart> make_charts(const std::vector<ProjectionRun>& runs) {
  svg::LineChart growth{"Cumulative types by cumulative tokens", "tokens (N)", "types (V)", {}, true};
  svg::LineChart types{"Estimated types", "tokens (N)", "estimated types (V)", {}};
  svg::LineChart ttr{"Estimated TTR", "tokens (N)", "TTR", {}};
  svg::LineChart delta{"Estimated TTR change", "tokens (N)", "TTR change", {}};
  for (const auto& r : runs) {
    svg::Series g{r.name, {}}, v{r.name, {}}, t{r.name, {}}, d{r.name, {}};
    for (const auto& p : r.fit.points)
      g.points.emplace_back(static_cast<double>(p.cum_tokens), static_cast<double>(p.cum_types));
    for (const auto& row : r.rows) {
      const auto n = static_cast<double>(row.n);
      v.points.emplace_back(n, row.v_real);
      t.points.emplace_back(n, row.ttr);
      if (row.delta_ttr) d.points.emplace_back(n, *row.delta_ttr);
    }
    if (!g.points.empty()) growth.series.push_back(std::move(g));
    types.series.push_back(std::move(v));
    ttr.series.push_back(std::move(t));
    delta.series.push_back(std::move(d));
  }
  std::vector<svg::LineChart> charts;
  if (!growth.series.empty()) charts.push_back(std::move(growth));
  charts.push_back(std::move(types));
  charts.push_back(std::move(ttr));
  charts.push_back(std::move(delta));
  return charts;
}

inline const char* chart_file(const svg::LineChart& c) {
  if (c.title.starts_with("Cumulative")) return "fig_growth.svg";
  if (c.title == "Estimated types") return "fig_types.svg";
  if (c.title == "Estimated TTR") return "fig_ttr.svg";
  return "fig_ttr_change.svg";
}

/// Writes projection CSVs, recommendations and (optionally) charts for each run.
/// Returns the written file names relative to `out_dir`. If some run has no
/// qualifying grid point, everything else is still written and then
/// NoQualifyingPointError is thrown.
inline std::vector<std::string> write_projection_artifacts(const fs::path& out_dir, std::vector<ProjectionRun>& runs,
                                                           const RunConfig& config,
                                                           std::vector<Recommendation>& recs) {
  std::vector<std::string> written;
  std::optional<NoQualifyingPointError> failure;
  for (auto& r : runs) {
    r.rows = project(r.fit.params, config.grid);
    std::ostringstream csv;
    write_projection_csv(csv, r.rows);
    const std::string csv_name = "projection_" + r.name + ".csv";
    detail::write_file(out_dir / csv_name, csv.str());
    written.push_back(csv_name);
    try {
      recs.push_back(recommend_size(r.rows, config.threshold, config.mode, r.fit.params));
      const std::string rec_name = "recommendation_" + r.name + ".json";
      detail::write_file(out_dir / rec_name, to_json(recs.back()).dump(2) + "\n");
      written.push_back(rec_name);
    } catch (const NoQualifyingPointError& e) {
      if (!failure) failure.emplace(r.name + ": " + e.what());
    }
  }
  if (config.emit_svg) {
    for (const auto& chart : make_charts(runs)) {
      detail::write_file(out_dir / chart_file(chart), svg::render(chart));
      written.push_back(chart_file(chart));
    }
  }
  if (failure) throw *failure;
  return written;
}

// --- subcommands ---------------------------------------------------------------------

inline std::vector<DomainStats> cmd_stats(const RunConfig& config, std::ostream& log) {
  const CorpusManifest manifest = load_manifest(config.manifest);
  auto stats = collect_stats(config, manifest);
  std::ostringstream csv;
  write_stats_csv(csv, stats);
  detail::write_file(config.out_dir / "stats.csv", csv.str());
  print_stats_table(log, stats);
  return stats;
}

inline std::vector<GrowthSeries> cmd_growth(const RunConfig& config, std::ostream& log) {
  const CorpusManifest manifest = load_manifest(config.manifest);
  const auto corpora = sampled_corpora(collect_stats(config, manifest));
  std::vector<GrowthSeries> all;
  for (OrderPolicy p : config.orderings) {
    auto series = cumulative_series(corpora, make_ordering(p, corpora, config));
    std::ostringstream csv;
    write_growth_csv(csv, series);
    const auto name = fmt::format("growth_{}.csv", to_string(p));
    detail::write_file(config.out_dir / name, csv.str());
    log << fmt::format("{}: {} points, final N={} V={}\n", name, series.points.size(),
                       series.points.back().cum_tokens, series.points.back().cum_types);
    all.push_back(std::move(series));
  }
  return all;
}

/// Fits a growth CSV. Writes JSON to `out` when non-empty, else to `log`.
inline FitResult cmd_fit(const fs::path& growth_csv, std::string label, const fs::path& out, std::ostream& log,
                         std::ostream& warn) {
  std::ifstream in(growth_csv, std::ios::binary);
  if (!in) throw ConfigError("cannot open growth CSV " + growth_csv.string());
  const GrowthSeries series = read_growth_csv(in);
  FitResult fit = fit_series(series, std::move(label));
  if (!fit.params.plausible())
    warn << fmt::format("warning: fitted beta {} is outside (0, 1)\n", fit.params.beta);
  const std::string json = to_json(fit).dump(2) + "\n";
  if (out.empty())
    log << json;
  else
    detail::write_file(out, json);
  return fit;
}

inline FitResult load_fit(const fs::path& path) {
  const std::string text = detail::read_file(path);
  try {
    return fit_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

/// Run name for a fit file: its stem without a leading "fit_".
inline std::string run_name(const fs::path& fit_json) {
  std::string stem = fit_json.stem().string();
  if (stem.starts_with("fit_") && stem.size() > 4) stem.erase(0, 4);
  return stem;
}

inline std::vector<Recommendation> cmd_project(const std::vector<fs::path>& fit_files, const RunConfig& config,
                                               std::ostream& log) {
  if (fit_files.empty()) throw ConfigError("no fit JSON given");
  config.grid.validate();
  std::vector<ProjectionRun> runs;
  for (const auto& f : fit_files) runs.push_back({run_name(f), load_fit(f), {}});
  std::vector<Recommendation> recs;
  write_projection_artifacts(config.out_dir, runs, config, recs);
  for (std::size_t i = 0; i < recs.size(); ++i)
    log << fmt::format("{}: V = {} * N^{}  ->  appropriate size {} tokens ({} mode, threshold {})\n", runs[i].name,
                       recs[i].params_used.k, recs[i].params_used.beta, recs[i].n_recommended,
                       to_string(recs[i].mode), recs[i].threshold);
  return recs;
}

struct AnalyzeResult {
  std::vector<DomainStats> stats;
  std::vector<ProjectionRun> runs;
  std::vector<Recommendation> recommendations;
  nlohmann::ordered_json summary;
};

inline AnalyzeResult cmd_analyze(const RunConfig& config, std::ostream& log) {
  AnalyzeResult res;
  const fs::path& out = config.out_dir;
  std::vector<std::string> written;

  run_stage("config", [&] {
    config.grid.validate();
    if (config.orderings.empty()) throw ConfigError("no ordering requested");
    std::vector<OrderPolicy> seen;
    for (auto p : config.orderings) {
      if (std::find(seen.begin(), seen.end(), p) != seen.end())
        throw ConfigError(fmt::format("ordering '{}' requested twice", to_string(p)));
      seen.push_back(p);
    }
  });
  const CorpusManifest manifest = run_stage("manifest", [&] { return load_manifest(config.manifest); });
  res.stats = run_stage("stats", [&] { return collect_stats(config, manifest); });
  {
    std::ostringstream csv;
    write_stats_csv(csv, res.stats);
    detail::write_file(out / "stats.csv", csv.str());
    written.push_back("stats.csv");
  }
  const auto corpora = sampled_corpora(res.stats);

  for (OrderPolicy p : config.orderings) {
    const std::string name(to_string(p));
    auto series = run_stage("growth", [&] { return cumulative_series(corpora, make_ordering(p, corpora, config)); });
    std::ostringstream csv;
    write_growth_csv(csv, series);
    detail::write_file(out / ("growth_" + name + ".csv"), csv.str());
    written.push_back("growth_" + name + ".csv");

    auto fit = run_stage("fit", [&] { return fit_series(series, name); });
    detail::write_file(out / ("fit_" + name + ".json"), to_json(fit).dump(2) + "\n");
    written.push_back("fit_" + name + ".json");
    res.runs.push_back({name, std::move(fit), {}});
  }

  auto more = run_stage("project", [&] {
    return write_projection_artifacts(out, res.runs, config, res.recommendations);
  });
  written.insert(written.end(), more.begin(), more.end());

  auto& s = res.summary;
  s["config"] = {{"manifest", config.manifest.generic_string()},
                 {"seed", config.seed},
                 {"target_tokens", resolve_target(config, res.stats)},
                 {"unit", to_string(config.unit)},
                 {"threshold", config.threshold},
                 {"mode", to_string(config.mode)},
                 {"grid", {{"start", config.grid.start}, {"end", config.grid.end}, {"step", config.grid.step}}},
                 {"rules",
                  {{"keep_digits", config.rules.digit_policy == DigitPolicy::keep_all},
                   {"keep_punct", config.rules.punctuation_policy == PunctuationPolicy::keep_attached},
                   {"case_fold", config.rules.case_fold}}}};
  nlohmann::ordered_json domains = nlohmann::ordered_json::array();
  for (const auto& d : res.stats)
    domains.push_back({{"id", d.spec.id},
                       {"register", to_string(d.spec.reg)},
                       {"raw_tokens", d.raw.inventory.token_total()},
                       {"raw_types", d.raw.inventory.type_total()},
                       {"sampled_tokens", d.sampled.inventory.token_total()},
                       {"sampled_types", d.sampled.inventory.type_total()}});
  s["domains"] = std::move(domains);
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    const auto& r = res.runs[i];
    runs.push_back({{"ordering", r.name},
                    {"permutation", r.fit.corpus_ids},
                    {"k", r.fit.params.k},
                    {"beta", r.fit.params.beta},
                    {"r_squared", r.fit.params.r_squared},
                    {"n_recommended", res.recommendations[i].n_recommended}});
  }
  s["runs"] = std::move(runs);
  written.push_back("summary.json");
  s["outputs"] = written;
  detail::write_file(out / "summary.json", s.dump(2) + "\n");

  for (std::size_t i = 0; i < res.runs.size(); ++i)
    log << fmt::format("{}: k={} beta={} r2={:.6f} -> {} tokens\n", res.runs[i].name, res.runs[i].fit.params.k,
                       res.runs[i].fit.params.beta, res.runs[i].fit.params.r_squared,
                       res.recommendations[i].n_recommended);
  return res;
}

}  // namespace corpsize
