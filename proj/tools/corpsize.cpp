// corpsize: estimate an appropriate corpus size from vocabulary growth.
//
//   corpsize stats    --manifest M [--target-tokens N] [--unit U] [--seed S] --out DIR
//   corpsize growth   --manifest M --ordering types-desc --ordering manifest --out DIR
//   corpsize fit      growth.csv [--out fit.json]
//   corpsize project  fit.json... [--grid-end N] [--mode exact] [--emit-svg] --out DIR
//   corpsize analyze  --manifest M [all of the above] --out DIR
//
// Exit codes: 0 ok, 1 other, 2 configuration, 3 ingest, 4 no qualifying grid point, 5 fit.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corpsize/corpsize.hpp"

namespace {

using namespace corpsize;

const std::map<std::string, SampleUnit> kUnits{
    {"line", SampleUnit::line}, {"sentence", SampleUnit::sentence}, {"token", SampleUnit::token}};
const std::map<std::string, OrderPolicy> kOrderings{{"types-desc", OrderPolicy::types_desc},
                                                    {"manifest", OrderPolicy::manifest},
                                                    {"shuffle", OrderPolicy::pinned_shuffle}};
const std::map<std::string, RecommendMode> kModes{{"paper-compat", RecommendMode::paper_compat},
                                                  {"exact", RecommendMode::exact}};

struct Options {
  RunConfig config;
  std::string unit = "sentence";
  std::vector<std::string> orderings;
  std::vector<std::string> pins;
  std::string mode = "paper-compat";
  bool case_fold = false, keep_digits = false, keep_punct = false;
  std::uint64_t target_tokens = 0;
  std::vector<std::string> inputs;  // fit: growth CSV; project: fit JSONs
  std::string fit_label = "unspecified";
  std::string out;
};

void add_corpus_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--manifest", o.config.manifest, "corpus manifest (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.config.seed, "sampling/shuffle seed")->capture_default_str();
  cmd->add_option("--target-tokens", o.target_tokens, "per-domain sample size (default: smallest domain)");
  cmd->add_option("--unit", o.unit, "sampling unit")->check(CLI::IsMember({"line", "sentence", "token"}))
      ->capture_default_str();
  cmd->add_flag("--case-fold", o.case_fold, "lowercase tokens");
  cmd->add_flag("--keep-digits", o.keep_digits, "keep tokens made only of digits");
  cmd->add_flag("--keep-punct", o.keep_punct, "keep edge punctuation attached to tokens");
}

void add_ordering_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--ordering", o.orderings, "types-desc | manifest | shuffle (repeatable)")
      ->check(CLI::IsMember({"types-desc", "manifest", "shuffle"}));
  cmd->add_option("--pin", o.pins, "POS=ID: fix domain ID at 1-based position POS under shuffle (repeatable)");
}

void add_projection_flags(CLI::App* cmd, Options& o) {
  auto& g = o.config.grid;
  cmd->add_option("--grid-start", g.start, "first grid size in tokens")->capture_default_str();
  cmd->add_option("--grid-end", g.end, "last grid size in tokens")->capture_default_str();
  cmd->add_option("--grid-step", g.step, "grid step in tokens")->capture_default_str();
  cmd->add_option("--threshold", o.config.threshold, "TTR change threshold")->capture_default_str();
  cmd->add_option("--mode", o.mode, "paper-compat | exact")->check(CLI::IsMember({"paper-compat", "exact"}))
      ->capture_default_str();
  cmd->add_flag("--emit-svg", o.config.emit_svg, "write SVG charts");
}

void finalize(Options& o) {
  auto& c = o.config;
  c.unit = kUnits.at(o.unit);
  c.mode = kModes.at(o.mode);
  if (o.target_tokens) c.target_tokens = o.target_tokens;
  if (!o.orderings.empty()) {
    c.orderings.clear();
    for (const auto& s : o.orderings) c.orderings.push_back(kOrderings.at(s));
  }
  for (const auto& pin : o.pins) {
    const auto eq = pin.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == pin.size())
      throw ConfigError("--pin expects POS=ID, got '" + pin + "'");
    std::size_t pos = 0;
    try {
      pos = std::stoul(pin.substr(0, eq));
    } catch (const std::exception&) {
      throw ConfigError("--pin position is not a number in '" + pin + "'");
    }
    if (!c.pins.emplace(pos, pin.substr(eq + 1)).second)
      throw ConfigError("position " + std::to_string(pos) + " pinned twice");
  }
  if (o.case_fold) c.rules.case_fold = true;
  if (o.keep_digits) c.rules.digit_policy = DigitPolicy::keep_all;
  if (o.keep_punct) c.rules.punctuation_policy = PunctuationPolicy::keep_attached;
  if (!o.out.empty()) c.out_dir = o.out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Estimate an appropriate corpus size from Heaps' law and TTR change"};
  app.require_subcommand(1);
  Options o;

  auto* stats = app.add_subcommand("stats", "per-domain raw and sampled token/type counts");
  add_corpus_flags(stats, o);
  stats->add_option("--out", o.out, "output directory");

  auto* growth = app.add_subcommand("growth", "cumulative token/type series per ordering");
  add_corpus_flags(growth, o);
  add_ordering_flags(growth, o);
  growth->add_option("--out", o.out, "output directory");

  auto* fit = app.add_subcommand("fit", "fit Heaps' law to a growth CSV");
  fit->add_option("growth_csv", o.inputs, "growth CSV")->required()->expected(1)->check(CLI::ExistingFile);
  fit->add_option("--ordering", o.fit_label, "ordering label recorded in the fit JSON");
  fit->add_option("--out", o.out, "output JSON file (default: stdout)");

  auto* project = app.add_subcommand("project", "project V and TTR and recommend a corpus size");
  project->add_option("fit_json", o.inputs, "fit JSON file(s)")->required()->check(CLI::ExistingFile);
  add_projection_flags(project, o);
  project->add_option("--out", o.out, "output directory");

  auto* analyze = app.add_subcommand("analyze", "run the whole pipeline");
  add_corpus_flags(analyze, o);
  add_ordering_flags(analyze, o);
  add_projection_flags(analyze, o);
  analyze->add_option("--out", o.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*fit) {
      cmd_fit(o.inputs.front(), o.fit_label, o.out, std::cout, std::cerr);
      return 0;
    }
    finalize(o);
    if (*stats) cmd_stats(o.config, std::cout);
    if (*growth) cmd_growth(o.config, std::cout);
    if (*project) {
      std::vector<fs::path> files(o.inputs.begin(), o.inputs.end());
      cmd_project(files, o.config, std::cout);
    }
    if (*analyze) cmd_analyze(o.config, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "corpsize: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 0;
}
