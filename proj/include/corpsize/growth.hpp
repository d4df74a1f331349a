#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpsize/csv.hpp"
#include "corpsize/errors.hpp"
#include "corpsize/rng.hpp"
#include "corpsize/sampler.hpp"

namespace corpsize {

enum class OrderPolicy { types_desc, manifest, pinned_shuffle };

inline std::string_view to_string(OrderPolicy p) noexcept {
  switch (p) {
    case OrderPolicy::types_desc: return "types-desc";
    case OrderPolicy::manifest: return "manifest";
    case OrderPolicy::pinned_shuffle: return "shuffle";
  }
  return "manifest";
}

/// Order in which sub-corpora are accumulated.
struct Ordering {
  OrderPolicy policy = OrderPolicy::manifest;
  std::vector<std::string> permutation;
  std::optional<std::uint64_t> seed;
  /// 1-based position -> domain id.
  std::map<std::size_t, std::string> pins;
};

struct GrowthPoint {
  std::uint64_t cum_tokens = 0;  // N
  std::uint64_t cum_types = 0;   // V

  friend bool operator==(const GrowthPoint&, const GrowthPoint&) = default;
};

struct GrowthSeries {
  Ordering ordering;
  std::vector<GrowthPoint> points;  // points[i] covers permutation[0..i]
};

/// Largest type_total first; ties by id ascending.
inline Ordering order_by_types_desc(std::span<const SubCorpus> stats) {
  if (stats.empty()) throw ConfigError("cannot order an empty list of sub-corpora");
  std::vector<const SubCorpus*> v;
  for (const auto& s : stats) v.push_back(&s);
  std::stable_sort(v.begin(), v.end(), [](const SubCorpus* a, const SubCorpus* b) {
    const auto ta = a->inventory.type_total(), tb = b->inventory.type_total();
    return ta != tb ? ta > tb : a->id < b->id;
  });
  Ordering o{OrderPolicy::types_desc, {}, std::nullopt, {}};
  for (const auto* s : v) o.permutation.push_back(s->id);
  return o;
}

/// Input order, i.e. manifest order when `stats` follows the manifest.
inline Ordering order_manifest(std::span<const SubCorpus> stats) {
  Ordering o{OrderPolicy::manifest, {}, std::nullopt, {}};
  for (const auto& s : stats) o.permutation.push_back(s.id);
  return o;
}

/// Pinned ids keep their (1-based) positions. The unpinned ids, taken in input
/// order, are shuffled with StableRng(seed) and fill the free positions in
/// ascending order.
inline Ordering order_pinned_shuffle(std::span<const SubCorpus> stats,
                                     const std::map<std::size_t, std::string>& pins,
                                     std::uint64_t seed) {
  const std::size_t n = stats.size();
  std::set<std::string> known;
  for (const auto& s : stats) known.insert(s.id);

  std::vector<std::optional<std::string>> slots(n);
  std::set<std::string> pinned;
  for (const auto& [pos, id] : pins) {
    if (pos < 1 || pos > n)
      throw ConfigError("pin position " + std::to_string(pos) + " outside 1.." + std::to_string(n));
    if (!known.contains(id)) throw ConfigError("pin references unknown domain id '" + id + "'");
    if (!pinned.insert(id).second) throw ConfigError("domain id '" + id + "' pinned twice");
    slots[pos - 1] = id;
  }

  std::vector<std::string> rest;
  for (const auto& s : stats)
    if (!pinned.contains(s.id)) rest.push_back(s.id);
  StableRng rng(seed);
  rng.shuffle(std::span<std::string>(rest));

  Ordering o{OrderPolicy::pinned_shuffle, {}, seed, pins};
  auto next = rest.begin();
  for (auto& slot : slots) o.permutation.push_back(slot ? *slot : *next++);
  return o;
}

/// Point i = (tokens of the first i+1 corpora, distinct forms of their merged
/// inventory).
inline GrowthSeries cumulative_series(std::span<const SubCorpus> stats, const Ordering& ordering) {
  std::map<std::string_view, const SubCorpus*> by_id;
  for (const auto& s : stats) {
    if (!by_id.emplace(s.id, &s).second) throw ConfigError("duplicate sub-corpus id '" + s.id + "'");
  }
  if (ordering.permutation.size() != stats.size())
    throw ConfigError("ordering does not cover exactly the given sub-corpora");
  std::set<std::string_view> used;
  for (const auto& id : ordering.permutation) {
    if (!by_id.contains(id) || !used.insert(id).second)
      throw ConfigError("ordering is not a permutation of the sub-corpus ids");
  }

  GrowthSeries series{ordering, {}};
  TypeInventory acc;
  for (const auto& id : ordering.permutation) {
    acc.merge(by_id.at(id)->inventory);
    series.points.push_back({acc.token_total(), acc.type_total()});
  }
  return series;
}

// --- CSV ---------------------------------------------------------------------

inline constexpr std::string_view kGrowthCsvHeader = "order_index,corpus_id,cum_tokens,cum_types";

/// One row per prefix; order_index is 1-based.
inline void write_growth_csv(std::ostream& out, const GrowthSeries& s) {
  out << kGrowthCsvHeader << '\n';
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const std::string id = i < s.ordering.permutation.size() ? s.ordering.permutation[i] : "";
    out << (i + 1) << ',' << csv::escape(id) << ',' << s.points[i].cum_tokens << ','
        << s.points[i].cum_types << '\n';
  }
}

namespace detail {
inline std::uint64_t parse_count(const std::string& field, std::size_t line, const char* column) {
  std::uint64_t v = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc{} || ptr != end || field.empty())
    throw ConfigError("growth CSV line " + std::to_string(line) + ": bad " + column + " '" + field + "'");
  return v;
}
}  // namespace detail

/// Reads a growth CSV. The returned ordering lists the corpus ids with
/// policy=manifest (rows are taken as listed).
inline GrowthSeries read_growth_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("growth CSV is empty");
  if (line.ends_with('\r')) line.pop_back();
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (line != kGrowthCsvHeader)
    throw ConfigError("growth CSV header must be '" + std::string(kGrowthCsvHeader) + "'");

  GrowthSeries s;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = csv::split(line);
    if (f.size() != 4)
      throw ConfigError("growth CSV line " + std::to_string(lineno) + ": expected 4 fields");
    const auto index = detail::parse_count(f[0], lineno, "order_index");
    if (index != s.points.size() + 1)
      throw ConfigError("growth CSV line " + std::to_string(lineno) + ": order_index out of sequence");
    s.ordering.permutation.push_back(f[1]);
    s.points.push_back({detail::parse_count(f[2], lineno, "cum_tokens"),
                        detail::parse_count(f[3], lineno, "cum_types")});
  }
  return s;
}

}  // namespace corpsize
