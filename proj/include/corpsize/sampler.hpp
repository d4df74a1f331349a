#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpsize/errors.hpp"
#include "corpsize/rng.hpp"
#include "corpsize/tokenizer.hpp"

namespace corpsize {

enum class SampleUnit { line, sentence, token };

inline std::string_view to_string(SampleUnit u) noexcept {
  switch (u) {
    case SampleUnit::line: return "line";
    case SampleUnit::sentence: return "sentence";
    case SampleUnit::token: return "token";
  }
  return "sentence";
}

struct SampleSpec {
  std::uint64_t target_tokens = 1;
  SampleUnit unit = SampleUnit::sentence;
  std::uint64_t seed = 0;
};

/// One domain after (optional) down-sampling.
struct SubCorpus {
  std::string id;
  TypeInventory inventory;
  /// Retained unit indices, ascending. For SampleUnit::token these are
  /// positions in the flattened token stream.
  std::vector<std::size_t> sampled_units;
};

inline std::uint64_t count_tokens(std::span<const TokenSequence> units) noexcept {
  std::uint64_t n = 0;
  for (const auto& u : units) n += u.size();
  return n;
}

/// The full domain, no sampling.
inline SubCorpus whole_corpus(std::string id, std::span<const TokenSequence> units) {
  SubCorpus sc{std::move(id), build_inventory(units), {}};
  sc.sampled_units.resize(units.size());
  std::iota(sc.sampled_units.begin(), sc.sampled_units.end(), std::size_t{0});
  return sc;
}

/// Draws units uniformly without replacement until the cumulative token count
/// reaches spec.target_tokens. With SampleUnit::token individual tokens are
/// drawn and the result holds exactly target_tokens tokens.
///
/// The draw order is a partial Fisher-Yates over indices driven by
/// StableRng(spec.seed), so the result depends only on (units, spec).
inline SubCorpus downsample(std::span<const TokenSequence> units, const SampleSpec& spec,
                            std::string id = {}) {
  if (spec.target_tokens < 1) throw ConfigError("target_tokens must be >= 1");
  const std::uint64_t available = count_tokens(units);
  if (available < spec.target_tokens) throw InsufficientTokensError(available, spec.target_tokens);

  StableRng rng(spec.seed);
  SubCorpus out{std::move(id), {}, {}};

  if (spec.unit == SampleUnit::token) {
    std::vector<const std::string*> flat;
    flat.reserve(available);
    for (const auto& u : units)
      for (const auto& t : u.tokens) flat.push_back(&t);
    std::vector<std::size_t> order(flat.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < spec.target_tokens; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(order.size() - i));
      std::swap(order[i], order[j]);
      out.inventory.add(*flat[order[i]]);
      out.sampled_units.push_back(order[i]);
    }
  } else {
    std::vector<std::size_t> order(units.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; out.inventory.token_total() < spec.target_tokens; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(order.size() - i));
      std::swap(order[i], order[j]);
      out.inventory.add(units[order[i]]);
      out.sampled_units.push_back(order[i]);
    }
  }
  std::sort(out.sampled_units.begin(), out.sampled_units.end());
  return out;
}

}  // namespace corpsize
