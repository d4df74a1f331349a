#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpsize/unicode.hpp"

namespace corpsize {

enum class DigitPolicy { exclude_pure_digit_tokens, keep_all };
enum class PunctuationPolicy { strip, keep_attached };

/// Word-form (Type I) tokenization rules.
struct TokenRules {
  DigitPolicy digit_policy = DigitPolicy::exclude_pure_digit_tokens;
  PunctuationPolicy punctuation_policy = PunctuationPolicy::strip;
  bool case_fold = false;
};

/// Normalized tokens of one text segment. No token is empty.
struct TokenSequence {
  std::vector<std::string> tokens;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

namespace detail {

inline bool is_pure_digits(std::string_view token) noexcept {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Trims leading/trailing code points that are neither letters nor digits.
inline std::string_view strip_punctuation(std::string_view s) noexcept {
  std::size_t begin = 0;
  while (begin < s.size()) {
    const auto d = unicode::decode_at(s, begin);
    if (unicode::is_word_char(d.cp)) break;
    begin += d.length;
  }
  std::size_t end = begin;  // one past the last word character
  for (std::size_t pos = begin; pos < s.size();) {
    const auto d = unicode::decode_at(s, pos);
    pos += d.length;
    if (unicode::is_word_char(d.cp)) end = pos;
  }
  return s.substr(begin, end - begin);
}

inline std::string fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    const auto d = unicode::decode_at(s, pos);
    if (d.valid)
      unicode::append_utf8(out, unicode::fold_case(d.cp));
    else
      out.append(s.substr(pos, d.length));
    pos += d.length;
  }
  return out;
}

inline void emit(std::string_view piece, const TokenRules& rules, std::vector<std::string>& out) {
  if (rules.punctuation_policy == PunctuationPolicy::strip) piece = strip_punctuation(piece);
  if (piece.empty()) return;
  if (rules.digit_policy == DigitPolicy::exclude_pure_digit_tokens && is_pure_digits(piece)) return;
  out.push_back(rules.case_fold ? fold(piece) : std::string(piece));
}

}  // namespace detail

/// Splits `text` on Unicode whitespace runs. Under the strip policy each raw
/// token is further split on '/' and trimmed of edge punctuation.
inline TokenSequence tokenize(std::string_view text, const TokenRules& rules = {}) {
  TokenSequence seq;
  std::size_t start = std::string_view::npos;

  auto flush = [&](std::size_t end) {
    if (start == std::string_view::npos) return;
    std::string_view raw = text.substr(start, end - start);
    start = std::string_view::npos;
    if (rules.punctuation_policy == PunctuationPolicy::keep_attached) {
      detail::emit(raw, rules, seq.tokens);
      return;
    }
    for (std::size_t from = 0;;) {
      const std::size_t slash = raw.find('/', from);
      detail::emit(raw.substr(from, slash - from), rules, seq.tokens);
      if (slash == std::string_view::npos) break;
      from = slash + 1;
    }
  };

  for (std::size_t pos = 0; pos < text.size();) {
    const auto d = unicode::decode_at(text, pos);
    if (unicode::is_space(d.cp)) {
      flush(pos);
    } else if (start == std::string_view::npos) {
      start = pos;
    }
    pos += d.length;
  }
  flush(text.size());
  return seq;
}

/// Frequency map of word forms.
///
/// Invariants: every count >= 1, the counts sum to token_total(), and
/// type_total() is the number of distinct forms.
class TypeInventory {
 public:
  using Counts = std::unordered_map<std::string, std::uint64_t>;

  TypeInventory() = default;

  void add(std::string_view form, std::uint64_t count = 1) {
    if (count == 0) return;
    auto it = counts_.find(std::string(form));
    if (it == counts_.end())
      counts_.emplace(std::string(form), count);
    else
      it->second += count;
    token_total_ += count;
  }

  void add(const TokenSequence& seq) {
    for (const auto& t : seq.tokens) add(t);
  }

  /// In-place keywise sum.
  TypeInventory& merge(const TypeInventory& other) {
    for (const auto& [form, n] : other.counts_) add(form, n);
    return *this;
  }

  std::uint64_t count(std::string_view form) const {
    auto it = counts_.find(std::string(form));
    return it == counts_.end() ? 0 : it->second;
  }

  const Counts& counts() const noexcept { return counts_; }
  std::uint64_t token_total() const noexcept { return token_total_; }
  std::uint64_t type_total() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return token_total_ == 0; }

  /// Forms sorted by descending count, ties by form (byte order).
  std::vector<std::pair<std::string, std::uint64_t>> sorted() const {
    std::vector<std::pair<std::string, std::uint64_t>> v(counts_.begin(), counts_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    return v;
  }

  friend bool operator==(const TypeInventory& a, const TypeInventory& b) {
    return a.token_total_ == b.token_total_ && a.counts_ == b.counts_;
  }

 private:
  Counts counts_;
  std::uint64_t token_total_ = 0;
};

inline TypeInventory build_inventory(const TokenSequence& seq) {
  TypeInventory inv;
  inv.add(seq);
  return inv;
}

inline TypeInventory build_inventory(std::span<const TokenSequence> seqs) {
  TypeInventory inv;
  for (const auto& s : seqs) inv.add(s);
  return inv;
}

inline TypeInventory merge_inventories(const TypeInventory& a, const TypeInventory& b) {
  // iterate over the smaller map
  if (a.type_total() < b.type_total()) return TypeInventory(b).merge(a);
  return TypeInventory(a).merge(b);
}

}  // namespace corpsize
