#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "corpsize/errors.hpp"
#include "corpsize/manifest.hpp"
#include "corpsize/unicode.hpp"

namespace corpsize {

enum class UnitMode { line, sentence };

inline std::string_view to_string(UnitMode u) noexcept {
  return u == UnitMode::line ? "line" : "sentence";
}

/// One source file of a domain, split into sampling units.
struct Document {
  std::string domain_id;
  std::string source;
  std::vector<std::string> units;  // trimmed, non-empty
};

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
  std::size_t begin = 0;
  while (begin < s.size()) {
    const auto d = unicode::decode_at(s, begin);
    if (!unicode::is_space(d.cp)) break;
    begin += d.length;
  }
  std::size_t end = begin;
  for (std::size_t pos = begin; pos < s.size();) {
    const auto d = unicode::decode_at(s, pos);
    pos += d.length;
    if (!unicode::is_space(d.cp)) end = pos;
  }
  return s.substr(begin, end - begin);
}

inline void push_unit(std::vector<std::string>& out, std::string_view piece) {
  piece = trim(piece);
  if (!piece.empty()) out.emplace_back(piece);
}

}  // namespace detail

/// line: split on '\n'. sentence: cut after '.', '?' or '!' when the next
/// code point is whitespace; the terminator stays with the preceding unit.
/// Units are trimmed and empty ones dropped.
inline std::vector<std::string> segment_units(std::string_view text, UnitMode mode) {
  std::vector<std::string> units;
  std::size_t start = 0;
  if (mode == UnitMode::line) {
    for (std::size_t nl; (nl = text.find('\n', start)) != std::string_view::npos; start = nl + 1)
      detail::push_unit(units, text.substr(start, nl - start));
  } else {
    bool after_terminator = false;
    for (std::size_t pos = 0; pos < text.size();) {
      const auto d = unicode::decode_at(text, pos);
      if (after_terminator && unicode::is_space(d.cp)) {
        detail::push_unit(units, text.substr(start, pos - start));
        start = pos;
      }
      after_terminator = d.cp == U'.' || d.cp == U'?' || d.cp == U'!';
      pos += d.length;
    }
  }
  detail::push_unit(units, text.substr(start));
  return units;
}

inline Document read_document(const fs::path& file, const DomainSpec& domain, UnitMode mode) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IngestError("domain " + domain.id + ": cannot open " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text =
      unicode::to_utf8(buf.str(), unicode::parse_encoding(domain.encoding), file.string());
  return {domain.id, file.string(), segment_units(text, mode)};
}

/// All documents of one domain in sorted-path order.
inline std::vector<Document> read_documents(const CorpusManifest& manifest, std::string_view domain_id,
                                            UnitMode mode) {
  const DomainSpec& domain = manifest.domain(domain_id);
  const auto files = domain_files(manifest, domain);
  if (files.empty()) throw IngestError("domain " + domain.id + ": no files matched its path patterns");
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& f : files) docs.push_back(read_document(f, domain, mode));
  return docs;
}

}  // namespace corpsize
