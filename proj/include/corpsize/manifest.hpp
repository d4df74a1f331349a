#pragma once

// Corpus manifest: an ordered list of domain sub-corpora.
//
// On-disk form is JSON:
//
//   {
//     "domains": [
//       {"id": "C1", "label": "Newspaper-Culture", "register": "written",
//        "paths": ["culture/*.txt"], "encoding": "UTF-8"},
//       ...
//     ]
//   }
//
// Path patterns are relative to the manifest's directory unless absolute and
// may use '*', '?' within a component and '**' for any number of directories.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpsize/errors.hpp"
#include "corpsize/unicode.hpp"

namespace corpsize {

namespace fs = std::filesystem;

enum class Register { written, spoken };

inline std::string_view to_string(Register r) noexcept {
  return r == Register::spoken ? "spoken" : "written";
}

struct DomainSpec {
  std::string id;
  std::string label;
  Register reg = Register::written;
  std::vector<std::string> paths;
  std::string encoding = "UTF-8";

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

struct CorpusManifest {
  std::vector<DomainSpec> domains;
  /// Directory relative path patterns are resolved against.
  fs::path base_dir;

  const DomainSpec& domain(std::string_view id) const {
    auto it = std::find_if(domains.begin(), domains.end(), [&](const auto& d) { return d.id == id; });
    if (it == domains.end()) throw ConfigError("unknown domain id '" + std::string(id) + "'");
    return *it;
  }

  std::vector<std::string> ids() const {
    std::vector<std::string> v;
    for (const auto& d : domains) v.push_back(d.id);
    return v;
  }
};

inline nlohmann::ordered_json to_json(const CorpusManifest& m) {
  nlohmann::ordered_json domains = nlohmann::ordered_json::array();
  for (const auto& d : m.domains) {
    domains.push_back({{"id", d.id},
                       {"label", d.label},
                       {"register", to_string(d.reg)},
                       {"paths", d.paths},
                       {"encoding", d.encoding}});
  }
  return {{"domains", std::move(domains)}};
}

/// Parses manifest JSON text. `origin` prefixes error messages.
inline CorpusManifest parse_manifest(std::string_view text, fs::path base_dir = {},
                                     std::string_view origin = "manifest") {
  const std::string where(origin);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("domains") || !doc["domains"].is_array())
    throw ConfigError(where + ": top level must be an object with a 'domains' array");

  CorpusManifest m;
  m.base_dir = std::move(base_dir);
  std::set<std::string> seen;
  const auto& arr = doc["domains"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& e = arr[i];
    const std::string at = where + ": domains[" + std::to_string(i) + "]";
    if (!e.is_object()) throw ConfigError(at + ": entry must be an object");
    auto str_field = [&](const char* key, bool required) -> std::string {
      if (!e.contains(key)) {
        if (required) throw ConfigError(at + "." + key + ": missing");
        return {};
      }
      if (!e[key].is_string()) throw ConfigError(at + "." + key + ": expected a string");
      return e[key].get<std::string>();
    };

    DomainSpec d;
    d.id = str_field("id", true);
    if (d.id.empty()) throw ConfigError(at + ".id: must be non-empty");
    if (!seen.insert(d.id).second) throw ConfigError(at + ".id: duplicate domain id '" + d.id + "'");
    d.label = str_field("label", false);
    if (d.label.empty()) d.label = d.id;

    const std::string reg = str_field("register", true);
    if (reg == "written")
      d.reg = Register::written;
    else if (reg == "spoken")
      d.reg = Register::spoken;
    else
      throw ConfigError(at + ".register: expected 'written' or 'spoken', got '" + reg + "'");

    if (!e.contains("paths") || !e["paths"].is_array() || e["paths"].empty())
      throw ConfigError(at + ".paths: expected a non-empty list of path patterns");
    for (const auto& p : e["paths"]) {
      if (!p.is_string() || p.get<std::string>().empty())
        throw ConfigError(at + ".paths: every pattern must be a non-empty string");
      d.paths.push_back(p.get<std::string>());
    }

    if (e.contains("encoding")) {
      d.encoding = str_field("encoding", false);
      try {
        unicode::parse_encoding(d.encoding);
      } catch (const ConfigError& err) {
        throw ConfigError(at + ".encoding: " + err.what());
      }
    }
    m.domains.push_back(std::move(d));
  }
  if (m.domains.empty()) throw ConfigError(where + ": 'domains' is empty");
  return m;
}

inline CorpusManifest load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path(), path.string());
}

inline void save_manifest(const CorpusManifest& m, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write manifest " + path.string());
  out << to_json(m).dump(2) << '\n';
}

// --- path patterns ---------------------------------------------------------

namespace detail {

inline bool wildcard_match(std::string_view pat, std::string_view name) {
  std::size_t p = 0, n = 0, star = std::string_view::npos, mark = 0;
  while (n < name.size()) {
    if (p < pat.size() && (pat[p] == '?' || pat[p] == name[n])) {
      ++p, ++n;
    } else if (p < pat.size() && pat[p] == '*') {
      star = p++, mark = n;
    } else if (star != std::string_view::npos) {
      p = star + 1, n = ++mark;
    } else {
      return false;
    }
  }
  while (p < pat.size() && pat[p] == '*') ++p;
  return p == pat.size();
}

inline bool has_wildcard(std::string_view s) { return s.find_first_of("*?") != std::string_view::npos; }

inline void expand(const fs::path& dir, const std::vector<std::string>& parts, std::size_t i,
                   std::set<fs::path>& out) {
  std::error_code ec;
  if (i == parts.size()) {
    if (fs::is_regular_file(dir, ec)) out.insert(dir.lexically_normal());
    return;
  }
  const std::string& part = parts[i];
  if (part == "**") {
    expand(dir, parts, i + 1, out);
    if (!fs::is_directory(dir, ec)) return;
    for (const auto& entry : fs::directory_iterator(dir, ec))
      if (entry.is_directory(ec)) expand(entry.path(), parts, i, out);
    return;
  }
  if (!has_wildcard(part)) {
    fs::path next = dir / part;
    if (fs::exists(next, ec)) expand(next, parts, i + 1, out);
    return;
  }
  if (!fs::is_directory(dir, ec)) return;
  for (const auto& entry : fs::directory_iterator(dir, ec))
    if (wildcard_match(part, entry.path().filename().string())) expand(entry.path(), parts, i + 1, out);
}

}  // namespace detail

/// Files matching `pattern`, sorted lexicographically by path.
inline std::vector<fs::path> expand_pattern(const fs::path& base_dir, std::string_view pattern) {
  fs::path p(pattern);
  fs::path root = p.is_absolute() ? p.root_path() : (base_dir.empty() ? fs::path(".") : base_dir);
  std::vector<std::string> parts;
  for (const auto& c : p.relative_path()) parts.push_back(c.string());
  std::set<fs::path> found;
  detail::expand(root, parts, 0, found);
  return {found.begin(), found.end()};
}

/// Union of all pattern matches of a domain, sorted and deduplicated.
inline std::vector<fs::path> domain_files(const CorpusManifest& m, const DomainSpec& d) {
  std::set<fs::path> all;
  for (const auto& pat : d.paths)
    for (auto& f : expand_pattern(m.base_dir, pat)) all.insert(std::move(f));
  return {all.begin(), all.end()};
}

}  // namespace corpsize
