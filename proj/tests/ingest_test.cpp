#include <gtest/gtest.h>

#include "corpsize/documents.hpp"
#include "corpsize/manifest.hpp"
#include "test_util.hpp"

using namespace corpsize;
using testutil::TempDir;

namespace {

std::string domain_json(const std::string& id, const std::string& glob, const std::string& reg = "written") {
  return R"({"id": ")" + id + R"(", "label": ")" + id + R"( label", "register": ")" + reg +
         R"(", "paths": [")" + glob + R"("]})";
}

}  // namespace

TEST(Manifest, TenDomainsKeepFileOrder) {
  std::string body = R"({"domains": [)";
  for (int i = 1; i <= 10; ++i) body += (i > 1 ? "," : "") + domain_json("C" + std::to_string(i), "c/*.txt");
  body += "]}";
  const auto m = parse_manifest(body);
  ASSERT_EQ(m.domains.size(), 10u);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(m.domains[i].id, "C" + std::to_string(i + 1));
  EXPECT_EQ(m.domains[0].encoding, "UTF-8");
}

TEST(Manifest, SingleDomain) {
  const auto m = parse_manifest(R"({"domains": [)" + domain_json("only", "a.txt", "spoken") + "]}");
  ASSERT_EQ(m.domains.size(), 1u);
  EXPECT_EQ(m.domains[0].reg, Register::spoken);
  EXPECT_EQ(m.domains[0].paths, std::vector<std::string>{"a.txt"});
}

TEST(Manifest, DuplicateIdRejected) {
  const std::string body =
      R"({"domains": [)" + domain_json("C1", "a.txt") + "," + domain_json("C1", "b.txt") + "]}";
  try {
    parse_manifest(body);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("domains[1].id"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
  }
}

TEST(Manifest, MalformedEntriesNameTheField) {
  auto message = [](const std::string& body) -> std::string {
    try {
      parse_manifest(body);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message(R"({"domains": [{"id": "C1", "register": "sung", "paths": ["a"]}]})").find("domains[0].register"),
            std::string::npos);
  EXPECT_NE(message(R"({"domains": [{"id": "C1", "register": "written", "paths": []}]})").find("domains[0].paths"),
            std::string::npos);
  EXPECT_NE(message(R"({"domains": [{"id": "", "register": "written", "paths": ["a"]}]})").find("domains[0].id"),
            std::string::npos);
  EXPECT_NE(message(R"({"domains": [{"id": "C1", "register": "written", "paths": ["a"], "encoding": "koi9"}]})")
                .find("domains[0].encoding"),
            std::string::npos);
  EXPECT_NE(message("{\"domains\": [\n{\"id\": \"C1\",,}]}").find("line 2"), std::string::npos);
}

TEST(Manifest, MissingFile) {
  EXPECT_THROW(load_manifest("/nonexistent/manifest.json"), ConfigError);
}

TEST(Manifest, SaveLoadRoundTrip) {
  TempDir dir("manifest");
  CorpusManifest m;
  m.domains.push_back({"C1", "Culture", Register::written, {"c1/*.txt", "extra/**/*.txt"}, "UTF-8"});
  m.domains.push_back({"C10", "Podcast, \"transcribed\"", Register::spoken, {"c10/part?.txt"}, "windows-1251"});
  save_manifest(m, dir / "m.json");
  const auto back = load_manifest(dir / "m.json");
  EXPECT_EQ(back.domains, m.domains);
  EXPECT_EQ(back.base_dir, dir.path());
}

TEST(Segment, SentenceRule) {
  EXPECT_EQ(segment_units("а б. в г.", UnitMode::sentence), (std::vector<std::string>{"а б.", "в г."}));
  EXPECT_EQ(segment_units("Юу? Тийм! 3.5 хувь. ", UnitMode::sentence),
            (std::vector<std::string>{"Юу?", "Тийм!", "3.5 хувь."}));
  EXPECT_EQ(segment_units("no terminator", UnitMode::sentence), std::vector<std::string>{"no terminator"});
  EXPECT_TRUE(segment_units("  \n ", UnitMode::sentence).empty());
}

TEST(Segment, LineRule) {
  EXPECT_EQ(segment_units("a b\r\n\n c \nd", UnitMode::line), (std::vector<std::string>{"a b", "c", "d"}));
}

TEST(Segment, ConcatenationReproducesSourceModuloWhitespace) {
  const std::string text = "Нэг хоёр. Гурав? Дөрөв!  Тав\nзургаа. долоо";
  for (auto mode : {UnitMode::line, UnitMode::sentence}) {
    std::string joined, squeezed;
    for (const auto& u : segment_units(text, mode)) joined += u;
    for (char c : text)
      if (c != ' ' && c != '\n') squeezed.push_back(c);
    std::string joined_squeezed;
    for (char c : joined)
      if (c != ' ' && c != '\n') joined_squeezed.push_back(c);
    EXPECT_EQ(joined_squeezed, squeezed);
  }
}

TEST(ReadDocuments, OneFileThreeLines) {
  TempDir dir("read");
  testutil::write(dir / "d/a.txt", "нэг\nхоёр\nгурав\n");
  const auto m = parse_manifest(R"({"domains": [)" + domain_json("D", "d/*.txt") + "]}", dir.path());
  const auto docs = read_documents(m, "D", UnitMode::line);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].units.size(), 3u);
  EXPECT_EQ(docs[0].domain_id, "D");
}

TEST(ReadDocuments, SortedPathOrderAndRecursiveGlob) {
  TempDir dir("order");
  testutil::write(dir / "d/b.txt", "b");
  testutil::write(dir / "d/a.txt", "a");
  testutil::write(dir / "d/sub/deep/c.txt", "c");
  testutil::write(dir / "d/skip.md", "x");
  const auto m = parse_manifest(R"({"domains": [)" + domain_json("D", "d/**/*.txt") + "]}", dir.path());
  const auto docs = read_documents(m, "D", UnitMode::line);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].units[0], "a");
  EXPECT_EQ(docs[1].units[0], "b");
  EXPECT_EQ(docs[2].units[0], "c");
  // deterministic across calls
  const auto again = read_documents(m, "D", UnitMode::line);
  for (std::size_t i = 0; i < docs.size(); ++i) EXPECT_EQ(docs[i].units, again[i].units);
}

TEST(ReadDocuments, Errors) {
  TempDir dir("errors");
  testutil::write(dir / "bad/x.txt", std::string("ok \xFF\xFE", 5));
  const auto m = parse_manifest(R"({"domains": [)" + domain_json("E", "empty/*.txt") + "," +
                                    domain_json("B", "bad/*.txt") + "]}",
                                dir.path());
  EXPECT_THROW(read_documents(m, "C99", UnitMode::line), ConfigError);
  EXPECT_THROW(read_documents(m, "E", UnitMode::line), IngestError);
  try {
    read_documents(m, "B", UnitMode::line);
    FAIL() << "expected IngestError";
  } catch (const IngestError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("x.txt"), std::string::npos);
    EXPECT_NE(msg.find("offset 3"), std::string::npos) << msg;
  }
}

TEST(ReadDocuments, DeclaredEncodingIsDecoded) {
  TempDir dir("enc");
  testutil::write(dir / "w/a.txt", "\xCC\xEE\xED\xE3\xEE\xEB \xF5\xFD\xEB");
  const auto m = parse_manifest(
      R"({"domains": [{"id": "W", "register": "written", "paths": ["w/a.txt"], "encoding": "cp1251"}]})",
      dir.path());
  const auto docs = read_documents(m, "W", UnitMode::line);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].units[0], "Монгол хэл");
}

TEST(Glob, WildcardMatch) {
  EXPECT_TRUE(detail::wildcard_match("*.txt", "a.txt"));
  EXPECT_TRUE(detail::wildcard_match("part?.txt", "part1.txt"));
  EXPECT_FALSE(detail::wildcard_match("part?.txt", "part10.txt"));
  EXPECT_TRUE(detail::wildcard_match("*", ""));
  EXPECT_FALSE(detail::wildcard_match("*.md", "a.txt"));
}
