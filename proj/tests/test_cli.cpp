#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "dra/cli.hpp"

using json = nlohmann::json;

namespace {

const std::filesystem::path fixture_dir = DRA_FIXTURE_DIR;

struct Run
{
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string &input = {})
{
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = dra::cli::run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string &name) { return (fixture_dir / (name + ".json")).string(); }

const std::vector<std::string> algebra_fixtures{"A1", "T1", "A3c", "A3i", "B4", "A4f", "PF2", "CONV"};

} // namespace

TEST(Cli, CompleteA3cGivesFourElements)
{
  auto r = run({"complete", fx("A3c")});
  ASSERT_EQ(r.code, 0) << r.err;
  json d = r.doc();
  EXPECT_EQ(d["kind"], "algebra");
  EXPECT_EQ(d["elements"].size(), 4u);
  EXPECT_EQ(d["embedding"].size(), 3u);
  auto again = run({"validate", "-"}, r.out);
  EXPECT_EQ(again.code, 0);
}

TEST(Cli, CompleteWithOperator)
{
  auto r = run({"complete", fx("A3c_domain"), "--with-op", "domain"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.doc()["operators"].contains("domain"));
  EXPECT_EQ(run({"complete", fx("A3c_domain"), "--with-op", "nope"}).code, 2);
}

TEST(Cli, RoundtripOnEveryFixture)
{
  for (const auto &name : algebra_fixtures) {
    auto r = run({"roundtrip", fx(name)});
    EXPECT_EQ(r.code, 0) << name << r.out << r.err;
    auto s = run({"dualize", fx(name)});
    ASSERT_EQ(s.code, 0) << name;
    auto rs = run({"roundtrip", "-"}, s.out);
    EXPECT_EQ(rs.code, 0) << name << rs.out;
  }
  EXPECT_EQ(run({"roundtrip", fx("two_sheets")}).code, 0);
}

TEST(Cli, ValidateExitCodes)
{
  EXPECT_EQ(run({"validate", fx("A3c")}).code, 0);
  auto m = run({"validate", fx("A3c_mutant")});
  EXPECT_EQ(m.code, 1);
  EXPECT_EQ(m.doc()["violations"][0]["axiom"], "Ax.4");
  EXPECT_EQ(run({"validate", fx("indiscrete")}).code, 1);
  EXPECT_EQ(run({"validate", fx("two_sheets")}).code, 0);
  EXPECT_EQ(run({"validate", fx("A3c_to_B4")}).code, 0);
  EXPECT_EQ(run({"validate", fx("A3c_to_B4_not_hom")}).code, 1);
}

TEST(Cli, InputErrors)
{
  auto missing = run({"validate", "/nonexistent/file.json"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_TRUE(json::parse(missing.err).contains("error"));
  auto bad = run({"validate", "-"}, "{\"kind\": \"algebra\", ");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(json::parse(bad.err)["error"]["path"].get<std::string>().front(), '@');
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"complete", fx("A3c_mutant")}).code, 2);
  EXPECT_EQ(run({"dualize", fx("indiscrete")}).code, 2);
  EXPECT_EQ(run({"catalog", "--fixture", "nope"}).code, 2);
}

TEST(Cli, Help)
{
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classify-op"), std::string::npos);
}

TEST(Cli, Filters)
{
  auto r = run({"filters", fx("A3i")});
  ASSERT_EQ(r.code, 0);
  json d = r.doc();
  EXPECT_EQ(d["points"].size(), 2u);
  EXPECT_EQ(d["classes"].size(), 1u);
  EXPECT_EQ(d["hat"]["0"].size(), 0u);
}

TEST(Cli, DualizeBothWays)
{
  auto s = run({"dualize", fx("A3c")});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(s.doc()["kind"], "space");
  auto a = run({"dualize", "-"}, s.out);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.doc()["elements"].size(), 4u);
}

TEST(Cli, CheckHom)
{
  auto r = run({"check-hom", fx("A3c_to_B4")});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.doc()["embedding"].get<bool>());
  EXPECT_FALSE(r.doc()["proper"].get<bool>());
  EXPECT_EQ(run({"check-hom", fx("A3c_to_B4_not_hom")}).code, 1);
  auto d = run({"check-hom", "--dualize", fx("A3c_to_B4")});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(d.doc()["between"], "spaces");
  auto back = run({"check-hom", "--dualize", "-"}, d.out);
  ASSERT_EQ(back.code, 0) << back.err;
  EXPECT_EQ(back.doc()["between"], "algebras");
  EXPECT_EQ(run({"check-hom", "-"}, d.out).code, 0);
}

TEST(Cli, CheckOp)
{
  EXPECT_EQ(run({"check-op", fx("A3c_domain"), "domain"}).code, 0);
  EXPECT_EQ(run({"check-op", fx("A3c"), "meet"}).code, 0);
  auto shift = run({"check-op", fx("A3c_domain"), fx("shift_op")});
  EXPECT_EQ(shift.code, 1);
  EXPECT_FALSE(shift.doc()["classification"]["normal"]["ok"].get<bool>());
  auto rel = run({"check-op", fx("A3c_domain"), "domain", "--relation"});
  ASSERT_EQ(rel.code, 0);
  EXPECT_EQ(rel.doc()["kind"], "relation");
  EXPECT_EQ(rel.doc()["tuples"].size(), 2u);
  EXPECT_EQ(run({"check-op", fx("A3c"), "nonsense"}).code, 2);
}

TEST(Cli, ClassifyOp)
{
  auto r = run({"classify-op", fx("CONV")});
  ASSERT_EQ(r.code, 0);
  json d = r.doc();
  bool saw = false;
  for (const auto &row : d["operations"])
    if (row["operation"] == "converse") {
      saw = true;
      EXPECT_FALSE(row["classification"]["compatibility_preserving"]["ok"].get<bool>());
      EXPECT_TRUE(row["classification"]["normal"]["ok"].get<bool>());
      EXPECT_TRUE(row["classification"]["additive"]["ok"].get<bool>());
    }
  EXPECT_TRUE(saw);
  EXPECT_EQ(run({"classify-op", fx("A3c_domain")}).code, 2);
}

TEST(Cli, CatalogMatchesFixtureFiles)
{
  auto r = run({"catalog"});
  ASSERT_EQ(r.code, 0);
  json d = r.doc();
  for (const auto &entry : d["fixtures"]) {
    std::string name = entry["name"];
    std::ifstream f(fx(name));
    ASSERT_TRUE(f.good()) << name;
    EXPECT_EQ(json::parse(f), entry["document"]) << name;
  }
}

TEST(Cli, Deterministic)
{
  for (const auto &args : std::vector<std::vector<std::string>>{
           {"complete", fx("A4f")}, {"filters", fx("PF2")}, {"classify-op", fx("PF2")}, {"catalog"}}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}
