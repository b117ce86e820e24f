#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace dra;
using json = nlohmann::json;

namespace {

const std::filesystem::path fixture_dir = DRA_FIXTURE_DIR;

json load(const std::string &name)
{
  std::ifstream f(fixture_dir / name);
  std::stringstream ss;
  ss << f.rdbuf();
  return io::parse_text(ss.str());
}

std::string path_of(const std::function<void()> &f)
{
  try {
    f();
  } catch (const io::DocumentError &e) {
    return e.path();
  }
  return "<no error>";
}

json a3c_doc() { return io::emit_algebra(*fixtures::A3c().algebra, "A3c"); }

} // namespace

TEST(Io, FixtureFileParses)
{
  auto P = io::parse_pfalgebra(load("A3c.json"));
  EXPECT_EQ(P.name, "A3c");
  EXPECT_EQ(P.abstract()->size(), 3u);
  EXPECT_TRUE(same_algebra(*P.abstract(), *fixtures::A3c().algebra));
}

TEST(Io, NormalizationIsIdempotent)
{
  for (const auto &entry : std::filesystem::directory_iterator(fixture_dir)) {
    json d = load(entry.path().filename().string());
    if (io::kind_of(d) == "operator")
      continue;
    json once = io::normalize(d);
    EXPECT_EQ(io::normalize(once), once) << entry.path();
  }
}

TEST(Io, AlgebraRoundTrip)
{
  for (const auto &f : fixtures::catalog()) {
    auto parsed = io::parse_algebra(io::emit_algebra(*f.algebra, f.name));
    EXPECT_EQ(parsed.name, f.name);
    EXPECT_TRUE(same_algebra(*parsed.algebra, *f.algebra)) << f.name;
  }
}

TEST(Io, SpaceRoundTrip)
{
  auto S = F_object(fixtures::A3i().algebra).space;
  auto parsed = io::parse_space(io::emit_space(*S, "s"));
  EXPECT_EQ(parsed.space->points(), S->points());
  EXPECT_EQ(parsed.space->projection(), S->projection());
  EXPECT_EQ(parsed.space->basis(), S->basis());
}

TEST(Io, MorphismDocuments)
{
  auto m = io::parse_morphism(load("A3c_to_B4.json"));
  ASSERT_TRUE(m.between_algebras);
  EXPECT_TRUE(hom_check(*m.hom).is_embedding());
  auto Fh = F_morphism(*m.hom);
  auto sm = io::parse_morphism(io::emit_morphism(Fh));
  EXPECT_FALSE(sm.between_algebras);
  EXPECT_EQ(sm.point_map, Fh.map);
}

TEST(Io, GenerateForm)
{
  auto P = io::parse_pfalgebra(load("A3i_generated.json"));
  EXPECT_EQ(P.algebra.size(), 3u);
  EXPECT_EQ(P.element_names, (std::vector<std::string>{"{}", "f", "g"}));
  auto A = P.abstract();
  ASSERT_NE(A->extra("domain"), nullptr);
  json emitted = io::emit_pfalgebra(P);
  EXPECT_EQ(emitted["carrier"]["labels"], json::array({"u", "v"}));
}

TEST(Io, OperatorAndRelation)
{
  auto A = fixtures::A3c().algebra;
  auto [name, t] = io::parse_operator(load("shift_op.json"), *A);
  EXPECT_EQ(name, "shift");
  EXPECT_EQ(t.arity(), 1u);
  auto back = io::parse_operator(io::emit_operator(name, t, *A), *A);
  EXPECT_EQ(back.second, t);
  auto S = F_object(A).space;
  SpaceRelation R{"r", 2, {{0, 1}}};
  auto R2 = io::parse_relation(io::emit_relation(R, *S), *S);
  EXPECT_EQ(R2.tuples, R.tuples);
}

TEST(Io, DiagnosticsNameTheEntry)
{
  json d = a3c_doc();
  d["minus"][1].erase(2);
  EXPECT_EQ(path_of([&] { io::parse_algebra(d); }), "/minus/1");

  d = a3c_doc();
  d["rest"][2][0] = "zz";
  EXPECT_EQ(path_of([&] { io::parse_algebra(d); }), "/rest/2/0");

  d = a3c_doc();
  d.erase("minus");
  EXPECT_EQ(path_of([&] { io::parse_algebra(d); }), "/minus");

  d = a3c_doc();
  d["kind"] = "space";
  EXPECT_EQ(path_of([&] { io::parse_algebra(d); }), "/kind");

  d = a3c_doc();
  d["version"] = 7;
  EXPECT_EQ(path_of([&] { io::parse_algebra(d); }), "/version");

  d = a3c_doc();
  d["elements"][1] = "0";
  EXPECT_EQ(path_of([&] { io::parse_algebra(d); }), "/elements/1");

  d = a3c_doc();
  d["operators"] = {{"u", {{"arity", 1}, {"table", {"0", "a"}}}}};
  EXPECT_EQ(path_of([&] { io::parse_algebra(d); }), "/operators/u/table");
}

TEST(Io, SpaceAndMorphismDiagnostics)
{
  json s = load("two_sheets.json");
  s["projection"].erase("y0");
  EXPECT_EQ(path_of([&] { io::parse_space(s); }), "/projection");
  s = load("two_sheets.json");
  s["basis"][1][0] = "nope";
  EXPECT_EQ(path_of([&] { io::parse_space(s); }), "/basis/1/0");
  json m = load("A3c_to_B4.json");
  m["map"]["a"] = "missing";
  EXPECT_EQ(path_of([&] { io::parse_morphism(m); }), "/map/a");
  m = load("A3c_to_B4.json");
  m["source"]["minus"] = 3;
  EXPECT_EQ(path_of([&] { io::parse_morphism(m); }), "/source/minus");
}

TEST(Io, PfalgebraDiagnostics)
{
  json p = load("A3c.json");
  p["elements"][1]["graph"] = json::array({json::array({0, 5})});
  EXPECT_EQ(path_of([&] { io::parse_pfalgebra(p); }), "/elements/1/graph/0");
  p = load("A3c.json");
  p["elements"].erase(0);
  EXPECT_EQ(path_of([&] { io::parse_pfalgebra(p); }), "/elements");
  p = load("A3i_generated.json");
  p["generate"]["ops"] = json::array({"difference", "bogus"});
  EXPECT_EQ(path_of([&] { io::parse_pfalgebra(p); }), "/generate/ops/1");
  p = load("A3c.json");
  p["operators"] = json::array({"override"});
  EXPECT_EQ(path_of([&] { io::parse_pfalgebra(p); }), "/operators/0");
}

TEST(Io, MalformedJsonReportsOffset)
{
  EXPECT_EQ(path_of([] { io::parse_text("{\"kind\": "); }).front(), '@');
}
