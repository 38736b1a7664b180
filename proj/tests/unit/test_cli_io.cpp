#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "../common/fixtures.hpp"
#include "hts/cli_io.hpp"
#include "hts/error.hpp"
#include "hts/extension.hpp"

using namespace hts;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content = {}) {
  const auto path = std::filesystem::temp_directory_path() / ("hts_test_" + name);
  if (!content.empty()) {
    std::ofstream f(path);
    f << content;
  }
  return path.string();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t c = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
  return c;
}

}  // namespace

TEST_CASE("hierarchy documents round trip") {
  const HierSpec s = fixtures::bicubic_three_levels();
  CHECK(s.m == 3);
  CHECK(s.p == 5);
  CHECK(s.q == 6);
  const std::string text = serialize(document_of(s));
  const MeshDocument back = parse_mesh(text);
  REQUIRE(back.hierarchical());
  CHECK(serialize(back) == text);
  CHECK(hierarchy_of(back).mesh.cells().size() == 84);
}

TEST_CASE("segment documents round trip") {
  const Hierarchy h = generate(fixtures::bicubic_three_levels());
  const TMesh e = extend(h.mesh, 3, 3);
  const std::string text = serialize(document_of(e, 3, 3));
  const MeshDocument back = parse_mesh(text);
  CHECK_FALSE(back.hierarchical());
  CHECK(back.extension_depth == 1);
  const TMesh t = mesh_of(back);
  CHECK(t.vertices().size() == e.vertices().size());
  CHECK(t.ledges().size() == e.ledges().size());
  CHECK(serialize(document_of(t, 3, 3)) == text);
  CHECK_THROWS_WITH_AS(hierarchy_of(back), doctest::Contains("NotInClass"), Error);
}

TEST_CASE("mesh syntax errors carry line numbers") {
  SUBCASE("zero denominator") {
    const std::string text = "hts-mesh 1\ndegree 2 2\nkind segments\nh 3/0 0 1\nend\n";
    CHECK_THROWS_WITH_AS(parse_mesh(text), doctest::Contains("line 4"), Error);
    try {
      parse_mesh(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SyntaxError);
    }
  }
  SUBCASE("unknown keyword") {
    CHECK_THROWS_WITH_AS(parse_mesh("hts-mesh 1\n# comment\nwidth 3\n"), doctest::Contains("line 3"), Error);
  }
  SUBCASE("missing header") { CHECK_THROWS_AS(parse_mesh("degree 2 2\n"), Error); }
}

TEST_CASE("semantic errors") {
  SUBCASE("child of a block never split") {
    const std::string text = "hts-mesh 1\ndegree 3 3\nkind hierarchy\nsize 4 4\nlevel 0 0,0\nlevel 1 1,1/0,0\nend\n";
    try {
      parse_mesh(text);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SemanticError);
    }
  }
  SUBCASE("dangling segment") {
    const std::string text =
        "hts-mesh 1\ndegree 2 2\nkind segments\n"
        "h 0 0 2\nh 2 0 2\nv 0 0 2\nv 2 0 2\nv 1 0 1\nend\n";
    try {
      parse_mesh(text);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SemanticError);
    }
  }
}

TEST_CASE("vector documents round trip") {
  VectorDocument d;
  d.m = 2;
  d.n = 3;
  VectorRecord r;
  r.factors[{Coord(1, 2), Coord(3)}] = -4;
  r.factors[{Coord(0), Coord(-1)}] = Rational(5, 3);
  r.info["level"] = "1";
  d.vectors.push_back(r);
  const std::string text = serialize(d);
  const VectorDocument back = parse_vectors(text);
  REQUIRE(back.vectors.size() == 1);
  CHECK(back.vectors[0].factors == r.factors);
  CHECK(back.vectors[0].info.at("level") == "1");
  CHECK(serialize(back) == text);
  std::string wrong = text;
  wrong.replace(wrong.find("count 1"), 7, "count 2");
  CHECK_THROWS_WITH_AS(parse_vectors(wrong), doctest::Contains("SemanticError"), Error);
}

TEST_CASE("SVG output is deterministic with one line per edge") {
  const Hierarchy h = generate(fixtures::bicubic_three_levels());
  const std::string a = render_svg(h.mesh);
  CHECK(a == render_svg(h.mesh));
  CHECK(count(a, "<line") == h.mesh.edges().size());
  RenderOptions o;
  o.color_levels = true;
  const std::string c = render_svg(h.mesh, o);
  CHECK(count(c, std::string(level_color(0))) > 0);
  CHECK(count(c, std::string(level_color(1))) > 0);
  CHECK(count(c, std::string(level_color(2))) > 0);
  CHECK(level_color(1) != level_color(2));
}

TEST_CASE("command line: dim, basis, check and eval") {
  const std::string mesh = fixtures::data_path("bicubic_three_levels.tm");
  const Run dim = run({"dim", mesh});
  CHECK(dim.code == 0);
  CHECK(dim.out.find("dim = 93") != std::string::npos);

  const std::string vec = temp_file("example.vec");
  const Run basis = run({"basis", mesh, "-o", vec});
  CHECK(basis.code == 0);
  CHECK(basis.out.find("functions: 93") != std::string::npos);

  const Run check = run({"check", mesh, "--vectors", vec});
  CHECK(check.code == 0);
  CHECK(check.out.find("conformal: 93") != std::string::npos);

  const Run eval = run({"eval", mesh, vec, "--at", "1/2,1/3", "--index", "0"});
  CHECK(eval.code == 0);
  CHECK_FALSE(eval.out.empty());

  const Run bad = run({"eval", mesh, vec, "--at", "1/0,1"});
  CHECK(bad.code == 2);
}

TEST_CASE("command line: formula-only on a segment file is rejected") {
  const Hierarchy h = generate(fixtures::bicubic_three_levels());
  const std::string path = temp_file("segments.tm", serialize(document_of(h.mesh, 3, 3)));
  const Run r = run({"dim", path, "--formula-only"});
  CHECK(r.code == 2);
  CHECK(r.err.find("NotInClass") != std::string::npos);
  const Run oracle = run({"dim", path, "--oracle-only"});
  CHECK(oracle.code == 0);
  CHECK(oracle.out.find("93") != std::string::npos);
}

TEST_CASE("command line: input errors exit with 2") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"dim", temp_file("missing_does_not_exist.tm")}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
