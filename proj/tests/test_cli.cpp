#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pretor/cli.hpp"
#include "pretor/gallery.hpp"
#include "pretor/spec_format.hpp"

using namespace pretor;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_file(const std::string& name, const std::string& content) {
  std::ofstream f(name, std::ios::binary);
  f << content;
  return name;
}

std::string golden(const std::string& gallery_name) {
  auto spec = gallery_spec(gallery_name);
  REQUIRE(spec.has_value());
  return write_file("cli_" + gallery_name + ".cat", serialize(*spec));
}

}  // namespace

TEST_CASE("the two object gallery document is stable") {
  RunResult r = run({"gallery", "two"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "poset\n"
        "objects: 0 1\n"
        "covers:\n"
        "  0 < 1\n"
        "sub T: 0 1\n"
        "sub F: 1\n"
        "sub Z: 1\n");
  CHECK(r.err.empty());
}

TEST_CASE("gallery documents parse back to their spec") {
  for (const char* name : {"two", "n5", "chain4", "endomap2", "preord2"}) {
    RunResult r = run({"gallery", name});
    REQUIRE(r.code == 0);
    CHECK(parse_spec(r.out) == *gallery_spec(name));
  }
  RunResult bad = run({"gallery", "nonesuch"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("no gallery category") != std::string::npos);
}

TEST_CASE("gallery names use a short numeric suffix") {
  CHECK(gallery_spec("chain12").has_value());
  CHECK(gallery_spec("chain12")->kind == CategorySpec::Kind::chain);
  CHECK(gallery_spec("chain12")->param == 12);
  CHECK(gallery_spec("preord2")->kind == CategorySpec::Kind::preord);
  CHECK_FALSE(gallery_spec("chain").has_value());
  CHECK_FALSE(gallery_spec("chainx").has_value());
  CHECK_FALSE(gallery_spec("chain1234").has_value());
  CHECK_FALSE(gallery_spec("pentagon").has_value());
}

TEST_CASE("validate reports totals or the broken laws") {
  std::string ok = golden("n5");
  RunResult good = run({"validate", ok});
  CHECK(good.code == 0);
  CHECK(good.out == "valid category: 5 objects, 13 morphisms\n");

  RunResult lines = run({"--format=lines", "validate", ok});
  CHECK(lines.code == 0);
  CHECK(lines.out == "command=validate\nvalid=true\nobjects=5\nmorphisms=13\n");

  std::string dup = write_file("cli_dup.cat", "objects: a a\n");
  RunResult bad = run({"validate", dup});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("duplicate-id") != std::string::npos);

  RunResult bad_lines = run({"validate", dup, "--format=lines"});
  CHECK(bad_lines.code == 1);
  CHECK(bad_lines.out.find("valid=false\n") != std::string::npos);
  CHECK(bad_lines.out.find("violation=duplicate-id") != std::string::npos);

  RunResult missing = run({"validate", "cli_missing.cat"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot read file") != std::string::npos);
}

TEST_CASE("parse failures carry a position") {
  std::string bad = write_file("cli_parse.cat", "objects: a\nmorphisms:\n  f a -> a\n");
  RunResult r = run({"validate", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("check accepts sub references and reports the verdict") {
  std::string n5_file = golden("n5");
  RunResult ok = run({"check", n5_file, "--torsion", "@T", "--free", "@F"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("Valid\n") == 0);
  CHECK(ok.out.find("trivials: Z Z'") != std::string::npos);
  CHECK(ok.out.find("C: T --T<=C--> C --C<=F--> F") != std::string::npos);

  RunResult bad = run({"check", n5_file, "--torsion", "T", "--free", "F"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("axiom 1 violated") != std::string::npos);
  CHECK(bad.out.find("T<=F") != std::string::npos);

  RunResult unknown = run({"check", n5_file, "--torsion", "@Missing", "--free", "@F"});
  CHECK(unknown.code == 2);

  RunResult empty_entry = run({"check", n5_file, "--torsion", "T,,Z", "--free", "@F"});
  CHECK(empty_entry.code == 2);
  CHECK(empty_entry.err.find("empty entry") != std::string::npos);
}

TEST_CASE("class flags close under isomorphism with a note") {
  std::string file = golden("endomap2");
  RunResult r = run({"check", file, "--torsion", "@T", "--free",
                     "e0,e1_1,e2_11,e2_12"});
  CHECK(r.code == 0);
  CHECK(r.err.find("note: --free closed under isomorphism; added e2_22") !=
        std::string::npos);
}

TEST_CASE("axiom two failures print the attempted candidates") {
  std::string file = golden("chain2");
  RunResult r = run({"check", file, "--torsion", "2", "--free", "1,2"});
  CHECK(r.code == 1);
  CHECK(r.out.find("axiom 2 violated") != std::string::npos);
  CHECK(r.out.find("object 1") != std::string::npos);
}

TEST_CASE("enumerate lists theories and matches the chain closed form") {
  std::string file = golden("chain4");
  RunResult r = run({"enumerate", file, "--oracle", "chain"});
  CHECK(r.code == 0);
  CHECK(r.out.find("theories: 21") != std::string::npos);
  CHECK(r.out.find("oracle agreement: 21 theories") != std::string::npos);

  RunResult lines = run({"--format=lines", "enumerate", file});
  CHECK(lines.code == 0);
  CHECK(lines.out.find("command=enumerate\ncount=21\n") == 0);
  CHECK(lines.out.find("theory=1|1,2,3,4\n") != std::string::npos);

  RunResult shape = run({"enumerate", golden("n5"), "--oracle", "chain"});
  CHECK(shape.code == 2);
  CHECK(shape.err.find("--oracle chain needs") != std::string::npos);
}

TEST_CASE("decompose prints one sequence or all of them") {
  std::string file = golden("n5");
  RunResult all = run({"decompose", file, "--torsion", "@T", "--free", "@F"});
  CHECK(all.code == 0);
  CHECK(all.out.find("canonical sequences:") == 0);
  CHECK(all.out.find("F: Z' --Z'<=F--> F --F<=F--> F") != std::string::npos);

  RunResult one = run({"decompose", file, "--torsion", "@T", "--free", "@F",
                       "--object", "C"});
  CHECK(one.code == 0);
  CHECK(one.out ==
        "canonical sequence:\n  C: T --T<=C--> C --C<=F--> F\n");

  RunResult unknown = run({"decompose", file, "--torsion", "@T", "--free",
                           "@F", "--object", "Q"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("unknown object") != std::string::npos);
}

TEST_CASE("closure prints one line per claim") {
  std::string file = golden("two");
  RunResult r = run({"closure", file, "--torsion", "@T", "--free", "@F"});
  CHECK(r.code == 0);
  CHECK(r.out.find("torsion-retract-closed: verified\n") == 0);
  CHECK(r.out.find("precokernels-regular-epi:") != std::string::npos);

  RunResult lines = run({"--format=lines", "closure", file, "--torsion", "@T",
                         "--free", "@F"});
  CHECK(lines.code == 0);
  CHECK(lines.out.find("command=closure\n") == 0);
  CHECK(lines.out.find("closure=torsion-retract-closed|verified|\n") !=
        std::string::npos);
}

TEST_CASE("line output is byte stable across runs") {
  std::string n5_file = golden("n5");
  std::string c3 = golden("chain3");
  std::vector<std::vector<std::string>> cases = {
      {"--format=lines", "validate", n5_file},
      {"--format=lines", "check", n5_file, "--torsion", "@T", "--free", "@F"},
      {"--format=lines", "enumerate", c3, "--oracle", "chain"},
      {"--format=lines", "decompose", n5_file, "--torsion", "@T", "--free", "@F"},
      {"--format=lines", "closure", n5_file, "--torsion", "@T", "--free", "@F"},
      {"gallery", "preord2"},
  };
  for (const auto& args : cases) {
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("usage errors exit with the input error code") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check", "x.cat"}).code == 2);  // missing required flags
  CHECK(run({"--format=xml", "gallery", "two"}).code == 2);
  RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("validate") != std::string::npos);
}

TEST_CASE("directive documents parse to their kind") {
  CategorySpec s = parse_spec("# a comment\nchain 6\n");
  CHECK(s.kind == CategorySpec::Kind::chain);
  CHECK(s.param == 6);

  CategorySpec e = parse_spec("endomap 2");
  CHECK(e.kind == CategorySpec::Kind::endomap);

  CHECK_THROWS_AS((void)parse_spec("chain 6\nobjects: a\n"), Error);
  CHECK_THROWS_AS((void)parse_spec("objects: a\nchain 6\n"), Error);
  CHECK_THROWS_AS((void)parse_spec("chain banana\n"), Error);
}

TEST_CASE("poset documents take covers and subs only") {
  CategorySpec s = parse_spec(
      "poset\n"
      "objects: x y\n"
      "covers:\n"
      "  x < y\n"
      "sub All: x y\n");
  CHECK(s.kind == CategorySpec::Kind::poset);
  CHECK(s.covers.size() == 1);
  CHECK(s.subs.size() == 1);

  CHECK_THROWS_AS((void)parse_spec("poset\nmorphisms:\n"), Error);
  CHECK_THROWS_AS((void)parse_spec("objects: a\ncovers:\n"), Error);
}

TEST_CASE("explicit documents reject malformed rows with positions") {
  try {
    (void)parse_spec("objects: a\nmorphisms:\n  f : a a\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(e.line == 3);
    CHECK(e.col > 0);
  }

  CHECK_THROWS_AS((void)parse_spec("objects: a\nidentities:\n  a a a\n"), Error);
  CHECK_THROWS_AS((void)parse_spec("nonsense\n"), Error);
}

TEST_CASE("specs survive a serialize and parse round trip") {
  for (const char* name : {"two", "n5", "chain3", "endomap3", "preord2"}) {
    CategorySpec s = *gallery_spec(name);
    CHECK(parse_spec(serialize(s)) == s);
  }
}

TEST_CASE("categories rebuild identically from their emitted document") {
  FinCategory c = n5();
  std::vector<NamedSub> subs = {{"T", {"T", "Z", "Z'"}}};
  std::string text = serialize(c, subs);
  SpecBuild b = build_from_spec(parse_spec(text));
  REQUIRE(b.outcome.ok());
  CHECK(*b.outcome.category == c);
  CHECK(b.subs == subs);
}

TEST_CASE("identity composites may be omitted from explicit documents") {
  SpecBuild b = build_from_spec(parse_spec(
      "objects: a b\n"
      "morphisms:\n"
      "  ida : a -> a\n"
      "  idb : b -> b\n"
      "  f : a -> b\n"
      "identities:\n"
      "  a = ida\n"
      "  b = idb\n"));
  REQUIRE(b.outcome.ok());
  CHECK(b.outcome.category->morphism_count() == 3);
}

TEST_CASE("unresolved names are reported instead of thrown") {
  SpecBuild b = build_from_spec(parse_spec(
      "objects: a\n"
      "morphisms:\n"
      "  ida : a -> ghost\n"
      "identities:\n"
      "  a = ida\n"));
  CHECK_FALSE(b.outcome.ok());
  CHECK(b.outcome.report.has_rule("unknown-object"));
}
