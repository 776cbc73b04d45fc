#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "io.hpp"
#include "resq/fixtures.hpp"

namespace resq {
namespace {

namespace fs = std::filesystem;

std::string fixture(const std::string& name) { return std::string(RESQ_FIXTURE_DIR) + "/" + name; }

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(RoundTrip, FixturesAreCanonical) {
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(RESQ_FIXTURE_DIR)) {
    if (!entry.is_regular_file()) continue;
    std::string text = io::read_file(entry.path().string());
    EXPECT_EQ(io::normalize(text, entry.path().string()), text) << entry.path();
    ++files;
  }
  EXPECT_GE(files, 20u);
}

TEST(RoundTrip, AlgebraStructure) {
  for (const char* name : {"godel3.alg", "luk4.alg", "noncomm4.alg", "luk3_dual.alg", "pentagon.alg", "bool2.alg"}) {
    io::AlgebraFile a = io::load_algebra(fixture(name));
    io::AlgebraFile b = io::parse_algebra(io::parse_json(io::dump(io::to_json(a))));
    EXPECT_EQ(a.kind, b.kind) << name;
    EXPECT_EQ(a.order, b.order) << name;
    ASSERT_EQ(a.rl.has_value(), b.rl.has_value());
    if (a.rl) {
      EXPECT_EQ(a.rl->mult, b.rl->mult);
      EXPECT_EQ(a.rl->lres, b.rl->lres);
      EXPECT_EQ(a.rl->rres, b.rl->rres);
      EXPECT_EQ(a.rl->arrow, b.rl->arrow);
    }
    EXPECT_EQ(a.d, b.d);
  }
}

TEST(RoundTrip, GeneratedAlgebras) {
  for (const ResiduatedLattice& l : enumerate_residuated_lattices(4)) {
    io::AlgebraFile a = io::algebra_file(l);
    std::string once = io::dump(io::to_json(a));
    io::AlgebraFile b = io::parse_algebra(io::parse_json(once));
    ASSERT_TRUE(b.rl);
    EXPECT_EQ(b.rl->mult, l.mult);
    EXPECT_EQ(io::dump(io::to_json(b)), once);
  }
}

TEST(RoundTrip, TheoryPresentationQuasi) {
  Theory th = theories::hrl();
  Theory back = io::parse_theory(io::parse_json(io::dump(io::to_json(th))));
  EXPECT_EQ(back.sig, th.sig);
  ASSERT_EQ(back.axioms.size(), th.axioms.size());
  for (std::size_t i = 0; i < th.axioms.size(); ++i) EXPECT_TRUE(back.axioms[i] == th.axioms[i]);

  io::PresentationFile p = io::parse_presentation(io::read_json(fixture("nested.pres")));
  io::PresentationFile q = io::parse_presentation(io::parse_json(io::dump(io::to_json(p))));
  EXPECT_EQ(q.pres.vars, p.pres.vars);
  EXPECT_TRUE(q.pres.relations == p.pres.relations);

  QuasiEquation qe = io::parse_quasi(th.sig, io::read_json(fixture("commutativity.qe")));
  QuasiEquation qe2 = io::parse_quasi(th.sig, io::parse_json(io::dump(io::to_json(th.sig, qe))));
  EXPECT_TRUE(qe2.conclusion == qe.conclusion);
}

TEST(RoundTrip, PartialAlgebra) {
  PartialAlgebra a = io::load_algebra(fixture("godel3_frag.palg")).partial;
  EXPECT_EQ(a.defined_entries(), 3u);
  PartialAlgebra b = io::parse_partial(io::parse_json(io::dump(io::to_json(a))));
  EXPECT_TRUE(a == b);
}

TEST(Parse, Errors) {
  EXPECT_THROW(io::parse_json("{\n  \"a\": \n}", "f"), ParseError);
  EXPECT_THROW(io::load_algebra(fixture("invalid/nonassoc.alg")), ValidationError);
  EXPECT_THROW(io::load_algebra(fixture("invalid/cycle.alg")), ValidationError);
  EXPECT_THROW(io::parse_algebra(io::parse_json(R"({"elements": ["a"], "covers": [["a", "b"]]})")), Error);
}

TEST(Dump, InlineWidth) {
  io::Json j = io::Json::object();
  j["v"] = {1, 2, 3};
  j["n"] = io::Json::array({io::Json::array({1}), io::Json::array({2})});
  EXPECT_EQ(io::dump(j), "{\n  \"v\": [1, 2, 3],\n  \"n\": [\n    [1],\n    [2]\n  ]\n}\n");
}

TEST(Digest, Fnv1a) {
  EXPECT_EQ(io::hex64(io::fnv1a("")), "cbf29ce484222325");
  EXPECT_EQ(io::hex64(io::fnv1a("a")), "af63dc4c8601ec8c");
}

TEST(Report, DigestCoversBody) {
  CliRun r = run({"validate", fixture("godel3.alg")});
  ASSERT_EQ(r.code, 0) << r.err;
  io::Json j = io::parse_json(r.out);
  std::string digest = j["digest"];
  j.erase("digest");
  EXPECT_EQ(io::hex64(io::fnv1a(io::dump(j))), digest);
  EXPECT_EQ(j["result"]["kind"], "heyting-rl");
}

TEST(Report, Deterministic) {
  const std::vector<std::vector<std::string>> cmds = {
      {"validate", fixture("luk4.alg")},
      {"dm", fixture("pentagon.alg")},
      {"fep", fixture("godel3.alg"), "--subset", "a,1"},
      {"models", "--axioms", fixture("irl.ax"), "--quasi", fixture("commutativity.qe"), "--max-size", "4"},
      {"wp", "--axioms", fixture("semilattice.ax"), "--pres", fixture("semilattice.pres"), "--query", "(meet y x)", "x"},
      {"f-order", "--random", "200", "--seed", "5"},
  };
  for (const auto& c : cmds) {
    CliRun a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code) << c[0];
    EXPECT_EQ(a.out, b.out) << c[0];
  }
  auto m1 = run({"models", "--axioms", fixture("hrl.ax"), "--size", "4", "--jobs", "1"});
  auto m4 = run({"models", "--axioms", fixture("hrl.ax"), "--size", "4", "--jobs", "4"});
  EXPECT_EQ(m1.out, m4.out);
}

TEST(Exit, Codes) {
  EXPECT_EQ(run({"validate", fixture("godel3.alg")}).code, cli::kOk);
  EXPECT_EQ(run({"validate", fixture("invalid/nonassoc.alg")}).code, cli::kInvalid);
  EXPECT_EQ(run({"validate", fixture("missing.alg")}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"ideals", fixture("vee.alg")}).code, cli::kOk);
  EXPECT_EQ(run({"thm35", fixture("godel3.alg"), "--completion", "dm"}).code, cli::kOk);
  EXPECT_EQ(run({"involutive", fixture("luk3.alg"), "--d", "0"}).code, cli::kOk);
  EXPECT_EQ(run({"involutive", "--alg", fixture("luk3.alg"), "--d", "0", "--check-thm44"}).code, cli::kOk);
  EXPECT_EQ(run({"involutive", "--alg", fixture("godel3.alg"), "--d", "0", "--check-thm44"}).code, cli::kNegative);
  EXPECT_EQ(run({"thm35", "--poset", fixture("godel3.alg"), "--system", fixture("godel3.set")}).code, cli::kOk);
  EXPECT_EQ(run({"fep", fixture("godel3.alg"), "--subset", "a,1"}).code, cli::kOk);
  EXPECT_EQ(run({"fep", fixture("luk4.alg"), "--subset", "1/3", "--involutive", "--d", "0"}).code, cli::kOk);
  EXPECT_EQ(run({"models", "--axioms", fixture("irl.ax"), "--quasi", fixture("reflexive.qe"), "--max-size", "3"}).code,
            cli::kUnknown);
  const std::string sl = fixture("semilattice.ax"), pres = fixture("semilattice.pres");
  EXPECT_EQ(run({"wp", "--axioms", sl, "--pres", pres, "--query", "(meet x y)", "x"}).code, cli::kOk);
  EXPECT_EQ(run({"wp", "--axioms", sl, "--pres", pres, "--query", "x", "y"}).code, cli::kNegative);
  EXPECT_EQ(run({"wp", "--axioms", sl, "--pres", pres, "--query", "x", "y", "--budget", "0ms"}).code, cli::kUnknown);
  EXPECT_EQ(run({"flatten", fixture("nested.pres")}).code, cli::kOk);
  EXPECT_EQ(run({"diagram", fixture("godel3_frag.palg")}).code, cli::kOk);
  EXPECT_EQ(run({"f-order", "--leq", "(dot x y)", "x"}).code, cli::kOk);
  EXPECT_EQ(run({"f-order", "x", "(dot x y)"}).code, cli::kNegative);
  EXPECT_EQ(run({"f-res", "--r", "x", "--t", "(dot x y)", "--op", "dot", "--side", "left"}).code, cli::kOk);
  Guards g = Guards::parse("max_ideals=3");
  EXPECT_EQ(g.max_ideals, 3u);
}

TEST(Cli, DotOutput) {
  CliRun r = run({"dm", fixture("pentagon.alg"), "--dot"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
}

TEST(Cli, Durations) {
  EXPECT_EQ(cli::parse_duration("250ms").count(), 250);
  EXPECT_EQ(cli::parse_duration("10s").count(), 10000);
  EXPECT_EQ(cli::parse_duration("2m").count(), 120000);
  EXPECT_EQ(cli::parse_duration("3").count(), 3000);
  EXPECT_THROW(cli::parse_duration("fast"), std::exception);
}

}  // namespace
}  // namespace resq
