#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "foxfree/cli.hpp"
#include "foxfree/freiheit.hpp"

using namespace foxfree;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = std::string("cli_test_") + std::to_string(counter++) + ".tmp";
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
  static int counter;
};
int TempFile::counter = 0;

std::string commutator_pres() {
  FactorTable t = FactorTable::free_letters({"x1", "x2", "x3"});
  return save_presentation(make_presentation(t, {t.parse("x1^-1 x2^-1 x1 x2")}));
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("derive prints the serialized derivative") {
    RunResult r = run({"derive", "--gen", "x", "--word", "x^-1"});
    CHECK(r.code == 0);
    CHECK(r.out == "-1*x^-1\n");
  }

  TEST_CASE("fundamental-check reports a zero defect") {
    RunResult r = run({"fundamental-check", "--word", "x y"});
    CHECK(r.code == 0);
    CHECK(r.out == "defect = 0\n");
  }

  TEST_CASE("magnus expand and lcs") {
    RunResult e = run({"magnus", "expand", "--cap", "3", "--word", "x"});
    CHECK(e.code == 0);
    CHECK(e.out == "1 + x\n");

    RunResult l = run({"magnus", "lcs", "--cap", "3", "--word", "x^-1 y^-1 x y"});
    CHECK(l.code == 0);
    CHECK(l.out == "2\n");

    RunResult sentinel = run({"magnus", "lcs", "--cap", "3", "--word", "x x^-1"});
    CHECK(sentinel.code == 0);
    CHECK(sentinel.out == ">=4\n");
  }

  TEST_CASE("schreier build dumps the table") {
    TempFile pres(commutator_pres());
    RunResult r = run({"schreier", "build", "--factors", "x,y", "--radius", "2", "--P", "x"});
    CHECK(r.code == 0);
    CHECK(r.out.find(" | alpha") != std::string::npos);
    // Identity coset line comes first in canonical key order.
    CHECK(r.out.substr(0, 4) == "-2,0");
  }

  TEST_CASE("jacobian and select") {
    TempFile pres(commutator_pres());
    RunResult j = run({"jacobian", pres.path});
    CHECK(j.code == 0);
    CHECK(j.out == "-1 + t2, 1 - t1, 0\n");

    RunResult s = run({"select", pres.path});
    CHECK(s.code == 0);
    CHECK(s.out.find("J = {x2, x3}") != std::string::npos);

    RunResult sj = run({"--format", "json", "select", pres.path});
    CHECK(sj.code == 0);
    CHECK(sj.out.find("\"J\": [") != std::string::npos);
    CHECK(sj.out.find("\"x2\"") != std::string::npos);
  }

  TEST_CASE("verify reports none and counterexamples") {
    TempFile pres(commutator_pres());
    RunResult none = run({"verify", pres.path, "--J", "2,3", "--bounds", "2,2,6,3"});
    CHECK(none.code == 0);
    CHECK(none.out == "none\n");

    FactorTable t = FactorTable::free_letters({"x1", "x2"});
    TempFile bad(save_presentation(make_presentation(t, {t.parse("x1 x2^-1")})));
    RunResult cex = run({"verify", bad.path, "--J", "1,2"});
    CHECK(cex.code == 0);
    CHECK(cex.out.find("counterexample: witness = x1 x2^-1") != std::string::npos);
    CHECK(cex.out.find("certificate:") != std::string::npos);
  }

  TEST_CASE("replay applies a stored log") {
    TempFile log("swap-cols 1 2\nscale-row 1 t1\n");
    RunResult r = run({"replay", "--matrix", "t1 - 1, 2", "--log", log.path, "--vars", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "2*t1, -t1 + t1^2\n");
  }

  TEST_CASE("exit codes") {
    RunResult unknown = run({"frobnicate"});
    CHECK(unknown.code == 64);
    CHECK(unknown.err.find("Usage") != std::string::npos);

    RunResult bad_word = run({"derive", "--gen", "x", "--word", "x^oops"});
    CHECK(bad_word.code == 2);

    TempFile pres(commutator_pres());
    RunResult missing = run({"select", "no_such_file.json"});
    CHECK(missing.code == 2);
  }

  TEST_CASE("reports are byte-deterministic") {
    TempFile pres(commutator_pres());
    RunResult a = run({"select", pres.path});
    RunResult b = run({"select", pres.path});
    CHECK(a.out == b.out);
    RunResult c = run({"--seed", "7", "select", pres.path});
    CHECK(a.out == c.out);
  }

  TEST_CASE("presentation files round-trip through save/load") {
    std::string text = commutator_pres();
    Presentation p = load_presentation(text);
    CHECK(save_presentation(p) == text);
  }
}
