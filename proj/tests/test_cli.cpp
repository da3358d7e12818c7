#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string binary_path() {
  const char* p = std::getenv("HOPFKIT_BIN");
  REQUIRE_MESSAGE(p != nullptr, "HOPFKIT_BIN must point at the CLI binary");
  return p;
}

RunResult run(const std::string& args, const std::string& pipe_in = "") {
  std::string cmd;
  if (!pipe_in.empty()) cmd += "printf '%s' '" + pipe_in + "' | ";
  cmd += binary_path() + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("transform is byte-exact and reproducible") {
  RunResult a = run("transform 1,2,6,24,120,720");
  CHECK(a.code == 0);
  CHECK(a.out == "1,1,3,13,71,461\n");
  RunResult b = run("transform 1,2,6,24,120,720");
  CHECK(b.out == a.out);

  RunResult j = run("--format json transform 1,2,6");
  CHECK(j.code == 0);
  CHECK(j.out == "[\"1\",\"1\",\"3\"]\n");
}

TEST_CASE("sequence outputs mirror the input format") {
  RunResult j = run("transform '[\"1\",\"2\",\"6\"]'");
  CHECK(j.code == 0);
  CHECK(j.out == "[\"1\",\"1\",\"3\"]\n");
  // An explicit flag overrides the mirroring.
  RunResult p = run("--format plain transform '[\"1\",\"2\",\"6\"]'");
  CHECK(p.out == "1,1,3\n");
  RunResult m = run("min-next '[\"1\",\"2\",\"3\"]'");
  CHECK(m.out == "\"5\"\n");
}

TEST_CASE("inverse and hadamard-transform") {
  CHECK(run("inverse 1,1,3,13,71,461").out == "1,2,6,24,120,720\n");
  RunResult r = run("hadamard-transform 1,1,3,13 1,1,3,13");
  CHECK(r.code == 0);
  CHECK(r.out == "1,3,29,499\n");
}

TEST_CASE("sequences can arrive on stdin") {
  RunResult r = run("transform -", "1,2,6");
  CHECK(r.code == 0);
  CHECK(r.out == "1,1,3\n");
}

TEST_CASE("feasibility reports and exit codes") {
  RunResult fib = run("feasibility 1,2,3,5,8");
  CHECK(fib.code == 1);
  auto j = nlohmann::json::parse(fib.out);
  CHECK(j["cubic"]["pass"] == false);
  CHECK(j["cubic"]["witness"]["lhs"] == "3");
  CHECK(j["boolean_nonneg"]["pass"] == true);
  CHECK(j["all_pass"] == false);

  RunResult fact = run("feasibility 1,2,6,24,120,720");
  CHECK(fact.code == 0);
  CHECK(nlohmann::json::parse(fact.out)["all_pass"] == true);

  RunResult csv = run("--format csv feasibility 1,2,3,5,8");
  CHECK(csv.code == 1);
  CHECK(csv.out.rfind("condition,pass,witness\n", 0) == 0);
}

TEST_CASE("min-next") {
  RunResult r = run("min-next 1,2,3");
  CHECK(r.code == 0);
  CHECK(r.out == "5\n");
}

TEST_CASE("dims and typegf") {
  RunResult d = run("dims --species \"free(star(X,X))\" --n 4");
  CHECK(d.code == 0);
  CHECK(d.out == "1,1,4,36,576\n");

  RunResult t = run("typegf --species Pi --n 4");
  CHECK(t.code == 0);
  CHECK(t.out == "1,1,2,3,5\n");

  RunResult tj = run("--format json typegf --species L --n 3");
  auto j = nlohmann::json::parse(tj.out);
  CHECK(j["order"] == 3);
  CHECK(j["coeffs"] == nlohmann::json({"1", "1", "1", "1"}));
}

TEST_CASE("basis listing is frozen") {
  RunResult r = run("basis --species \"star(X,X)\" --n 2");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "(w({1}:1,{2}:2),w({2}:2,{1}:1))\n"
        "(w({2}:2,{1}:1),w({1}:1,{2}:2))\n");
}

TEST_CASE("verify exits by verdict") {
  RunResult ok = run("verify --structure L --q 0 --n 3");
  CHECK(ok.code == 0);
  auto jok = nlohmann::json::parse(ok.out);
  CHECK(jok["failures"].empty());
  CHECK(jok["q"] == "0");

  RunResult bad = run("verify --structure mock-even --n 4");
  CHECK(bad.code == 1);
  auto jbad = nlohmann::json::parse(bad.out);
  REQUIRE(!jbad["failures"].empty());
  bool witness_seen = false;
  for (const auto& f : jbad["failures"])
    if (f["axiom"] == "compat" && f["S"] == nlohmann::json({1, 2}) &&
        f["Sp"] == nlohmann::json({1, 3}))
      witness_seen = true;
  CHECK(witness_seen);
}

TEST_CASE("oracle counts") {
  RunResult atomic = run("oracle atomic --n 6");
  CHECK(atomic.code == 0);
  CHECK(atomic.out == "1,1,2,6,22,92\n");

  RunResult indec = run("oracle indecomposable --species X --n 5");
  CHECK(indec.code == 0);
  CHECK(indec.out == "1,1,3,13,71\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("transform 1,x").code == 2);
  CHECK(run("dims --species \"wat\" --n 3").code == 2);
  CHECK(run("--max-n 13 transform 1,2").code == 2);
  CHECK(run("verify --structure L --q 1/0 --n 2").code == 2);
  CHECK(run("nonsense").code == 2);
}

TEST_CASE("the cap is honored from flag and environment") {
  // The environment variable lowers the cap below what the star product
  // needs at degree 4.
  RunResult env = run("dims --species \"star(X,X)\" --n 4");
  CHECK(env.code == 0);
  RunResult capped = run("--max-n 3 dims --species \"star(X,X)\" --n 4");
  CHECK(capped.code == 2);
  std::string cmd = "env HOPFKIT_MAX_N=3 " + binary_path() +
                    " dims --species \"star(X,X)\" --n 4 2>/dev/null >/dev/null; echo $?";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[16] = {0};
  REQUIRE(fgets(buf, sizeof buf, f) != nullptr);
  pclose(f);
  CHECK(std::string(buf) == "2\n");
}
