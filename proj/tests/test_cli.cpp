#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the tool with stderr folded into stdout.
Run run(const std::string& args) {
  std::string cmd = std::string(NVTOOL_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("nf x_0").code == 0);
  auto bad = run("nf q_9");
  CHECK(bad.code == 1);
  CHECK(bad.out.rfind("error: UnknownSymbol:", 0) == 0);
  auto budget = run("ball --radius 2 --node-cap 10");
  CHECK(budget.code == 2);
  CHECK(budget.out.rfind("error: ResourceBudgetExceeded:", 0) == 0);
  CHECK(run("nf").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("element commands") {
  auto nf = run("nf x_0");
  CHECK(nf.out == "n=2 m=3\n00,- -> 0,-\n01,- -> 10,-\n1,- -> 11,-\n");
  CHECK(run("mul x_0 'x_0^-1'").out == "n=2 m=1\n-,- -> -,-\n");
  CHECK(run("eval --point 00,1 x_0").out == "0,1\n");
  auto len = run("len --radius 1 'x_0 y_0'");
  CHECK(len.code == 0);
  CHECK(len.out.find('2') != std::string::npos);
}

TEST_CASE("generator table") {
  auto v = run("gen validate");
  CHECK(v.code == 0);
  CHECK(v.out.find("hash: ") == 0);
  CHECK(v.out.find("ok") != std::string::npos);
  CHECK(run("gen show A_2").out.rfind("n=2", 0) == 0);
  auto list = run("gen list");
  CHECK(list.out.rfind("symbol,provenance\n", 0) == 0);
  CHECK(run("--generators /nonexistent/file gen list").code == 1);
}

TEST_CASE("reruns are byte-identical") {
  auto a = run("ball --radius 1");
  CHECK(a.code == 0);
  CHECK(a.out.rfind("key,distance,witness\n", 0) == 0);
  CHECK(run("ball --radius 1").out == a.out);
  const std::string path = "divpath --element 'x_0 y_0 C_0 pi_0 alpha_1' --radius 3 --cap-exponents 6";
  auto p = run(path);
  CHECK(p.code == 0);
  CHECK(p.out.find("certificate: valid") != std::string::npos);
  CHECK(run(path).out == p.out);
}

TEST_CASE("path preconditions and parameters") {
  auto shortg = run("divpath --element x_0 --radius 1 --cap-exponents 4");
  CHECK(shortg.code == 1);
  CHECK(shortg.out.rfind("error: PreconditionViolated:", 0) == 0);
  CHECK(run("divpath --element 'x_0 y_0 C_0 pi_0 alpha_1' --M 50 --radius 3").code == 1);
}

TEST_CASE("divergence arguments") {
  CHECK(run("divmeasure --x 0").code == 1);
  CHECK(run("divmeasure --x 1 --delta 3/2").code == 1);
  CHECK(run("divmeasure --x 1 --delta abc").code == 1);
}
