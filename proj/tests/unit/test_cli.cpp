#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(COOC_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string data(const char* f) { return std::string(COOC_DATA) + "/" + f; }

}  // namespace

TEST_CASE("prob") {
  auto r = run("prob --model " + data("m0.json") + " --query cond");
  CHECK(r.code == 0);
  CHECK(r.out == "1/2\n");
  auto u = run("prob --model " + data("m0.json") +
               " --query '{\"targets\":[{\"object\":\"X1\",\"event\":[0]}],\"conditions\":[{\"object\":\"X2\",\"event\":[0,1]}]}'");
  CHECK(u.out == "1/2\n");
  CHECK(run("prob --model " + data("m0.json") + " --query '{\"targets\":[{\"object\":\"Nope\",\"event\":[0]}]}'").code ==
        2);
  CHECK(run("prob --model " + data("m0.json") + " --query cond --decimal 4").out == "1/2 (0.5000)\n");
}

TEST_CASE("exit codes") {
  CHECK(run("prob --model " + data("bad_mass.json") + " --query q").code == 2);
  CHECK(run("prob --model /nonexistent.json --query q").code == 2);
  CHECK(run("kernel --model " + data("m0.json") + " --source X1 --target Other").code == 2);
  CHECK(run("density --model " + data("mixed.json") + " --objects X1,Z").code == 3);
  auto w = run("scm --model " + data("scm.json") + " --scm identity solve");
  CHECK(w.code == 4);
  CHECK(w.out.find("witness") != std::string::npos);
  CHECK(run("scm --model " + data("scm.json") + " --scm involution observe").code == 4);
  CHECK(run("density --model " + data("m0.json") + " --objects X1 --bases X1=Spiky").code == 4);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("ci, density, scm output") {
  CHECK(run("ci --model " + data("m0.json") + " --x X1 --y X2").out == "independent: true\n");
  CHECK(run("density --model " + data("diagonal.json") + " --objects X1,X2").out.find("values: 2,0,0,2\n") !=
        std::string::npos);
  auto o = run("scm --model " + data("scm.json") + " --scm chain intervene --index 1 --value 1");
  CHECK(o.code == 0);
  CHECK(o.out == "(0,0): 0\n(0,1): 0\n(1,0): 0\n(1,1): 1\n");
}

TEST_CASE("check") {
  auto r = run("check --model " + data("m0.json") + " --theorems 6.6 --cases 100 --seed 7");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS 6.6 ", 0) == 0);
  CHECK(r.out.find('\n') == r.out.size() - 1);
  CHECK(run("check --model " + data("m0.json") + " --theorems 6.6 --cases 100 --seed 7").out == r.out);
  auto all = run("check --model " + data("m0.json"));
  CHECK(all.code == 0);
  CHECK(all.out.find("FAIL") == std::string::npos);
  CHECK(run("check --model " + data("m0.json") + " --json --theorems 3.9").out.find("\"ok\": true") !=
        std::string::npos);
}

TEST_CASE("output is deterministic and json round-trips") {
  std::string args = "kernel --model " + data("m0.json") + " --source X1 --target X2 --query given_even --json";
  auto a = run(args), b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"rows\"") != std::string::npos);
}
