// Exercises the shared library through the C header only, plus the CLI binary.

#include "bvinf/bvinf.h"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  bvinf_string_free(s);
  return out;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult cli(const std::string& args) {
  std::string cmd = std::string(BVINF_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("problem lifecycle and run") {
    bvinf_problem* p = nullptr;
    REQUIRE(bvinf_problem_fixture("heisenberg", &p) == BVINF_OK);
    bvinf_options o;
    bvinf_options_init(&o);
    o.n_max = 2;
    bvinf_report* r = nullptr;
    CHECK(bvinf_run(p, "degeneration", &o, &r) == BVINF_OK);
    REQUIRE(r);
    char* text = nullptr;
    REQUIRE(bvinf_report_render(r, "human", &text) == BVINF_OK);
    CHECK(take(text).find("free: false, dim 14 vs 16") != std::string::npos);
    REQUIRE(bvinf_report_render(r, "machine", &text) == BVINF_OK);
    CHECK(take(text).find("\"exit_code\": 0") != std::string::npos);
    CHECK(bvinf_report_render(r, "xml", &text) == BVINF_INPUT_ERROR);
    bvinf_report_free(r);
    bvinf_problem_free(p);
  }

  TEST_CASE("errors set status and last_error") {
    bvinf_problem* p = nullptr;
    CHECK(bvinf_problem_parse("{not json", &p) == BVINF_INPUT_ERROR);
    CHECK(std::string(bvinf_last_error()).find("malformed") != std::string::npos);
    CHECK(bvinf_problem_fixture("nope", &p) == BVINF_INPUT_ERROR);
    CHECK(bvinf_problem_load("/nonexistent/x.json", &p) == BVINF_INPUT_ERROR);
    CHECK(bvinf_problem_parse(nullptr, &p) == BVINF_INPUT_ERROR);
    REQUIRE(bvinf_problem_fixture("abelian3", &p) == BVINF_OK);
    bvinf_report* r = nullptr;
    CHECK(bvinf_run(p, "frobnicate", nullptr, &r) == BVINF_INPUT_ERROR);
    CHECK(r == nullptr);
    bvinf_problem_free(p);
  }

  TEST_CASE("serialize and reparse") {
    bvinf_problem* p = nullptr;
    REQUIRE(bvinf_problem_fixture("r4-generalized", &p) == BVINF_OK);
    char* s = nullptr;
    REQUIRE(bvinf_problem_serialize(p, &s) == BVINF_OK);
    std::string text = take(s);
    bvinf_problem* q = nullptr;
    REQUIRE(bvinf_problem_parse(text.c_str(), &q) == BVINF_OK);
    REQUIRE(bvinf_problem_serialize(q, &s) == BVINF_OK);
    CHECK(take(s) == text);
    bvinf_problem_free(p);
    bvinf_problem_free(q);
    char* names = nullptr;
    REQUIRE(bvinf_fixture_names(&names) == BVINF_OK);
    CHECK(take(names).find("heisenberg\n") != std::string::npos);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("fixture files check out") {
    for (const char* name : {"abelian3", "heisenberg", "sl2", "r2-linear-poisson", "truncated-laplacian",
                             "gauge-family", "heisenberg-invariant"}) {
      CAPTURE(name);
      CHECK(cli("check " + fixture(name)).code == 0);
    }
    CHECK(cli("check " + fixture("not-poisson")).code == 1);
  }

  TEST_CASE("bundled fixtures match the files") {
    for (const char* name : {"abelian3", "heisenberg", "sl2", "r2-linear-poisson", "r4-generalized"}) {
      std::ifstream in(fixture(name));
      std::stringstream ss;
      ss << in.rdbuf();
      CHECK(cli(std::string("show --fixture ") + name).out == ss.str());
    }
  }

  TEST_CASE("exit codes") {
    CHECK(cli("degeneration --fixture heisenberg").code == 0);
    CHECK(cli("degeneration --fixture r2-linear-poisson").code == 2);
    CHECK(cli("check").code == 2);
    CHECK(cli("check --fixture nope").code == 2);
    CHECK(cli("bogus --fixture sl2").code == 2);
    CHECK(cli("check --fixture sl2 --format yaml").code == 2);
    CHECK(cli("check --fixture sl2 --arity-cap 0").code == 2);
    CHECK(cli("check /nonexistent.json").code == 2);

    char path[] = "/tmp/bvinf_badXXXXXX";
    int fd = mkstemp(path);
    REQUIRE(fd >= 0);
    std::string bad = R"({"version": 1, "kind": "algebra+operator",
      "algebra": {"generators": [{"label": "t", "parity": 1, "exponent": 2}]},
      "operator": {"parity": 1, "entries": [[0, 1, "1/0"]]}})";
    CHECK(write(fd, bad.data(), bad.size()) == static_cast<ssize_t>(bad.size()));
    close(fd);
    auto r = cli(std::string("check ") + path + " --format machine");
    CHECK(r.code == 2);
    CHECK(r.out.find("input-error") != std::string::npos);
    std::remove(path);
  }

  TEST_CASE("machine output is byte-identical across runs") {
    auto a = cli("main-theorem --fixture sl2 --format machine");
    auto b = cli("main-theorem --fixture sl2 --format machine");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("time") == std::string::npos);
    auto m1 = cli("mc " + fixture("truncated-laplacian") + " --cdga koszul-s3 --seed 4 --format machine");
    auto m2 = cli("mc " + fixture("truncated-laplacian") + " --cdga koszul-s3 --seed 4 --format machine");
    CHECK(m1.out == m2.out);
  }

  TEST_CASE("human output carries timing") {
    auto r = cli("brackets --fixture r4-generalized");
    CHECK(r.out.find("m_4(dx1, dx2, dx3, dx4) = -dx1") != std::string::npos);
    CHECK(r.out.find("time:") != std::string::npos);
  }
}
