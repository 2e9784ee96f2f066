// bvinf command-line front end over the C API.

#include "bvinf/bvinf.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

struct ProblemDeleter {
  void operator()(bvinf_problem* p) const { bvinf_problem_free(p); }
};
struct ReportDeleter {
  void operator()(bvinf_report* r) const { bvinf_report_free(r); }
};
using ProblemPtr = std::unique_ptr<bvinf_problem, ProblemDeleter>;
using ReportPtr = std::unique_ptr<bvinf_report, ReportDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  bvinf_string_free(s);
  return out;
}

int emit(bvinf_report* r, const std::string& format) {
  char* text = nullptr;
  if (bvinf_report_render(r, format.c_str(), &text) != BVINF_OK) {
    std::cerr << "bvinf: " << bvinf_last_error() << "\n";
    return BVINF_INTERNAL_ERROR;
  }
  std::string s = take(text);
  int code = bvinf_report_exit_code(r);
  std::cout << s;
  return code;
}

int error_out(const std::string& command, int code, const std::string& msg, const std::string& format) {
  bvinf_report* raw = nullptr;
  if (bvinf_error_report(command.c_str(), code, msg.c_str(), &raw) != BVINF_OK) {
    std::cerr << "bvinf: " << msg << "\n";
    return code;
  }
  ReportPtr r(raw);
  emit(r.get(), format);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of BV-infinity algebras, L-infinity structures and Poisson geometry"};
  app.set_version_flag("--version", std::string(bvinf_version()));

  std::string command, file, fixture, format = "human", cdga, element, inputs;
  std::optional<int> arity_cap, degree_cap, n_max;
  std::optional<std::uint64_t> seed;

  app.add_option("command", command,
                 "check | brackets | mc | degeneration | transfer | main-theorem | show | fixtures")
      ->required();
  app.add_option("file", file, "problem JSON file");
  app.add_option("--fixture", fixture, "use a bundled fixture instead of a file");
  app.add_option("--arity-cap", arity_cap, "highest bracket arity");
  app.add_option("--degree-cap", degree_cap, "polynomial degree cap for form spaces");
  app.add_option("--n-max", n_max, "highest h-truncation level for degeneration");
  app.add_option("--seed", seed, "seed for generated data");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--cdga", cdga, "mc: test cdga (dual-numbers, two-epsilon, truncated-t4, odd-pair, koszul-s3, mixed-t3, dual-odd)");
  app.add_option("--element", element, "mc: JSON array [[c, a, \"p/q\"], ...]");
  app.add_option("--inputs", inputs, "brackets: ';'-separated basis indices or form expressions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return BVINF_INPUT_ERROR;
  }

  if (command == "fixtures") {
    char* names = nullptr;
    if (bvinf_fixture_names(&names) != BVINF_OK) return error_out(command, BVINF_INTERNAL_ERROR, bvinf_last_error(), format);
    std::cout << take(names);
    return 0;
  }

  if (file.empty() == fixture.empty())
    return error_out(command, BVINF_INPUT_ERROR, "give exactly one of a problem file or --fixture", format);

  bvinf_problem* raw = nullptr;
  bvinf_status st = fixture.empty() ? bvinf_problem_load(file.c_str(), &raw)
                                    : bvinf_problem_fixture(fixture.c_str(), &raw);
  if (st != BVINF_OK) return error_out(command, st, bvinf_last_error(), format);
  ProblemPtr problem(raw);

  if (command == "show") {
    char* text = nullptr;
    if (bvinf_problem_serialize(problem.get(), &text) != BVINF_OK)
      return error_out(command, BVINF_INTERNAL_ERROR, bvinf_last_error(), format);
    std::cout << take(text);
    return 0;
  }

  bvinf_options opts;
  bvinf_options_init(&opts);
  if (arity_cap) opts.arity_cap = *arity_cap;
  if (degree_cap) opts.degree_cap = *degree_cap;
  if (n_max) opts.n_max = *n_max;
  if (seed) {
    opts.has_seed = 1;
    opts.seed = *seed;
  }
  if (!cdga.empty()) opts.cdga = cdga.c_str();
  if (!element.empty()) opts.element = element.c_str();
  if (!inputs.empty()) opts.inputs = inputs.c_str();

  bvinf_report* rep = nullptr;
  st = bvinf_run(problem.get(), command.c_str(), &opts, &rep);
  if (!rep) return error_out(command, st, bvinf_last_error(), format);
  ReportPtr report(rep);
  return emit(report.get(), format);
}
