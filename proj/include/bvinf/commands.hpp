#pragma once

// The six verification commands over a Problem, and their reports.

#include "bvinf/problem.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bvinf {

enum class Command { Check, Brackets, MC, Degeneration, Transfer, MainTheorem };
std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);
std::vector<std::string> command_names();

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInputError = 2, kExitInternal = 3 };

/// Command-line level overrides; unset fields fall back to the problem's options.
struct RunOverrides {
  std::optional<int> arity_cap, degree_cap, n_max;
  std::optional<std::uint64_t> seed;
  std::string cdga;     // mc: test cdga name
  std::string element;  // mc: JSON array of [c, a, "p/q"]
  std::string inputs;   // brackets: ';'-separated basis indices or form expressions
};

struct Report {
  std::string command;
  int exit_code = kExitOk;
  nlohmann::json machine;          // deterministic section (no timing)
  std::vector<std::string> lines;  // human-readable body
  double seconds = 0;
};

Report run_command(const Problem& p, Command c, const RunOverrides& o = {});
/// Report for a failure that happened before a command could run (e.g. parsing).
Report error_report(const std::string& command, int exit_code, const std::string& message);

/// Sorted-key JSON with canonical rationals; byte-identical for identical inputs.
std::string render_machine(const Report& r);
std::string render_human(const Report& r);
/// Inverse of render_machine (throws InputError).
Report parse_report(const std::string& text);

}  // namespace bvinf
