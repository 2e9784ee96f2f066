#include "bvinf/bvinf.h"

#include "bvinf/commands.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct bvinf_problem {
  bvinf::Problem p;
};

struct bvinf_report {
  bvinf::Report r;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bvinf_status fail(bvinf_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

template <class F>
bvinf_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const bvinf::InputError& e) {
    return fail(BVINF_INPUT_ERROR, e.what());
  } catch (const bvinf::MathError& e) {
    return fail(BVINF_CHECK_FAILED, e.what());
  } catch (const std::exception& e) {
    return fail(BVINF_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(BVINF_INTERNAL_ERROR, "unknown error");
  }
}

bvinf_status wrap_problem(bvinf::Problem p, bvinf_problem** out) {
  *out = new bvinf_problem{std::move(p)};
  return BVINF_OK;
}

}  // namespace

extern "C" {

const char* bvinf_version(void) { return "1.0.0"; }

const char* bvinf_last_error(void) { return g_last_error.c_str(); }

void bvinf_options_init(bvinf_options* o) {
  if (!o) return;
  o->arity_cap = -1;
  o->degree_cap = -1;
  o->n_max = -1;
  o->has_seed = 0;
  o->seed = 0;
  o->cdga = nullptr;
  o->element = nullptr;
  o->inputs = nullptr;
}

void bvinf_string_free(char* s) { std::free(s); }

bvinf_status bvinf_problem_parse(const char* text, bvinf_problem** out) {
  if (!text || !out) return fail(BVINF_INPUT_ERROR, "null argument");
  return guarded([&] { return wrap_problem(bvinf::parse_problem(text), out); });
}

bvinf_status bvinf_problem_load(const char* path, bvinf_problem** out) {
  if (!path || !out) return fail(BVINF_INPUT_ERROR, "null argument");
  return guarded([&] { return wrap_problem(bvinf::load_problem(path), out); });
}

bvinf_status bvinf_problem_fixture(const char* name, bvinf_problem** out) {
  if (!name || !out) return fail(BVINF_INPUT_ERROR, "null argument");
  return guarded([&] { return wrap_problem(bvinf::fixture_problem(name), out); });
}

bvinf_status bvinf_fixture_names(char** out) {
  if (!out) return fail(BVINF_INPUT_ERROR, "null argument");
  return guarded([&] {
    std::string s;
    for (const auto& n : bvinf::fixture_names()) s += n + "\n";
    *out = dup(s);
    return BVINF_OK;
  });
}

bvinf_status bvinf_problem_serialize(const bvinf_problem* p, char** out) {
  if (!p || !out) return fail(BVINF_INPUT_ERROR, "null argument");
  return guarded([&] {
    *out = dup(bvinf::serialize_problem(p->p));
    return BVINF_OK;
  });
}

void bvinf_problem_free(bvinf_problem* p) { delete p; }

bvinf_status bvinf_run(const bvinf_problem* p, const char* command, const bvinf_options* opts, bvinf_report** out) {
  if (!p || !command || !out) return fail(BVINF_INPUT_ERROR, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cmd = bvinf::parse_command(command);
    if (!cmd) return fail(BVINF_INPUT_ERROR, std::string("unknown command '") + command + "'");
    bvinf::RunOverrides o;
    if (opts) {
      if (opts->arity_cap >= 0) o.arity_cap = opts->arity_cap;
      if (opts->degree_cap >= 0) o.degree_cap = opts->degree_cap;
      if (opts->n_max >= 0) o.n_max = opts->n_max;
      if (opts->has_seed) o.seed = opts->seed;
      if (opts->cdga) o.cdga = opts->cdga;
      if (opts->element) o.element = opts->element;
      if (opts->inputs) o.inputs = opts->inputs;
    }
    auto* rep = new bvinf_report{bvinf::run_command(p->p, *cmd, o)};
    *out = rep;
    int code = rep->r.exit_code;
    if (code != 0 && rep->r.machine.contains("message")) g_last_error = rep->r.machine["message"].get<std::string>();
    return static_cast<bvinf_status>(code);
  });
}

int bvinf_report_exit_code(const bvinf_report* r) { return r ? r->r.exit_code : BVINF_INTERNAL_ERROR; }

bvinf_status bvinf_report_render(const bvinf_report* r, const char* format, char** out) {
  if (!r || !format || !out) return fail(BVINF_INPUT_ERROR, "null argument");
  return guarded([&] {
    std::string f = format;
    if (f == "machine")
      *out = dup(bvinf::render_machine(r->r));
    else if (f == "human")
      *out = dup(bvinf::render_human(r->r));
    else
      return fail(BVINF_INPUT_ERROR, "unknown format '" + f + "'");
    return BVINF_OK;
  });
}

void bvinf_report_free(bvinf_report* r) { delete r; }

bvinf_status bvinf_error_report(const char* command, int exit_code, const char* message, bvinf_report** out) {
  if (!command || !message || !out) return fail(BVINF_INPUT_ERROR, "null argument");
  return guarded([&] {
    *out = new bvinf_report{bvinf::error_report(command, exit_code, message)};
    return BVINF_OK;
  });
}

}  // extern "C"
