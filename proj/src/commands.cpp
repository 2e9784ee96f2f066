#include "bvinf/commands.hpp"

#include <chrono>
#include <sstream>

namespace bvinf {

using json = nlohmann::json;

namespace {

struct Ctx {
  const Problem& p;
  Options opt;
  const RunOverrides& o;
  Report& r;
  bool ok = true;

  void line(const std::string& s) { r.lines.push_back(s); }
  void fail(const std::string& why) {
    if (ok) r.machine["message"] = why;
    ok = false;
    line("FAILED: " + why);
  }
};

std::string yes(bool b) { return b ? "true" : "false"; }

std::string vec_string(const std::vector<std::string>& labels, const Vec& v) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Scalar c = v[i];
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0 && labels[i] != "1") {
      os << '-';
      c = -c;
    }
    first = false;
    if (labels[i] == "1")
      os << format_scalar(c);
    else if (c == 1)
      os << labels[i];
    else
      os << format_scalar(c) << '*' << labels[i];
  }
  return first ? "0" : os.str();
}

json vec_json(const std::vector<std::string>& labels, const Vec& v) {
  json j = json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) j[labels[i]] = format_scalar(v[i]);
  return j;
}

std::vector<std::string> key_labels(const std::vector<std::string>& labels, const Key& k) {
  std::vector<std::string> out;
  for (auto i : k) out.push_back(labels[i]);
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::vector<std::string> split_inputs(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, ';')) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::string> effective_inputs(const Ctx& c) {
  return c.o.inputs.empty() ? c.p.inputs : split_inputs(c.o.inputs);
}

std::vector<std::uint16_t> basis_inputs(const std::vector<std::string>& in, std::size_t dim) {
  std::vector<std::uint16_t> out;
  for (const auto& s : in) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) throw InputError("input '" + s + "' is not a basis index");
    if (v >= dim) throw InputError("basis index " + s + " out of range (dim " + std::to_string(dim) + ")");
    out.push_back(static_cast<std::uint16_t>(v));
  }
  return out;
}

bool is_bv_kind(const Problem& p) { return p.kind == ProblemKind::BVFamily || p.kind == ProblemKind::LieData; }

json relation_json(const RelationReport& rel, const std::vector<std::string>& labels) {
  json j{{"ok", rel.ok}};
  if (!rel.ok) {
    j["failing_arity"] = rel.failing_arity;
    j["witness"] = key_labels(labels, rel.witness);
  }
  return j;
}

json bracket_table(const LInftyStructure& l, int from_arity) {
  json out = json::array();
  const auto& labels = l.space.labels;
  std::vector<std::string> value_labels = labels;
  for (int n = from_arity; n <= l.arity_cap(); ++n)
    for (const auto& [key, v] : l.bracket(n).table)
      out.push_back({{"arity", n}, {"inputs", key_labels(labels, key)}, {"value", vec_string(value_labels, v)}});
  return out;
}

// ---------------------------------------------------------------------------

void check_algebra_operator(Ctx& c) {
  const int cap = c.opt.arity_cap;
  Algebra alg = c.p.algebra.build();
  LinearOperator d = c.p.op.build(alg.dim());
  json res;
  res["algebra_dim"] = alg.dim();
  bool odd = d.parity == 1 && d.parity_consistent(alg.space());
  res["odd"] = odd;
  if (!odd) {
    c.fail("operator is not odd");
    c.r.machine["result"] = res;
    return;
  }
  bool unit_ok = is_zero(d.apply(alg.unit()));
  bool square_zero = (d.matrix * d.matrix).is_zero();
  auto order = operator_order(alg, d, cap);
  res["kills_unit"] = unit_ok;
  res["square_zero"] = square_zero;
  res["order"] = order ? json(*order) : json(nullptr);
  c.line("D(1) = 0: " + yes(unit_ok) + ", D^2 = 0: " + yes(square_zero) +
         ", order: " + (order ? std::to_string(*order) : "> " + std::to_string(cap)));
  if (!unit_ok) {
    c.fail("D(1) != 0 (curved); the derived brackets have a nonzero m_0");
    c.r.machine["result"] = res;
    return;
  }
  auto l = derived_structure(alg, d, cap);
  auto rel = check_relations(l, cap);
  res["relations"] = relation_json(rel, alg.space().labels);
  res["relations_match_square_zero"] = rel.ok == square_zero;
  c.line("L-infinity relations up to arity " + std::to_string(cap) + ": " + (rel.ok ? "hold" : "fail"));
  if (!rel.ok)
    c.line("  first failure at arity " + std::to_string(rel.failing_arity) + " on (" +
           join(key_labels(alg.space().labels, rel.witness), ", ") + ")");
  if (!square_zero) c.fail("D^2 != 0");
  if (!rel.ok) c.fail("relations fail at arity " + std::to_string(rel.failing_arity));
  if (rel.ok != square_zero) c.fail("relations disagree with D^2 = 0");
  c.r.machine["result"] = res;
}

void check_bv_kind(Ctx& c) {
  const int cap = c.opt.arity_cap;
  json res;
  if (c.p.kind == ProblemKind::LieData) {
    auto jac = jacobi_violation(c.p.lie);
    res["jacobi"] = jac.empty();
    c.line("Jacobi identity: " + std::string(jac.empty() ? "holds" : jac));
    if (!jac.empty()) {
      c.fail(jac);
      c.r.machine["result"] = res;
      return;
    }
    if (c.p.model == "ce") {
      auto l = problem_lie_linfty(c.p, cap);
      auto rel = check_relations(l, cap);
      res["linfty_relations"] = relation_json(rel, l.space.labels);
      c.line("L-infinity relations of g up to arity " + std::to_string(cap) + ": " + (rel.ok ? "hold" : "fail"));
      if (!rel.ok) {
        c.fail("L-infinity relations fail at arity " + std::to_string(rel.failing_arity));
        c.r.machine["result"] = res;
        return;
      }
    } else {
      auto pp = problem_poisson(c.p);
      auto sq = lie_schouten(c.p.lie, pp, pp);
      bool oracle = sq == lie_schouten_wedge(c.p.lie, pp, pp);
      res["poisson"] = sq.is_zero();
      res["schouten_square"] = format_multivector(sq);
      res["oracle_agrees"] = oracle;
      res["invariant"] = is_invariant(c.p.lie, pp);
      c.line("[P,P] = " + format_multivector(sq) + " (oracle agrees: " + yes(oracle) + "), P invariant: " +
             yes(res["invariant"].get<bool>()));
      if (!oracle) c.fail("Schouten bracket disagrees with the wedge-formula oracle");
      if (!sq.is_zero()) {
        c.fail("[P,P] != 0");
        c.r.machine["result"] = res;
        return;
      }
    }
  }
  BVInfinity bv = problem_bv(c.p);
  auto alg_rep = check_algebra(bv.algebra);
  if (!alg_rep.ok) {
    c.fail("algebra axioms fail: " + alg_rep.failure);
    c.r.machine["result"] = res;
    return;
  }
  auto rep = check_bv(bv.algebra, bv.op);
  json orders = json::array();
  for (const auto& o : rep.orders) orders.push_back(o ? json(*o) : json(nullptr));
  res["bv"] = {{"ok", rep.ok},
               {"kills_unit", rep.unit_ok},
               {"square_zero", rep.square_zero_ok},
               {"orders", orders},
               {"violations", rep.violations},
               {"truncation", bv.op.truncation},
               {"algebra_dim", bv.dim()}};
  c.line("BV-infinity family on a " + std::to_string(bv.dim()) + "-dimensional algebra, " +
         std::to_string(bv.op.components.size()) + " components mod h^" + std::to_string(bv.op.truncation) + ": " +
         (rep.ok ? "valid" : "invalid"));
  for (const auto& v : rep.violations) c.line("  " + v);
  if (!rep.ok) {
    c.fail(rep.violations.front());
    c.r.machine["result"] = res;
    return;
  }
  const int rcap = std::min(cap, bv.op.truncation);
  auto fs = rescaled_structure(bv, rcap);
  auto rel = check_relations(fs.rescaled, rcap);
  res["rescaled_relations"] = relation_json(rel, fs.rescaled.space.labels);
  c.line("rescaled structure m_n/h^(n-1): divisible, relations up to arity " + std::to_string(rcap) + " " +
         (rel.ok ? "hold" : "fail"));
  if (!rel.ok) c.fail("rescaled relations fail at arity " + std::to_string(rel.failing_arity));
  c.r.machine["result"] = res;
}

void check_poisson_kind(Ctx& c) {
  auto pp = problem_poisson(c.p);
  auto cert = check_poisson(pp);
  json res{{"poisson", cert.poisson},
           {"oracle_agrees", cert.oracle_agrees},
           {"degreewise", cert.degreewise},
           {"schouten_square", format_multivector(cert.square)},
           {"components", cert.components}};
  c.line("P = " + format_multivector(pp));
  c.line("[P,P] = " + format_multivector(cert.square) + " (oracle agrees: " + yes(cert.oracle_agrees) +
         ", degreewise: " + yes(cert.degreewise) + ")");
  if (!cert.oracle_agrees) c.fail("Schouten bracket disagrees with the odd-coordinate oracle");
  if (!cert.poisson) {
    c.fail("[P,P] != 0, first term " + cert.first_nonzero);
    c.r.machine["result"] = res;
    return;
  }
  bool ds = dsquared_check(pp, c.opt.degree_cap, c.opt.n_max);
  res["dsquared"] = ds;
  c.line("(d + sum h^i L_{P_i})^2 = 0 mod h^" + std::to_string(c.opt.n_max) + " on forms of degree <= " +
         std::to_string(c.opt.degree_cap) + ": " + yes(ds));
  if (!ds) c.fail("D^2 != 0 on the truncated form space");
  json orders = json::array();
  for (int i : cert.components) {
    auto oc = koszul_order_check(poisson_component(pp, i), i + 1, c.opt.degree_cap);
    orders.push_back({{"component", i}, {"order", oc.claimed}, {"ok", oc.ok}, {"tuples", oc.tuples}, {"forms", oc.forms}});
    c.line("order of L_{P_" + std::to_string(i) + "} <= " + std::to_string(i + 1) + ": " + yes(oc.ok) + " (" +
           std::to_string(oc.tuples) + " generator tuples x " + std::to_string(oc.forms) + " forms)");
    if (!oc.ok) c.fail("order bound fails: " + oc.witness);
  }
  res["orders"] = orders;
  c.r.machine["result"] = res;
}

// ---------------------------------------------------------------------------

void brackets(Ctx& c) {
  const int cap = c.opt.arity_cap;
  auto in = effective_inputs(c);
  json res;
  json out = json::array();
  if (c.p.kind == ProblemKind::PoissonGeometry) {
    auto pp = problem_poisson(c.p);
    std::vector<std::vector<PolyForm>> calls;
    if (!in.empty()) {
      std::vector<PolyForm> forms;
      for (const auto& s : in) forms.push_back(parse_expression(s, c.p.dim, false));
      calls.push_back(forms);
    } else {
      for (int k = 1; k <= std::min(cap, c.p.dim); ++k) {
        std::vector<PolyForm> forms;
        for (int i = 0; i < k; ++i) forms.push_back(SuperPoly::odd(c.p.dim, i));
        calls.push_back(forms);
      }
    }
    for (const auto& forms : calls) {
      const int n = static_cast<int>(forms.size());
      for (const auto& f : forms)
        if (!f.parity()) throw InputError("bracket inputs must be homogeneous forms");
      auto v = koszul_brackets(pp, n, forms);
      std::vector<std::string> names;
      for (const auto& f : forms) names.push_back(format_form(f));
      out.push_back({{"arity", n}, {"inputs", names}, {"value", format_form(v)}});
      c.line("m_" + std::to_string(n) + "(" + join(names, ", ") + ") = " + format_form(v));
    }
    res["brackets"] = out;
    c.r.machine["result"] = res;
    return;
  }
  Algebra alg;
  std::vector<LinearOperator> ops;  // ops[n-1] produces m_n
  if (c.p.kind == ProblemKind::AlgebraOperator) {
    alg = c.p.algebra.build();
    auto d = c.p.op.build(alg.dim());
    for (int n = 1; n <= cap; ++n) ops.push_back(d);
  } else {
    auto bv = problem_bv(c.p);
    alg = bv.algebra;
    for (int n = 1; n <= cap; ++n) ops.push_back(bv.component(static_cast<std::size_t>(n - 1)));
  }
  const auto& labels = alg.space().labels;
  if (!in.empty()) {
    auto idx = basis_inputs(in, alg.dim());
    const int n = static_cast<int>(idx.size());
    Vec v = n <= cap ? derived_value(alg, ops[static_cast<std::size_t>(n - 1)], idx) : zero_vec(alg.dim());
    if (n > cap) c.line("arity above the cap: reported as 0");
    Key k(idx.begin(), idx.end());
    out.push_back({{"arity", n}, {"inputs", key_labels(labels, k)}, {"value", vec_string(labels, v)}});
    c.line("m_" + std::to_string(n) + "(" + join(key_labels(labels, k), ", ") + ") = " + vec_string(labels, v));
  } else {
    for (int n = 1; n <= cap; ++n) {
      auto m = derived_map(alg, ops[static_cast<std::size_t>(n - 1)], n);
      for (const auto& [key, v] : m.table)
        out.push_back({{"arity", n}, {"inputs", key_labels(labels, key)}, {"value", vec_string(labels, v)}});
      c.line("m_" + std::to_string(n) + ": " + std::to_string(m.table.size()) + " nonzero values on basis tuples");
    }
  }
  res["brackets"] = out;
  c.r.machine["result"] = res;
}

// ---------------------------------------------------------------------------

std::vector<MatrixEntry> parse_element(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("element: malformed JSON: ") + e.what());
  }
  if (!j.is_array()) throw InputError("element: expected an array of [c, a, \"p/q\"]");
  std::vector<MatrixEntry> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() || !e[2].is_string())
      throw InputError("element: expected [c, a, \"p/q\"] entries");
    out.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>(), parse_scalar(e[2].get<std::string>()));
  }
  return out;
}

void mc(Ctx& c) {
  if (c.p.kind != ProblemKind::AlgebraOperator) throw InputError("mc needs an algebra+operator problem");
  Algebra alg = c.p.algebra.build();
  auto d = c.p.op.build(alg.dim());
  std::string name = !c.o.cdga.empty() ? c.o.cdga : !c.p.mc_cdga.empty() ? c.p.mc_cdga : "dual-numbers";
  const TestCDGA& cd = test_cdga(name);
  Algebra t = tensor(cd.algebra, alg);
  Vec xi = zero_vec(t.dim());
  bool generated = false;
  auto entries = !c.o.element.empty() ? parse_element(c.o.element) : c.p.mc_element;
  if (entries.empty()) {
    Rng rng(c.opt.seed);
    xi = random_mc_candidate(rng, cd, alg, d, true);
    generated = true;
  } else {
    for (const auto& [ci, ai, v] : entries) {
      if (ci >= cd.algebra.dim() || ai >= alg.dim()) throw InputError("element index out of range");
      xi[ci * alg.dim() + ai] += v;
    }
  }
  if (t.parity_of(xi) != 0) throw InputError("element must be even in C (x) A");
  if (!t.in_ideal(xi)) throw InputError("element must lie in C_+ (x) A");
  auto chk = mc_exponential_check(alg, d, cd, xi);
  auto l = from_operator(alg, d, std::max(1, cd.algebra.nilpotency() - 1));
  Vec residual = mc_residual(l, cd, xi);
  const auto& tl = t.space().labels;
  json res{{"cdga", name},
           {"generated", generated},
           {"element", vec_json(tl, xi)},
           {"residual", vec_json(tl, residual)},
           {"is_mc", chk.is_mc},
           {"is_cycle", chk.is_cycle},
           {"agree", chk.agree()}};
  c.line("test cdga: " + name + (generated ? " (element generated from seed " + std::to_string(c.opt.seed) + ")" : ""));
  c.line("xi = " + vec_string(tl, xi));
  c.line("MC residual = " + vec_string(tl, residual));
  c.line("MC: " + yes(chk.is_mc) + ", (d_C + D)(e^xi - 1) = 0: " + yes(chk.is_cycle) + ", agree: " + yes(chk.agree()));
  if (!chk.agree()) c.fail("MC equation and exponential cycle condition disagree");
  c.r.machine["result"] = res;
}

// ---------------------------------------------------------------------------

int clamp_n(Ctx& c, const BVInfinity& bv) {
  int n = c.opt.n_max;
  if (n > bv.op.truncation) {
    c.line("n_max " + std::to_string(n) + " clamped to the truncation order " + std::to_string(bv.op.truncation));
    n = bv.op.truncation;
  }
  return n;
}

void degeneration(Ctx& c) {
  if (!is_bv_kind(c.p)) throw InputError("degeneration needs a bv-family or lie-data problem");
  auto bv = problem_bv(c.p);
  const int n = clamp_n(c, bv);
  auto rep = degeneration_check(bv, n);
  auto lift = e1_lift_check(bv, n);
  json levels = json::array();
  bool lift_all = true;
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    const auto& l = rep.levels[i];
    const std::size_t bound = static_cast<std::size_t>(l.truncation) * l.base_dim;
    levels.push_back({{"n", l.truncation},
                      {"homology_dim", l.homology_dim},
                      {"free_bound", bound},
                      {"blocks", l.blocks.sizes},
                      {"free", l.free_by_blocks},
                      {"free_by_dimension", l.free_by_dimension},
                      {"certificates_agree", l.certificates_agree()},
                      {"cycles_lift", static_cast<bool>(lift[i])}});
    lift_all = lift_all && lift[i];
    c.line("N=" + std::to_string(l.truncation) + ": free: " + yes(l.free_by_blocks) + ", dim " +
           std::to_string(l.homology_dim) + " vs " + std::to_string(bound) + ", blocks " +
           l.blocks.to_string() + (l.certificates_agree() ? ", certificates agree" : ", CERTIFICATES DISAGREE") +
           ", cycles lift: " + yes(lift[i]));
    if (!l.certificates_agree()) c.fail("freeness certificates disagree at N=" + std::to_string(l.truncation));
  }
  json res{{"levels", levels},
           {"degenerate", rep.degenerate()},
           {"e1_collapse", lift_all},
           {"base_homology_dim", rep.levels.empty() ? 0 : rep.levels[0].base_dim}};
  c.line(std::string("degenerate up to N=") + std::to_string(n) + ": " + yes(rep.degenerate()) +
         ", E1 collapse by lifting: " + yes(lift_all));
  if (lift_all != rep.degenerate()) c.fail("E1 lifting test disagrees with freeness");
  c.r.machine["result"] = res;
}

LInftyStructure source_structure(Ctx& c, int cap) {
  if (c.p.kind == ProblemKind::AlgebraOperator) {
    Algebra alg = c.p.algebra.build();
    return from_operator(alg, c.p.op.build(alg.dim()), cap);
  }
  if (is_bv_kind(c.p)) {
    auto bv = problem_bv(c.p);
    auto rep = check_bv(bv.algebra, bv.op);
    if (!rep.ok) throw MathError("not a BV-infinity algebra: " + rep.violations.front());
    return fiber_structure(bv, cap);
  }
  throw InputError("transfer needs a finite algebra (not poisson-geometry)");
}

void transfer_cmd(Ctx& c) {
  const int cap = c.opt.arity_cap;
  auto l = source_structure(c, cap);
  auto m1 = l.differential();
  auto con = contraction_of(l.space, m1);
  auto err = verify_contraction(con, m1);
  if (!err.empty()) throw MathError("contraction check failed: " + err);
  auto t = transfer(l, con, cap);
  auto rel = check_relations(t, cap);
  bool abelian = true;
  json sizes = json::array();
  for (const auto& b : t.brackets) {
    sizes.push_back(b.table.size());
    if (!b.is_zero()) abelian = false;
  }
  json res{{"source_dim", l.dim()},
           {"minimal_dim", t.dim()},
           {"minimal_parity", t.space.parity},
           {"bracket_sizes", sizes},
           {"brackets", bracket_table(t, 1)},
           {"relations", relation_json(rel, t.space.labels)},
           {"homotopy_abelian", abelian}};
  c.line("minimal model: dimension " + std::to_string(t.dim()) + " (from " + std::to_string(l.dim()) + ")");
  for (int n = 1; n <= t.arity_cap(); ++n)
    c.line("  m'_" + std::to_string(n) + ": " + std::to_string(t.bracket(n).table.size()) + " nonzero values");
  c.line("homotopy abelian up to arity " + std::to_string(cap) + ": " + yes(abelian));
  if (!rel.ok) c.fail("transferred relations fail at arity " + std::to_string(rel.failing_arity));
  c.r.machine["result"] = res;
}

void main_theorem(Ctx& c) {
  if (!is_bv_kind(c.p)) throw InputError("main-theorem needs a bv-family or lie-data problem");
  auto bv = problem_bv(c.p);
  const int n = clamp_n(c, bv);
  auto v = main_theorem_check(bv, c.opt.arity_cap, n);
  json res{{"degenerate", v.degenerate},
           {"homotopy_abelian", v.abelian},
           {"consistent", v.consistent()},
           {"minimal_dim", v.minimal_dim},
           {"transferred_sizes", v.transferred_sizes}};
  std::string sizes;
  for (auto s : v.transferred_sizes) sizes += (sizes.empty() ? "" : " ") + std::to_string(s);
  c.line("degenerate up to N=" + std::to_string(n) + ": " + yes(v.degenerate));
  c.line("homotopy abelian up to arity " + std::to_string(c.opt.arity_cap) + ": " + yes(v.abelian) +
         " (nonzero transferred values per arity: " + sizes + ")");
  c.line(v.consistent() ? "consistent with degeneration => homotopy abelian"
                        : "CONTRADICTION: degenerate but not homotopy abelian");
  if (!v.consistent()) c.fail("degenerate family with a non-abelian minimal model");
  c.r.machine["result"] = res;
}

const char* status_name(int code) {
  switch (code) {
    case kExitOk:
      return "ok";
    case kExitCheckFailed:
      return "check-failed";
    case kExitInputError:
      return "input-error";
    default:
      return "internal-error";
  }
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "check") return Command::Check;
  if (name == "brackets") return Command::Brackets;
  if (name == "mc") return Command::MC;
  if (name == "degeneration") return Command::Degeneration;
  if (name == "transfer") return Command::Transfer;
  if (name == "main-theorem") return Command::MainTheorem;
  return std::nullopt;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Check:
      return "check";
    case Command::Brackets:
      return "brackets";
    case Command::MC:
      return "mc";
    case Command::Degeneration:
      return "degeneration";
    case Command::Transfer:
      return "transfer";
    case Command::MainTheorem:
      return "main-theorem";
  }
  return "?";
}

std::vector<std::string> command_names() {
  return {"check", "brackets", "mc", "degeneration", "transfer", "main-theorem"};
}

Report error_report(const std::string& command, int exit_code, const std::string& message) {
  Report r;
  r.command = command;
  r.exit_code = exit_code;
  r.machine = {{"command", command}, {"exit_code", exit_code}, {"status", status_name(exit_code)}, {"message", message}};
  r.lines.push_back("error: " + message);
  return r;
}

Report run_command(const Problem& p, Command cmd, const RunOverrides& o) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.command = command_name(cmd);
  Ctx c{p, p.options, o, r};
  if (o.arity_cap) c.opt.arity_cap = *o.arity_cap;
  if (o.degree_cap) c.opt.degree_cap = *o.degree_cap;
  if (o.n_max) c.opt.n_max = *o.n_max;
  if (o.seed) c.opt.seed = *o.seed;
  r.machine["command"] = r.command;
  r.machine["problem"] = {{"kind", kind_name(p.kind)}, {"name", p.name}};
  r.machine["options"] = {{"arity_cap", c.opt.arity_cap},
                          {"degree_cap", c.opt.degree_cap},
                          {"n_max", c.opt.n_max},
                          {"seed", c.opt.seed}};
  int code = kExitOk;
  try {
    if (c.opt.arity_cap < 1 || c.opt.arity_cap > 8) throw InputError("arity cap must be in 1..8");
    if (c.opt.degree_cap < 0 || c.opt.degree_cap > 12) throw InputError("degree cap must be in 0..12");
    if (c.opt.n_max < 1 || c.opt.n_max > 16) throw InputError("n_max must be in 1..16");
    switch (cmd) {
      case Command::Check:
        if (p.kind == ProblemKind::AlgebraOperator)
          check_algebra_operator(c);
        else if (p.kind == ProblemKind::PoissonGeometry)
          check_poisson_kind(c);
        else
          check_bv_kind(c);
        break;
      case Command::Brackets:
        brackets(c);
        break;
      case Command::MC:
        mc(c);
        break;
      case Command::Degeneration:
        degeneration(c);
        break;
      case Command::Transfer:
        transfer_cmd(c);
        break;
      case Command::MainTheorem:
        main_theorem(c);
        break;
    }
    code = c.ok ? kExitOk : kExitCheckFailed;
  } catch (const InputError& e) {
    code = kExitInputError;
    r.machine.erase("result");
    r.machine["message"] = e.what();
    r.lines.push_back(std::string("input error: ") + e.what());
  } catch (const MathError& e) {
    code = kExitCheckFailed;
    r.machine["message"] = e.what();
    r.lines.push_back(std::string("check failed: ") + e.what());
  } catch (const std::exception& e) {
    code = kExitInternal;
    r.machine.erase("result");
    r.machine["message"] = e.what();
    r.lines.push_back(std::string("internal error: ") + e.what());
  }
  r.exit_code = code;
  r.machine["exit_code"] = code;
  r.machine["status"] = status_name(code);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string render_machine(const Report& r) { return r.machine.dump(2) + "\n"; }

std::string render_human(const Report& r) {
  std::ostringstream os;
  std::string name;
  if (r.machine.contains("problem") && r.machine["problem"].contains("name"))
    name = r.machine["problem"]["name"].get<std::string>();
  os << "bvinf " << r.command << (name.empty() ? "" : " [" + name + "]") << ": " << status_name(r.exit_code) << "\n";
  for (const auto& l : r.lines) os << "  " << l << "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", r.seconds);
  os << "  time: " << buf << " s\n";
  return os.str();
}

Report parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("report: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("command") || !j.contains("exit_code") || !j["command"].is_string() ||
      !j["exit_code"].is_number_integer())
    throw InputError("report: missing command or exit_code");
  Report r;
  r.command = j["command"].get<std::string>();
  r.exit_code = j["exit_code"].get<int>();
  r.machine = std::move(j);
  return r;
}

}  // namespace bvinf
