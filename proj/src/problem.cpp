#include "bvinf/problem.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace bvinf {

using json = nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
  throw InputError(where + ": " + msg);
}

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(where, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) bad(where, "unknown key '" + k + "'");
}

const json& need(const json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing key '") + key + "'");
  return *it;
}

long long integer(const json& j, const std::string& where, long long lo, long long hi) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  long long v = j.get<long long>();
  if (v < lo || v > hi) bad(where, "value " + std::to_string(v) + " outside " + std::to_string(lo) + ".." + std::to_string(hi));
  return v;
}

std::size_t index(const json& j, const std::string& where) {
  return static_cast<std::size_t>(integer(j, where, 0, 1 << 20));
}

Scalar rational(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "rationals must be given as \"p/q\" strings");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const InputError& e) {
    bad(where, e.what());
  }
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

int parity_value(const json& j, const std::string& where) { return static_cast<int>(integer(j, where, 0, 1)); }

std::vector<MatrixEntry> entries(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of [row, col, \"p/q\"]");
  std::vector<MatrixEntry> out;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const auto& e = j[t];
    std::string w = where + "[" + std::to_string(t) + "]";
    if (!e.is_array() || e.size() != 3) bad(w, "expected [row, col, \"p/q\"]");
    out.emplace_back(index(e[0], w), index(e[1], w), rational(e[2], w));
  }
  return out;
}

json entries_json(const std::vector<MatrixEntry>& es) {
  json a = json::array();
  for (const auto& [r, c, v] : es) a.push_back(json::array({r, c, format_scalar(v)}));
  return a;
}

ProblemKind parse_kind(const std::string& s) {
  if (s == "algebra+operator") return ProblemKind::AlgebraOperator;
  if (s == "bv-family") return ProblemKind::BVFamily;
  if (s == "lie-data") return ProblemKind::LieData;
  if (s == "poisson-geometry") return ProblemKind::PoissonGeometry;
  bad("kind", "unknown kind '" + s + "' (algebra+operator, bv-family, lie-data, poisson-geometry)");
}

AlgebraSpec parse_algebra(const json& j) {
  const std::string w = "algebra";
  AlgebraSpec a;
  if (j.contains("generators")) {
    only_keys(j, w, {"generators"});
    const auto& g = j["generators"];
    if (!g.is_array() || g.empty()) bad(w, "generators must be a nonempty array");
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::string wi = w + ".generators[" + std::to_string(i) + "]";
      only_keys(g[i], wi, {"label", "parity", "exponent"});
      Generator gen;
      gen.label = text(need(g[i], wi, "label"), wi);
      gen.parity = parity_value(need(g[i], wi, "parity"), wi);
      gen.exponent = gen.parity ? 2 : static_cast<int>(integer(need(g[i], wi, "exponent"), wi, 2, 64));
      if (gen.parity && g[i].contains("exponent") && integer(g[i]["exponent"], wi, 2, 2) != 2)
        bad(wi, "odd generators square to zero (exponent 2)");
      a.generators.push_back(gen);
    }
    return a;
  }
  only_keys(j, w, {"basis", "unit", "products"});
  const auto& b = need(j, w, "basis");
  if (!b.is_array() || b.empty()) bad(w, "basis must be a nonempty array");
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::string wi = w + ".basis[" + std::to_string(i) + "]";
    only_keys(b[i], wi, {"label", "parity"});
    a.labels.push_back(text(need(b[i], wi, "label"), wi));
    a.parity.push_back(parity_value(need(b[i], wi, "parity"), wi));
  }
  a.unit = index(need(j, w, "unit"), w + ".unit");
  const auto& p = need(j, w, "products");
  if (!p.is_array()) bad(w, "products must be an array of [i, j, k, \"p/q\"]");
  for (std::size_t t = 0; t < p.size(); ++t) {
    std::string wt = w + ".products[" + std::to_string(t) + "]";
    if (!p[t].is_array() || p[t].size() != 4) bad(wt, "expected [i, j, k, \"p/q\"]");
    a.products.emplace_back(index(p[t][0], wt), index(p[t][1], wt), index(p[t][2], wt), rational(p[t][3], wt));
  }
  return a;
}

json algebra_json(const AlgebraSpec& a) {
  json j;
  if (!a.explicit_basis()) {
    json g = json::array();
    for (const auto& gen : a.generators) g.push_back({{"label", gen.label}, {"parity", gen.parity}, {"exponent", gen.exponent}});
    j["generators"] = g;
    return j;
  }
  json b = json::array();
  for (std::size_t i = 0; i < a.labels.size(); ++i) b.push_back({{"label", a.labels[i]}, {"parity", a.parity[i]}});
  j["basis"] = b;
  j["unit"] = a.unit;
  json p = json::array();
  for (const auto& [i, k, l, c] : a.products) p.push_back(json::array({i, k, l, format_scalar(c)}));
  j["products"] = p;
  return j;
}

OperatorSpec parse_operator(const json& j, const std::string& w, bool parity_allowed) {
  if (parity_allowed)
    only_keys(j, w, {"parity", "entries"});
  else
    only_keys(j, w, {"entries"});
  OperatorSpec op;
  if (parity_allowed && j.contains("parity")) op.parity = parity_value(j["parity"], w + ".parity");
  op.entries = entries(need(j, w, "entries"), w + ".entries");
  return op;
}

void parse_lie(const json& j, Problem& p) {
  const std::string w = "lie";
  only_keys(j, w, {"dim", "constants", "model", "higher", "poisson", "truncation"});
  p.lie.dim = static_cast<int>(integer(need(j, w, "dim"), w + ".dim", 1, 12));
  const auto& c = need(j, w, "constants");
  if (!c.is_array()) bad(w, "constants must be an array of [i, j, k, \"p/q\"]");
  for (std::size_t t = 0; t < c.size(); ++t) {
    std::string wt = w + ".constants[" + std::to_string(t) + "]";
    if (!c[t].is_array() || c[t].size() != 4) bad(wt, "expected [i, j, k, \"p/q\"]");
    p.lie.constants.push_back({static_cast<int>(integer(c[t][0], wt, 0, p.lie.dim - 1)),
                               static_cast<int>(integer(c[t][1], wt, 0, p.lie.dim - 1)),
                               static_cast<int>(integer(c[t][2], wt, 0, p.lie.dim - 1)), rational(c[t][3], wt)});
  }
  if (j.contains("model")) {
    p.model = text(j["model"], w + ".model");
    if (p.model != "ce" && p.model != "invariant") bad(w + ".model", "expected \"ce\" or \"invariant\"");
  }
  if (j.contains("truncation")) p.truncation = static_cast<int>(integer(j["truncation"], w + ".truncation", 1, 16));
  if (j.contains("higher")) {
    if (p.model != "ce") bad(w + ".higher", "higher brackets only apply to the ce model");
    const auto& h = j["higher"];
    if (!h.is_array()) bad(w + ".higher", "expected an array");
    for (std::size_t t = 0; t < h.size(); ++t) {
      std::string wt = w + ".higher[" + std::to_string(t) + "]";
      only_keys(h[t], wt, {"inputs", "output", "value"});
      HigherBracket hb;
      const auto& in = need(h[t], wt, "inputs");
      if (!in.is_array() || in.size() < 3) bad(wt, "inputs must list at least 3 indices");
      for (const auto& x : in) hb.inputs.push_back(static_cast<std::size_t>(integer(x, wt, 0, p.lie.dim - 1)));
      hb.output = static_cast<std::size_t>(integer(need(h[t], wt, "output"), wt, 0, p.lie.dim - 1));
      hb.value = rational(need(h[t], wt, "value"), wt);
      p.higher.push_back(hb);
    }
  }
  if (j.contains("poisson")) {
    if (p.model != "invariant") bad(w + ".poisson", "P only applies to the invariant model");
    p.lie_poisson = text(j["poisson"], w + ".poisson");
  }
}

}  // namespace

std::string kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::AlgebraOperator:
      return "algebra+operator";
    case ProblemKind::BVFamily:
      return "bv-family";
    case ProblemKind::LieData:
      return "lie-data";
    case ProblemKind::PoissonGeometry:
      return "poisson-geometry";
  }
  return "?";
}

Algebra AlgebraSpec::build() const {
  if (!explicit_basis()) return Algebra::monomial(generators);
  SuperSpace space{labels, parity};
  space.validate();
  if (unit >= labels.size()) throw InputError("algebra: unit index out of range");
  Algebra a = Algebra::from_constants(space, unit_vec(labels.size(), unit), products);
  auto rep = check_algebra(a);
  if (!rep.ok) throw MathError("algebra axioms fail: " + rep.failure);
  return a;
}

LinearOperator OperatorSpec::build(std::size_t dim) const {
  LinearOperator op = LinearOperator::zero(dim, parity);
  for (const auto& [r, c, v] : entries) {
    if (r >= dim || c >= dim) throw InputError("operator entry (" + std::to_string(r) + ", " + std::to_string(c) + ") out of range");
    op.matrix.add(r, c, v);
  }
  return op;
}

Problem parse_problem(const std::string& src) {
  json j;
  try {
    j = json::parse(src);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  only_keys(j, "problem",
            {"version", "kind", "name", "options", "algebra", "operator", "components", "truncation", "lie", "geometry",
             "inputs", "mc"});
  Problem p;
  p.version = static_cast<int>(integer(need(j, "problem", "version"), "version", 1, 1000));
  if (p.version != kProblemVersion) bad("version", "unsupported version " + std::to_string(p.version));
  p.kind = parse_kind(text(need(j, "problem", "kind"), "kind"));
  if (j.contains("name")) p.name = text(j["name"], "name");
  if (j.contains("options")) {
    const auto& o = j["options"];
    only_keys(o, "options", {"arity_cap", "degree_cap", "n_max", "seed"});
    if (o.contains("arity_cap")) p.options.arity_cap = static_cast<int>(integer(o["arity_cap"], "options.arity_cap", 1, 8));
    if (o.contains("degree_cap")) p.options.degree_cap = static_cast<int>(integer(o["degree_cap"], "options.degree_cap", 0, 12));
    if (o.contains("n_max")) p.options.n_max = static_cast<int>(integer(o["n_max"], "options.n_max", 1, 16));
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) bad("options.seed", "expected a nonnegative integer");
      p.options.seed = o["seed"].get<std::uint64_t>();
    }
  }
  auto forbid = [&](const char* key) {
    if (j.contains(key)) bad(key, "not allowed for kind " + kind_name(p.kind));
  };
  switch (p.kind) {
    case ProblemKind::AlgebraOperator:
      forbid("components"), forbid("truncation"), forbid("lie"), forbid("geometry");
      p.algebra = parse_algebra(need(j, "problem", "algebra"));
      p.op = parse_operator(need(j, "problem", "operator"), "operator", true);
      break;
    case ProblemKind::BVFamily: {
      forbid("operator"), forbid("lie"), forbid("geometry");
      p.algebra = parse_algebra(need(j, "problem", "algebra"));
      const auto& cs = need(j, "problem", "components");
      if (!cs.is_array() || cs.empty()) bad("components", "expected a nonempty array");
      for (std::size_t i = 0; i < cs.size(); ++i)
        p.components.push_back(parse_operator(cs[i], "components[" + std::to_string(i) + "]", false));
      if (j.contains("truncation")) p.truncation = static_cast<int>(integer(j["truncation"], "truncation", 1, 16));
      if (p.truncation && static_cast<std::size_t>(p.truncation) < p.components.size())
        bad("truncation", "must be at least the number of components");
      break;
    }
    case ProblemKind::LieData:
      forbid("algebra"), forbid("operator"), forbid("components"), forbid("truncation"), forbid("geometry");
      parse_lie(need(j, "problem", "lie"), p);
      break;
    case ProblemKind::PoissonGeometry: {
      forbid("algebra"), forbid("operator"), forbid("components"), forbid("truncation"), forbid("lie");
      const auto& g = need(j, "problem", "geometry");
      only_keys(g, "geometry", {"dim", "poisson"});
      p.dim = static_cast<int>(integer(need(g, "geometry", "dim"), "geometry.dim", 1, 6));
      p.poisson = text(need(g, "geometry", "poisson"), "geometry.poisson");
      break;
    }
  }
  if (j.contains("inputs")) {
    const auto& in = j["inputs"];
    if (!in.is_array()) bad("inputs", "expected an array");
    for (const auto& x : in) {
      if (p.kind == ProblemKind::PoissonGeometry)
        p.inputs.push_back(text(x, "inputs"));
      else
        p.inputs.push_back(std::to_string(index(x, "inputs")));
    }
  }
  if (j.contains("mc")) {
    if (p.kind != ProblemKind::AlgebraOperator) bad("mc", "only for kind algebra+operator");
    only_keys(j["mc"], "mc", {"cdga", "element"});
    p.mc_cdga = text(need(j["mc"], "mc", "cdga"), "mc.cdga");
    if (j["mc"].contains("element")) p.mc_element = entries(j["mc"]["element"], "mc.element");
  }
  // Semantic validation that needs no heavy computation.
  if (p.kind == ProblemKind::PoissonGeometry) {
    problem_poisson(p);
    for (const auto& s : p.inputs) parse_expression(s, p.dim, false);
  }
  if (p.kind == ProblemKind::LieData) {
    p.lie.table();
    if (p.model == "invariant") problem_poisson(p);
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string serialize_problem(const Problem& p) {
  json j;
  j["version"] = p.version;
  j["kind"] = kind_name(p.kind);
  if (!p.name.empty()) j["name"] = p.name;
  j["options"] = {{"arity_cap", p.options.arity_cap},
                  {"degree_cap", p.options.degree_cap},
                  {"n_max", p.options.n_max},
                  {"seed", p.options.seed}};
  switch (p.kind) {
    case ProblemKind::AlgebraOperator:
      j["algebra"] = algebra_json(p.algebra);
      j["operator"] = {{"parity", p.op.parity}, {"entries", entries_json(p.op.entries)}};
      break;
    case ProblemKind::BVFamily: {
      j["algebra"] = algebra_json(p.algebra);
      json cs = json::array();
      for (const auto& c : p.components) cs.push_back({{"entries", entries_json(c.entries)}});
      j["components"] = cs;
      if (p.truncation) j["truncation"] = p.truncation;
      break;
    }
    case ProblemKind::LieData: {
      json l;
      l["dim"] = p.lie.dim;
      json c = json::array();
      for (const auto& s : p.lie.constants) c.push_back(json::array({s.i, s.j, s.k, format_scalar(s.c)}));
      l["constants"] = c;
      l["model"] = p.model;
      if (!p.higher.empty()) {
        json h = json::array();
        for (const auto& hb : p.higher)
          h.push_back({{"inputs", hb.inputs}, {"output", hb.output}, {"value", format_scalar(hb.value)}});
        l["higher"] = h;
      }
      if (!p.lie_poisson.empty()) l["poisson"] = p.lie_poisson;
      if (p.truncation) l["truncation"] = p.truncation;
      j["lie"] = l;
      break;
    }
    case ProblemKind::PoissonGeometry:
      j["geometry"] = {{"dim", p.dim}, {"poisson", p.poisson}};
      break;
  }
  if (!p.inputs.empty()) {
    json in = json::array();
    for (const auto& s : p.inputs) {
      if (p.kind == ProblemKind::PoissonGeometry)
        in.push_back(s);
      else
        in.push_back(std::stoull(s));
    }
    j["inputs"] = in;
  }
  if (!p.mc_cdga.empty()) {
    j["mc"] = {{"cdga", p.mc_cdga}};
    if (!p.mc_element.empty()) j["mc"]["element"] = entries_json(p.mc_element);
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

std::vector<std::string> fixture_names() {
  return {"abelian3", "heisenberg", "sl2", "r2-linear-poisson", "r4-generalized"};
}

Problem fixture_problem(const std::string& name) {
  Problem p;
  p.name = name;
  if (name == "abelian3" || name == "heisenberg" || name == "sl2") {
    p.kind = ProblemKind::LieData;
    p.lie = name == "abelian3" ? LieData::abelian(3) : name == "heisenberg" ? LieData::heisenberg() : LieData::sl2();
    return p;
  }
  if (name == "r2-linear-poisson") {
    p.kind = ProblemKind::PoissonGeometry;
    p.dim = 2;
    p.poisson = "x1*@1^@2";
    p.inputs = {"dx1", "dx2"};
    return p;
  }
  if (name == "r4-generalized") {
    p.kind = ProblemKind::PoissonGeometry;
    p.dim = 4;
    p.poisson = "@1^@2 + x1*@1^@2^@3^@4";
    p.inputs = {"dx1", "dx2", "dx3", "dx4"};
    return p;
  }
  throw InputError("unknown fixture '" + name + "'");
}

// ---------------------------------------------------------------------------

PolyMultivector problem_poisson(const Problem& p) {
  if (p.kind == ProblemKind::PoissonGeometry) return parse_expression(p.poisson, p.dim, true);
  if (p.kind == ProblemKind::LieData && p.model == "invariant")
    return p.lie_poisson.empty() ? PolyMultivector(p.lie.dim) : parse_expression(p.lie_poisson, p.lie.dim, true);
  throw InputError("problem has no Poisson multivector");
}

LInftyStructure problem_lie_linfty(const Problem& p, int arity_cap) {
  if (p.kind != ProblemKind::LieData) throw InputError("problem is not lie-data");
  LInftyStructure l = lie_linfty(p.lie, arity_cap);
  const auto n = static_cast<std::size_t>(p.lie.dim);
  for (const auto& hb : p.higher) {
    const int ar = static_cast<int>(hb.inputs.size());
    if (ar > arity_cap) continue;
    Key key(hb.inputs.begin(), hb.inputs.end());
    int s = sort_with_sign(key, l.space.parity);
    if (s == 0) throw InputError("higher bracket with a repeated odd input is zero by symmetry");
    auto& table = l.brackets[static_cast<std::size_t>(ar - 1)].table;
    auto it = table.try_emplace(key, zero_vec(n)).first;
    it->second[hb.output] += s * hb.value;
    if (is_zero(it->second)) table.erase(it);
  }
  return l;
}

int problem_truncation(const Problem& p) {
  switch (p.kind) {
    case ProblemKind::AlgebraOperator:
      return 1;
    case ProblemKind::BVFamily:
      return p.truncation ? p.truncation : std::max<int>(static_cast<int>(p.components.size()), p.options.n_max);
    case ProblemKind::LieData: {
      if (p.truncation) return p.truncation;
      int need = std::max(2, p.options.n_max);
      if (p.model == "ce")
        for (const auto& hb : p.higher) need = std::max(need, static_cast<int>(hb.inputs.size()));
      else
        need = std::max(need, problem_poisson(p).max_odd_degree());
      return need;
    }
    case ProblemKind::PoissonGeometry:
      return std::max(p.options.n_max, problem_poisson(p).max_odd_degree());
  }
  return 1;
}

BVInfinity problem_bv(const Problem& p) {
  const int n = problem_truncation(p);
  switch (p.kind) {
    case ProblemKind::BVFamily: {
      BVInfinity bv;
      bv.algebra = p.algebra.build();
      bv.op.truncation = n;
      for (const auto& c : p.components) {
        auto op = c.build(bv.dim());
        op.parity = 1;
        bv.op.components.push_back(op);
      }
      return bv;
    }
    case ProblemKind::LieData: {
      if (p.model == "invariant") return invariant_model(p.lie, problem_poisson(p), n).bv;
      int top = 2;
      for (const auto& hb : p.higher) top = std::max(top, static_cast<int>(hb.inputs.size()));
      return ce_complex(problem_lie_linfty(p, top), n);
    }
    default:
      throw InputError("kind " + kind_name(p.kind) + " does not describe a finite BV-infinity family");
  }
}

}  // namespace bvinf

namespace bvinf {

AlgebraSpec algebra_spec(const Algebra& alg) {
  AlgebraSpec s;
  if (!alg.generators().empty()) {
    s.generators = alg.generators();
    return s;
  }
  s.labels = alg.space().labels;
  s.parity = alg.space().parity;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (alg.unit()[i] != 0) s.unit = i;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = 0; j < alg.dim(); ++j)
      for (const auto& [k, c] : alg.product(i, j)) s.products.emplace_back(i, j, k, c);
  return s;
}

OperatorSpec operator_spec(const LinearOperator& d) {
  OperatorSpec s;
  s.parity = d.parity;
  for (std::size_t c = 0; c < d.matrix.cols(); ++c)
    for (const auto& [r, v] : d.matrix.column(c)) s.entries.emplace_back(r, c, v);
  return s;
}

Problem operator_problem(const std::string& name, const Algebra& alg, const LinearOperator& d) {
  Problem p;
  p.kind = ProblemKind::AlgebraOperator;
  p.name = name;
  p.algebra = algebra_spec(alg);
  p.op = operator_spec(d);
  return p;
}

Problem bv_family_problem(const std::string& name, const BVInfinity& bv) {
  Problem p;
  p.kind = ProblemKind::BVFamily;
  p.name = name;
  p.algebra = algebra_spec(bv.algebra);
  for (const auto& c : bv.op.components) p.components.push_back(operator_spec(c));
  p.truncation = bv.op.truncation;
  return p;
}

}  // namespace bvinf
