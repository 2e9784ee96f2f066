#include "bvinf/polygeom.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace bvinf {

int Monomial::degree() const {
  int d = 0;
  for (auto e : exps) d += e;
  return d;
}

int Monomial::odd_degree() const { return std::popcount(odd); }

namespace {

// Sign of concatenating ascending odd lists a then b; 0 on overlap.
int merge_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int swaps = 0;
  for (std::uint32_t rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

void check_index(int n, int i) {
  if (i < 0 || i >= n) throw std::out_of_range("SuperPoly: variable index out of range");
}

}  // namespace

SuperPoly SuperPoly::constant(int nvars, const Scalar& c) {
  SuperPoly p(nvars);
  p.add_term(Monomial{std::vector<std::uint8_t>(static_cast<std::size_t>(nvars), 0), 0}, c);
  return p;
}

SuperPoly SuperPoly::x(int nvars, int i) {
  check_index(nvars, i);
  SuperPoly p(nvars);
  Monomial m{std::vector<std::uint8_t>(static_cast<std::size_t>(nvars), 0), 0};
  m.exps[static_cast<std::size_t>(i)] = 1;
  p.add_term(m, 1);
  return p;
}

SuperPoly SuperPoly::odd(int nvars, int i) {
  check_index(nvars, i);
  SuperPoly p(nvars);
  p.add_term(Monomial{std::vector<std::uint8_t>(static_cast<std::size_t>(nvars), 0), 1u << i}, 1);
  return p;
}

void SuperPoly::add_term(const Monomial& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SuperPoly SuperPoly::operator+(const SuperPoly& o) const {
  SuperPoly r = *this;
  if (r.n_ == 0) r.n_ = o.n_;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

SuperPoly SuperPoly::operator-(const SuperPoly& o) const { return *this + o.scaled(-1); }

SuperPoly SuperPoly::scaled(const Scalar& s) const {
  SuperPoly r(n_);
  if (s == 0) return r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
  return r;
}

SuperPoly SuperPoly::operator*(const SuperPoly& o) const {
  SuperPoly r(std::max(n_, o.n_));
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      int s = merge_sign(a.odd, b.odd);
      if (s == 0) continue;
      Monomial m{a.exps, a.odd | b.odd};
      bool overflow = false;
      for (std::size_t i = 0; i < m.exps.size(); ++i) {
        int e = m.exps[i] + b.exps[i];
        if (e > 255) overflow = true;
        m.exps[i] = static_cast<std::uint8_t>(e);
      }
      if (overflow) throw MathError("SuperPoly: exponent overflow");
      r.add_term(m, ca * cb * s);
    }
  return r;
}

SuperPoly SuperPoly::d_x(int i) const {
  check_index(n_, i);
  SuperPoly r(n_);
  for (const auto& [m, c] : terms_) {
    auto e = m.exps[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    Monomial mm = m;
    mm.exps[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e - 1);
    r.add_term(mm, c * e);
  }
  return r;
}

SuperPoly SuperPoly::d_odd_left(int i) const {
  check_index(n_, i);
  SuperPoly r(n_);
  const std::uint32_t bit = 1u << i;
  for (const auto& [m, c] : terms_) {
    if (!(m.odd & bit)) continue;
    int before = std::popcount(m.odd & (bit - 1));
    r.add_term(Monomial{m.exps, m.odd & ~bit}, (before & 1) ? -c : c);
  }
  return r;
}

SuperPoly SuperPoly::d_odd_right(int i) const {
  check_index(n_, i);
  SuperPoly r(n_);
  const std::uint32_t bit = 1u << i;
  for (const auto& [m, c] : terms_) {
    if (!(m.odd & bit)) continue;
    int after = std::popcount(m.odd >> (i + 1));
    r.add_term(Monomial{m.exps, m.odd & ~bit}, (after & 1) ? -c : c);
  }
  return r;
}

SuperPoly SuperPoly::odd_component(int k) const {
  SuperPoly r(n_);
  for (const auto& [m, c] : terms_)
    if (m.odd_degree() == k) r.terms_.emplace(m, c);
  return r;
}

std::optional<int> SuperPoly::parity() const {
  std::optional<int> p;
  for (const auto& [m, c] : terms_) {
    int q = m.odd_degree() & 1;
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p.value_or(0);
}

int SuperPoly::max_odd_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.odd_degree());
  return d;
}

int SuperPoly::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::string SuperPoly::to_string(const std::string& odd_prefix) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Scalar a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    } else if (a < 0) {
      os << '-';
      a = -a;
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      for (int e = 0; e < m.exps[i]; ++e) factors.push_back("x" + std::to_string(i + 1));
    std::vector<std::string> odd;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.odd >> i & 1u) odd.push_back(odd_prefix + std::to_string(i + 1));
    std::string body;
    for (std::size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];
    std::string wedge;
    for (std::size_t i = 0; i < odd.size(); ++i) wedge += (i ? "^" : "") + odd[i];
    if (!wedge.empty()) body += (body.empty() ? "" : "*") + wedge;
    if (body.empty())
      os << a.get_str();
    else if (a == 1)
      os << body;
    else
      os << a.get_str() << '*' << body;
  }
  return os.str();
}

std::string format_multivector(const PolyMultivector& p) { return p.to_string("@"); }
std::string format_form(const PolyForm& p) { return p.to_string("dx"); }

// ---------------------------------------------------------------------------

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& s, int n, bool mv) : s_(s), n_(n), mv_(mv) {}

  SuperPoly parse() {
    SuperPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("expression \"" + s_ + "\": " + msg + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  SuperPoly expr() {
    SuperPoly r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }
  SuperPoly term() {
    SuperPoly r = factor();
    while (eat('*') || eat('^')) r = r * factor();
    return r;
  }
  int index() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("missing variable index");
    int i = std::stoi(s_.substr(start, pos_ - start));
    if (i < 1 || i > n_) fail("variable index " + std::to_string(i) + " outside 1.." + std::to_string(n_));
    return i - 1;
  }
  SuperPoly factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return factor().scaled(-1);
    }
    if (c == '(') {
      ++pos_;
      SuperPoly r = expr();
      if (!eat(')')) fail("missing ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      return SuperPoly::constant(n_, parse_scalar(s_.substr(start, pos_ - start)));
    }
    if (s_.compare(pos_, 2, "dx") == 0) {
      if (mv_) fail("dx tokens are not allowed in a multivector");
      pos_ += 2;
      return SuperPoly::odd(n_, index());
    }
    if (c == 'x') {
      ++pos_;
      return SuperPoly::x(n_, index());
    }
    if (c == '@') {
      if (!mv_) fail("@ tokens are not allowed in a form");
      ++pos_;
      return SuperPoly::odd(n_, index());
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int n_;
  bool mv_;
};

}  // namespace

SuperPoly parse_expression(const std::string& text, int nvars, bool multivector) {
  if (nvars < 1 || nvars > 16) throw InputError("number of variables must be in 1..16");
  return ExprParser(text, nvars, multivector).parse();
}

// ---------------------------------------------------------------------------

namespace {

SuperPoly single(int n, const Monomial& m, const Scalar& c) {
  SuperPoly p(n);
  p.add_term(m, c);
  return p;
}

// Atoms of a monomial: the x-part (if nonconstant) followed by the odd variables.
std::vector<SuperPoly> atoms(int n, const Monomial& m) {
  std::vector<SuperPoly> out;
  Monomial f{m.exps, 0};
  if (f.degree() > 0) out.push_back(single(n, f, 1));
  for (int i = 0; i < n; ++i)
    if (m.odd >> i & 1u) out.push_back(SuperPoly::odd(n, i));
  return out;
}

SuperPoly product(int n, const std::vector<SuperPoly>& xs, std::size_t from) {
  SuperPoly r = SuperPoly::constant(n, 1);
  for (std::size_t i = from; i < xs.size(); ++i) r = r * xs[i];
  return r;
}

int deg(const SuperPoly& p) { return std::max(0, p.max_odd_degree()); }

SuperPoly bracket_terms(int n, const Monomial& a, const Monomial& b);

SuperPoly bracket(const SuperPoly& a, const SuperPoly& b) {
  const int n = std::max(a.nvars(), b.nvars());
  SuperPoly r(n);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r = r + bracket_terms(n, ma, mb).scaled(ca * cb);
  return r;
}

SuperPoly bracket_terms(int n, const Monomial& a, const Monomial& b) {
  auto aa = atoms(n, a), ba = atoms(n, b);
  if (aa.empty() || ba.empty()) return SuperPoly(n);
  if (aa.size() >= 2) {
    // [X^Y, Z] = X^[Y,Z] + (-1)^{(|Z|-1)|Y|} [X,Z]^Y
    const SuperPoly& x = aa[0];
    SuperPoly y = product(n, aa, 1);
    SuperPoly z = single(n, b, 1);
    int s = parity_sign((deg(z) - 1) * deg(y));
    return x * bracket(y, z) + (bracket(x, z) * y).scaled(s);
  }
  if (ba.size() >= 2) {
    // [X, Y^Z] = [X,Y]^Z + (-1)^{(|X|-1)|Y|} Y^[X,Z]
    SuperPoly x = aa[0];
    const SuperPoly& y = ba[0];
    SuperPoly z = product(n, ba, 1);
    int s = parity_sign((deg(x) - 1) * deg(y));
    return bracket(x, y) * z + (y * bracket(x, z)).scaled(s);
  }
  const Monomial& am = aa[0].terms().begin()->first;
  const Monomial& bm = ba[0].terms().begin()->first;
  const bool a_odd = am.odd != 0, b_odd = bm.odd != 0;
  if (a_odd && b_odd) return SuperPoly(n);
  if (!a_odd && !b_odd) return SuperPoly(n);
  if (a_odd) return ba[0].d_x(std::countr_zero(am.odd));  // [d_i, g] = d_i g
  return aa[0].d_x(std::countr_zero(bm.odd)).scaled(-1);  // [f, d_j] = -d_j f
}

std::pair<SuperPoly, SuperPoly> split_parity(const SuperPoly& p) {
  SuperPoly even(p.nvars()), odd(p.nvars());
  for (const auto& [m, c] : p.terms()) (m.odd_degree() % 2 ? odd : even).add_term(m, c);
  return {even, odd};
}

SuperPoly oracle_homogeneous(const SuperPoly& f, int pf, const SuperPoly& g, int pg) {
  const int n = std::max(f.nvars(), g.nvars());
  SuperPoly r(n);
  int s = parity_sign((pf - 1) * (pg - 1));
  for (int i = 0; i < n; ++i) {
    r = r + f.d_odd_right(i) * g.d_x(i);
    r = r - (g.d_odd_right(i) * f.d_x(i)).scaled(s);
  }
  return r;
}

}  // namespace

PolyMultivector schouten(const PolyMultivector& a, const PolyMultivector& b) { return bracket(a, b); }

PolyMultivector schouten_oracle(const PolyMultivector& a, const PolyMultivector& b) {
  auto [a0, a1] = split_parity(a);
  auto [b0, b1] = split_parity(b);
  return oracle_homogeneous(a0, 0, b0, 0) + oracle_homogeneous(a0, 0, b1, 1) + oracle_homogeneous(a1, 1, b0, 0) +
         oracle_homogeneous(a1, 1, b1, 1);
}

// ---------------------------------------------------------------------------

PolyForm interior(const PolyMultivector& q, const PolyForm& w) {
  const int n = std::max(q.nvars(), w.nvars());
  PolyForm r(n);
  for (const auto& [m, c] : q.terms()) {
    PolyForm v = w;
    for (int i = n - 1; i >= 0 && !v.is_zero(); --i)
      if (m.odd >> i & 1u) v = v.d_odd_left(i);
    if (v.is_zero()) continue;
    r = r + single(n, Monomial{m.exps, 0}, c) * v;
  }
  return r;
}

PolyForm derham_d(const PolyForm& w) {
  PolyForm r(w.nvars());
  for (int i = 0; i < w.nvars(); ++i) {
    PolyForm di = w.d_x(i);
    if (!di.is_zero()) r = r + SuperPoly::odd(w.nvars(), i) * di;
  }
  return r;
}

PolyForm lie_derivative(const PolyMultivector& q, const PolyForm& w) {
  const int n = std::max(q.nvars(), w.nvars());
  PolyForm r(n);
  for (int k = 0; k <= q.max_odd_degree(); ++k) {
    PolyMultivector qk = q.odd_component(k);
    if (qk.is_zero()) continue;
    r = r + interior(qk, derham_d(w)) - derham_d(interior(qk, w)).scaled(parity_sign(k));
  }
  return r;
}

// ---------------------------------------------------------------------------

PolyMultivector poisson_component(const PolyMultivector& p, int i) { return p.odd_component(i + 1); }

PoissonCertificate check_poisson(const PolyMultivector& p) {
  for (const auto& [m, c] : p.terms()) {
    int k = m.odd_degree();
    if (k < 2) throw InputError("check_poisson: P may not contain functions or vector fields (P_{-1} = P_0 = 0)");
    if (k % 2) throw InputError("check_poisson: P must be even (only multivectors of even degree)");
  }
  PoissonCertificate cert;
  cert.square = schouten(p, p);
  cert.poisson = cert.square.is_zero();
  cert.oracle_agrees = schouten_oracle(p, p) == cert.square;
  if (!cert.poisson) {
    const auto& [m, c] = *cert.square.terms().begin();
    cert.first_nonzero = format_multivector(single(p.nvars(), m, c));
  }
  const int top = std::max(0, p.max_odd_degree() - 1);
  for (int i = 1; i <= top; ++i)
    if (!poisson_component(p, i).is_zero()) cert.components.push_back(i);
  cert.degreewise = true;
  for (int m = 2; m <= 2 * top; ++m) {
    PolyMultivector s(p.nvars());
    for (int i : cert.components) {
      int j = m - i;
      if (j >= 1 && j <= top) s = s + schouten(poisson_component(p, i), poisson_component(p, j));
    }
    if (!s.is_zero()) cert.degreewise = false;
  }
  return cert;
}

std::vector<PolyForm> monomial_forms(int nvars, int degree_cap) {
  std::vector<std::vector<std::uint8_t>> exps{{}};
  for (int v = 0; v < nvars; ++v) {
    std::vector<std::vector<std::uint8_t>> next;
    for (const auto& e : exps) {
      int used = 0;
      for (auto x : e) used += x;
      for (int k = 0; used + k <= degree_cap; ++k) {
        auto f = e;
        f.push_back(static_cast<std::uint8_t>(k));
        next.push_back(std::move(f));
      }
    }
    exps = std::move(next);
  }
  std::vector<PolyForm> out;
  for (const auto& e : exps)
    for (std::uint32_t mask = 0; mask < (1u << nvars); ++mask) out.push_back(single(nvars, Monomial{e, mask}, 1));
  return out;
}

PolyForm KoszulOperator::apply_monomial(const Monomial& m) const {
  auto it = memo_.find(m);
  if (it != memo_.end()) return it->second;
  PolyForm v = lie_derivative(q_, single(q_.nvars(), m, 1));
  memo_.emplace(m, v);
  return v;
}

PolyForm KoszulOperator::apply(const PolyForm& w) const {
  PolyForm r(std::max(q_.nvars(), w.nvars()));
  for (const auto& [m, c] : w.terms()) r = r + apply_monomial(m).scaled(c);
  return r;
}

namespace {

// [[..[L, a_1]..], a_k](v) by the recursion O_k(v) = O_{k-1}(a_k v) - s_k a_k O_{k-1}(v).
PolyForm iterated_commutator(const std::function<PolyForm(const PolyForm&)>& op, int op_parity,
                             const std::vector<PolyForm>& as, const std::vector<int>& parities, std::size_t k,
                             const PolyForm& v) {
  if (v.is_zero()) return v;
  if (k == 0) return op(v);
  int p = op_parity;
  for (std::size_t i = 0; i + 1 < k; ++i) p += parities[i];
  const PolyForm& a = as[k - 1];
  PolyForm r = iterated_commutator(op, op_parity, as, parities, k - 1, a * v);
  PolyForm t = a * iterated_commutator(op, op_parity, as, parities, k - 1, v);
  return r - t.scaled(parity_sign(p * parities[k - 1]));
}

}  // namespace

PolyForm derived_form_bracket(const std::function<PolyForm(const PolyForm&)>& op, int op_parity,
                              const std::vector<PolyForm>& inputs) {
  std::vector<int> par;
  int n = 1;
  for (const auto& w : inputs) {
    auto p = w.parity();
    if (!p) throw InputError("bracket inputs must be homogeneous forms");
    par.push_back(*p);
    n = std::max(n, w.nvars());
  }
  return iterated_commutator(op, op_parity, inputs, par, inputs.size(), SuperPoly::constant(n, 1));
}

namespace {

// Node of the generator-tuple tree: R_j = [R_{j-1}, a_j], evaluated lazily on
// monomials and memoized so siblings share their prefix work.
struct CommutatorNode {
  const CommutatorNode* parent = nullptr;
  const KoszulOperator* root = nullptr;
  PolyForm a;
  int a_parity = 0;
  int parent_parity = 0;  // parity of R_{j-1}
  mutable std::map<Monomial, PolyForm> memo;

  PolyForm eval_poly(const PolyForm& w) const {
    PolyForm r(w.nvars());
    for (const auto& [m, c] : w.terms()) r = r + eval(m).scaled(c);
    return r;
  }
  PolyForm eval(const Monomial& m) const {
    if (!parent) return root->apply_monomial(m);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    PolyForm single_m(static_cast<int>(m.exps.size()));
    single_m.add_term(m, 1);
    PolyForm r = parent->eval_poly(a * single_m) -
                 (a * parent->eval(m)).scaled(parity_sign(parent_parity * a_parity));
    memo.emplace(m, r);
    return r;
  }
};

}  // namespace

OrderCertificate koszul_order_check(const PolyMultivector& q, int order, int degree_cap) {
  OrderCertificate cert;
  cert.claimed = order;
  const int n = q.nvars();
  auto qp = q.parity();
  if (!qp) throw InputError("koszul_order_check: multivector must be homogeneous in parity");
  if (order < 0) throw InputError("koszul_order_check: order must be >= 0");
  KoszulOperator op(q);
  const int op_parity = (*qp + 1) % 2;
  auto forms = monomial_forms(n, degree_cap);
  cert.forms = forms.size();
  // generators: x_1..x_n (even), dx_1..dx_n (odd)
  std::vector<PolyForm> gens;
  std::vector<int> gpar;
  for (int i = 0; i < n; ++i) {
    gens.push_back(SuperPoly::x(n, i));
    gpar.push_back(0);
  }
  for (int i = 0; i < n; ++i) {
    gens.push_back(SuperPoly::odd(n, i));
    gpar.push_back(1);
  }
  const std::size_t len = static_cast<std::size_t>(order + 1);
  std::vector<std::size_t> idx;
  CommutatorNode root_node;
  root_node.root = &op;
  std::function<bool(const CommutatorNode&, int, std::size_t)> rec = [&](const CommutatorNode& node, int parity,
                                                                        std::size_t start) -> bool {
    if (idx.size() == len) {
      ++cert.tuples;
      for (const auto& w : forms) {
        PolyForm r = node.eval(w.terms().begin()->first);
        if (!r.is_zero()) {
          std::string t;
          for (auto i : idx) t += (t.empty() ? "" : ",") + format_form(gens[i]);
          cert.ok = false;
          cert.witness = "[L_Q; " + t + "](" + format_form(w) + ") = " + format_form(r);
          return false;
        }
      }
      return true;
    }
    for (std::size_t i = start; i < gens.size(); ++i) {
      CommutatorNode child;
      child.parent = &node;
      child.a = gens[i];
      child.a_parity = gpar[i];
      child.parent_parity = parity;
      idx.push_back(i);
      bool ok = rec(child, (parity + gpar[i]) % 2, gpar[i] == 1 ? i + 1 : i);
      idx.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  rec(root_node, op_parity, 0);
  return cert;
}

PolyForm koszul_brackets(const PolyMultivector& p, int n, const std::vector<PolyForm>& inputs) {
  if (n < 1) throw InputError("koszul_brackets: arity must be >= 1");
  if (static_cast<int>(inputs.size()) != n) throw InputError("koszul_brackets: expected " + std::to_string(n) + " inputs");
  auto cert = check_poisson(p);
  if (!cert.poisson) throw MathError("koszul_brackets: P is not a generalized Poisson structure");
  if (n == 1) return derived_form_bracket([](const PolyForm& w) { return derham_d(w); }, 1, inputs);
  KoszulOperator op(poisson_component(p, n - 1));
  return derived_form_bracket([&](const PolyForm& w) { return op.apply(w); }, 1, inputs);
}

bool dsquared_check(const PolyMultivector& p, int degree_cap, int truncation) {
  const int n = p.nvars();
  const int top = std::max(0, p.max_odd_degree() - 1);
  std::vector<std::optional<KoszulOperator>> ops(static_cast<std::size_t>(top + 1));
  for (int i = 1; i <= top; ++i) {
    auto c = poisson_component(p, i);
    if (!c.is_zero()) ops[static_cast<std::size_t>(i)].emplace(c);
  }
  auto apply = [&](int i, const PolyForm& w) -> PolyForm {
    if (i == 0) return derham_d(w);
    if (i > top || !ops[static_cast<std::size_t>(i)]) return PolyForm(n);
    return ops[static_cast<std::size_t>(i)]->apply(w);
  };
  for (const auto& w : monomial_forms(n, degree_cap)) {
    std::vector<PolyForm> dw;
    for (int j = 0; j < truncation; ++j) dw.push_back(apply(j, w));
    for (int m = 0; m < truncation; ++m) {
      PolyForm s(n);
      for (int j = 0; j <= m; ++j) s = s + apply(m - j, dw[static_cast<std::size_t>(j)]);
      if (!s.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace bvinf
