// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.

#include "bvinf/problem.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace bvinf;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LinearOperator random_operator(Rng& rng, const Algebra& alg, int parity) {
  LinearOperator d = LinearOperator::zero(alg.dim(), parity);
  for (std::size_t c = 0; c < alg.dim(); ++c)
    for (std::size_t r = 0; r < alg.dim(); ++r)
      if ((alg.parity(r) ^ alg.parity(c)) == parity && rng.chance(40)) d.matrix.set(r, c, rng.small_rational(3, 2));
  return d;
}

std::size_t unit_of(const Algebra& alg) {
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (alg.unit()[i] != 0) return i;
  return 0;
}

// Odd operator with D(1) = 0 but otherwise unconstrained (D^2 usually != 0).
LinearOperator random_flat_operator(Rng& rng, const Algebra& alg) {
  LinearOperator d = random_odd_operator(rng, alg);
  const std::size_t u = unit_of(alg);
  for (std::size_t r = 0; r < alg.dim(); ++r) d.matrix.set(r, u, 0);
  return d;
}

Outcome square_zero_equivalence() {
  Rng rng(101);
  int instances = 0, square_zero = 0, mismatches = 0, perturbed = 0, witnesses = 0;
  for (int i = 0; i < 120; ++i) {
    Algebra a = random_algebra(rng, 16, 2);
    LinearOperator d = i % 3 == 2 ? random_flat_operator(rng, a) : random_square_zero_operator(rng, a);
    const bool sq = (d.matrix * d.matrix).is_zero();
    const bool rel = check_relations(derived_structure(a, d, 4), 4).ok;
    ++instances;
    square_zero += sq;
    mismatches += sq != rel;
  }
  for (int i = 0; i < 24; ++i) {
    Algebra a = random_algebra(rng, 16, 4);
    LinearOperator d = perturb_operator(rng, a, random_square_zero_operator(rng, a));
    if ((d.matrix * d.matrix).is_zero()) continue;
    ++perturbed;
    auto r = check_relations(derived_structure(a, d, 4), 4);
    witnesses += !r.ok && r.failing_arity > 0 && !r.witness.empty() && !is_zero(r.residual);
  }
  std::ostringstream os;
  os << instances << " random pairs (" << square_zero << " with D^2 = 0), " << mismatches
     << " mismatches; " << witnesses << "/" << perturbed << " perturbed with witness";
  return {instances >= 100 && mismatches == 0 && square_zero > 0 && square_zero < instances && perturbed >= 20 &&
              witnesses == perturbed,
          os.str()};
}

Outcome exponential_identity() {
  Rng rng(202);
  Algebra ext = Algebra::exterior(4, "t");
  Algebra poly = Algebra::truncated_polynomial(5, "x");
  int ok = 0, total = 0;
  for (int i = 0; i < 120; ++i) {
    const bool odd_case = i % 2 == 0;
    const Algebra& a = odd_case ? ext : poly;
    LinearOperator d = random_operator(rng, a, odd_case ? rng.uniform(0, 1) : 0);
    Vec x = random_ideal_element(rng, a, 0);
    ++total;
    ok += exp_conjugation_check(a, d, x);
  }
  return {total >= 100 && ok == total, std::to_string(ok) + "/" + std::to_string(total) +
                                           " pairs in Lambda(t1..t4) and Q[x]/(x^5)"};
}

Outcome mc_correspondence() {
  Rng rng(303);
  auto zoo = test_cdga_zoo();
  int agree = 0, total = 0, mc = 0;
  for (int i = 0; i < 140; ++i) {
    Algebra a = random_algebra(rng, 8);
    LinearOperator d = random_square_zero_operator(rng, a);
    const auto& c = zoo[static_cast<std::size_t>(i) % zoo.size()];
    Vec xi = random_mc_candidate(rng, c, a, d, i % 2 == 0);
    auto m = mc_exponential_check(a, d, c, xi);
    ++total;
    agree += m.agree();
    mc += m.is_mc;
  }
  std::ostringstream os;
  os << agree << "/" << total << " agree across " << zoo.size() << " test cdgas (" << mc << " MC, " << total - mc
     << " not)";
  return {total >= 100 && zoo.size() >= 5 && agree == total && mc > 0 && mc < total, os.str()};
}

Outcome homotopy_abelian() {
  Rng rng(404);
  int morph_ok = 0, abelian = 0, total = 0;
  for (int i = 0; i < 55; ++i) {
    Algebra a = random_algebra(rng, 12, 3);
    LinearOperator d = random_square_zero_operator(rng, a);
    ++total;
    morph_ok += check_morphism(exp_morphism(a, d, 4), 4).ok;
    abelian += is_homotopy_abelian_up_to(from_operator(a, d, 4), 4);
  }
  std::ostringstream os;
  os << "exp morphism " << morph_ok << "/" << total << ", homotopy abelian " << abelian << "/" << total;
  return {total >= 50 && morph_ok == total && abelian == total, os.str()};
}

Outcome rescaling() {
  Rng rng(505);
  int ok = 0, total = 0, nonabelian = 0;
  for (int i = 0; i < 24; ++i) {
    auto l = random_odd_linfty(rng, 4);
    if (!check_relations(l, 4).ok) continue;
    ++total;
    for (int n = 2; n <= 4; ++n) nonabelian += !l.bracket(n).is_zero();
    try {
      auto fs = rescaled_structure(ce_complex(l, 4), 4);
      ok += check_relations(fs.rescaled, 4).ok;
    } catch (const MathError&) {
      // not divisible
    }
  }
  std::ostringstream os;
  os << ok << "/" << total << " CE complexes divisible with valid rescaled structure (" << nonabelian
     << " nonzero higher brackets among the sources)";
  return {total >= 20 && ok == total, os.str()};
}

Outcome degeneration_fixtures() {
  bool abelian_free = true;
  {
    auto r = degeneration_check(problem_bv(fixture_problem("abelian3")), 4);
    for (const auto& l : r.levels) abelian_free = abelian_free && l.free_by_blocks && l.free_by_dimension;
    abelian_free = abelian_free && r.levels.size() == 4;
  }
  auto heis = problem_bv(fixture_problem("heisenberg"));
  auto lvl = degeneration_level(heis, 2);
  auto ki = kernel_image(heis.op.total_matrix(heis.dim(), 2));
  const bool heis_ok = !lvl.free_by_blocks && !lvl.free_by_dimension && lvl.homology_dim == 14 &&
                       2 * lvl.base_dim == 16 && ki.kernel.size() == 15 && ki.image.size() == 1;
  Rng rng(606);
  int agree = 0, total = 0, degenerate = 0;
  for (int i = 0; i < 60; ++i) {
    auto f = random_bv_family(rng, 4);
    auto r = degeneration_check(f.bv, 4);
    ++total;
    agree += r.certificates_agree();
    degenerate += r.degenerate();
  }
  std::ostringstream os;
  os << "abelian free for N <= 4: " << (abelian_free ? "yes" : "no") << "; Heisenberg N=2: dim " << lvl.homology_dim
     << " vs " << 2 * lvl.base_dim << ", ker " << ki.kernel.size() << ", im " << ki.image.size()
     << "; certificates agree on " << agree << "/" << total << " families (" << degenerate << " degenerate)";
  return {abelian_free && heis_ok && total >= 50 && agree == total, os.str()};
}

Outcome main_theorem() {
  Rng rng(707);
  int ok = 0, total = 0;
  for (int i = 0; i < 22; ++i) {
    auto bv = random_gauge_family(rng, 4);
    if (!check_bv(bv.algebra, bv.op).ok) continue;
    auto v = main_theorem_check(bv, 4, 4);
    ++total;
    bool zero = true;
    for (std::size_t n = 1; n < v.transferred_sizes.size(); ++n) zero = zero && v.transferred_sizes[n] == 0;
    ok += v.degenerate && v.abelian && zero;
  }
  auto hv = main_theorem_check(problem_bv(fixture_problem("heisenberg")), 4, 4);
  const bool heis = !hv.degenerate && !hv.abelian && hv.transferred_sizes.size() >= 2 && hv.transferred_sizes[1] > 0;
  std::ostringstream os;
  os << ok << "/" << total << " gauge families degenerate and homotopy abelian; Heisenberg non-degenerate with "
     << (hv.transferred_sizes.size() >= 2 ? hv.transferred_sizes[1] : 0) << " nonzero m'_2 values";
  return {total >= 20 && ok == total && heis, os.str()};
}

Outcome poisson_geometry() {
  auto form = [](const std::string& s, int n) { return parse_expression(s, n, false); };
  auto p2 = problem_poisson(fixture_problem("r2-linear-poisson"));
  auto c2 = check_poisson(p2);
  const bool ds2 = dsquared_check(p2, 6, 3);
  auto m2 = koszul_brackets(p2, 2, {form("dx1", 2), form("dx2", 2)});
  const bool m2_ok = m2 == form("dx1", 2);
  bool m3_zero = true;
  std::vector<std::string> probes = {"x1", "x2", "dx1", "dx2", "x1*dx2", "x2*dx1", "dx1^dx2", "x1*x2"};
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = i; j < probes.size(); ++j)
      for (std::size_t k = j; k < probes.size(); ++k)
        m3_zero = m3_zero && koszul_brackets(p2, 3, {form(probes[i], 2), form(probes[j], 2), form(probes[k], 2)}).is_zero();
  auto p4 = problem_poisson(fixture_problem("r4-generalized"));
  auto c4 = check_poisson(p4);
  bool ds4 = false, m4_ok = false;
  std::string m4s = "-";
  if (c4.poisson) {
    ds4 = dsquared_check(p4, 6, 4);
    auto m4 = koszul_brackets(p4, 4, {form("dx1", 4), form("dx2", 4), form("dx3", 4), form("dx4", 4)});
    m4s = format_form(m4);
    m4_ok = m4 == form("-dx1", 4);
  }
  std::ostringstream os;
  os << "R^2: Poisson " << c2.poisson << ", D^2 = 0 " << ds2 << ", m2(dx1,dx2) = " << format_form(m2) << ", m3 = 0 "
     << m3_zero << "; R^4: Poisson " << c4.poisson << " (oracle agrees " << c4.oracle_agrees << "), D^2 = 0 " << ds4
     << ", m4(dx1..dx4) = " << m4s;
  return {c2.poisson && c2.oracle_agrees && ds2 && m2_ok && m3_zero && c4.oracle_agrees &&
              (!c4.poisson || (ds4 && m4_ok)),
          os.str()};
}

Outcome order_bounds() {
  Rng rng(909);
  int ok = 0, total = 0;
  std::string kinds;
  for (int i = 0; i < 12; ++i) {
    const int n = rng.uniform(2, 4);
    const int k = 1 + i % 4 > n ? n : 1 + i % 4;
    auto q = random_k_vector(rng, n, k, 2);
    ++total;
    ok += koszul_order_check(q, k, 6).ok;
    kinds += (kinds.empty() ? "" : ",") + std::to_string(k) + "@R^" + std::to_string(n);
  }
  return {total >= 10 && ok == total, std::to_string(ok) + "/" + std::to_string(total) + " k-vectors (" + kinds + ")"};
}

Outcome e1_collapse() {
  Rng rng(1010);
  auto cases = invariant_cases(rng, 24);
  int agree = 0, total = 0;
  for (const auto& c : cases) {
    auto r = invariant_model(c.lie, c.p, 4);
    auto deg = degeneration_check(r.bv, 4);
    ++total;
    agree += deg.certificates_agree() && e1_collapses(r.bv, 4) == deg.degenerate();
  }
  // non-degenerate contrast: CE complexes of non-abelian Lie algebras
  int contrast = 0, contrast_agree = 0;
  for (const auto& name : {"heisenberg", "sl2"}) {
    auto bv = problem_bv(fixture_problem(name));
    auto deg = degeneration_check(bv, 4);
    contrast += !deg.degenerate();
    contrast_agree += e1_collapses(bv, 4) == deg.degenerate();
  }
  return {total >= 20 && agree == total && contrast == 2 && contrast_agree == 2,
          std::to_string(agree) + "/" + std::to_string(total) +
              " invariant models: E1 collapse test agrees with degeneration_check; " +
              std::to_string(contrast_agree) + "/2 non-degenerate CE contrasts agree (manifold statement itself not "
              "checkable on finite models)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"D^2 = 0 iff relations hold", square_zero_equivalence},
      {"exponential identity", exponential_identity},
      {"MC correspondence", mc_correspondence},
      {"homotopy abelian from_operator", homotopy_abelian},
      {"rescaling", rescaling},
      {"degeneration fixtures", degeneration_fixtures},
      {"degenerate implies homotopy abelian", main_theorem},
      {"Poisson geometry", poisson_geometry},
      {"order bounds", order_bounds},
      {"E1 collapse on invariant models", e1_collapse},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    char t[32];
    std::snprintf(t, sizeof t, "%.1f s", seconds_since(t0));
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " ("
              << o.detail << "; " << t << ")" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
