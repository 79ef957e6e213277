#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "padicseq/density.hpp"
#include "padicseq/errors.hpp"
#include "padicseq/recurrence.hpp"

using namespace padic;

namespace {

RecurrenceSpec make_spec(long p, std::vector<Rat> coeffs, std::vector<Rat> initial,
                         long precision) {
  RecurrenceSpec spec;
  spec.p = p;
  spec.order = static_cast<int>(coeffs.size());
  spec.coeffs = std::move(coeffs);
  spec.initial = std::move(initial);
  spec.precision = precision;
  return spec;
}

RecurrenceSpec fib(long p, long precision) {
  return make_spec(p, {-1, -1}, {0, 1}, precision);
}

Rat rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::vector<long> to_longs(const std::vector<Int>& v) {
  std::vector<long> out;
  for (const Int& x : v) out.push_back(mpz_get_si(x.get_mpz_t()));
  return out;
}

}  // namespace

TEST_CASE("attained residues from the orbit") {
  RecurrenceSpec spec = fib(11, 12);

  ResidueLevel l1 = attained_residues(spec, 1);
  CHECK(to_longs(l1.residues) == std::vector<long>{0, 1, 2, 3, 5, 8, 10});
  CHECK(l1.count == 7);
  CHECK(l1.density == rat(7, 11));

  ResidueLevel l4 = attained_residues(spec, 4);
  CHECK(l4.count == 8042);

  // visited states, not the modulus, drive the budget
  CHECK_THROWS_WITH_AS(attained_residues(spec, 4, 1000),
                       "alpha too large for exact enumeration", padic_error);
  CHECK_THROWS_AS(attained_residues(spec, 0), padic_error);

  RecurrenceSpec zero = make_spec(7, {-1, -1}, {0, 0}, 10);
  ResidueLevel z3 = attained_residues(zero, 3);
  CHECK(to_longs(z3.residues) == std::vector<long>{0});
  CHECK(z3.density == rat(1, 343));

  // full coverage at p = 3
  ResidueLevel f4 = attained_residues(fib(3, 10), 4);
  CHECK(f4.count == 81);
  CHECK(f4.density == 1);
}

TEST_CASE("rational coefficients reduce by modular inverse") {
  // s(n+2) = 2 s(n+1) - (1/3) s(n) over Z_5
  RecurrenceSpec spec = make_spec(5, {rat(1, 3), -2}, {1, 1}, 10);
  std::vector<Rat> terms = {1, 1};
  for (int n = 0; n < 10; ++n)
    terms.push_back(-(spec.coeffs[0] * terms[n] + spec.coeffs[1] * terms[n + 1]));
  ResidueLevel l3 = attained_residues(spec, 3);
  std::set<Int> got(l3.residues.begin(), l3.residues.end());
  Int m = pow_int(Int(5), 3);
  for (const Rat& t : terms) {
    Int num = t.get_num() % m, den, r;
    mpz_invert(den.get_mpz_t(), t.get_den().get_mpz_t(), m.get_mpz_t());
    mpz_fdiv_r(r.get_mpz_t(), Int(num * den).get_mpz_t(), m.get_mpz_t());
    CHECK(got.count(r) == 1);
  }
}

TEST_CASE("density profile: monotone, with the known Fibonacci counts") {
  DensityReport prof = density_profile(fib(11, 12), 4);
  REQUIRE(prof.profile.size() == 4);
  CHECK(prof.mode == DensityMode::empirical);
  long expect[] = {7, 67, 732, 8042};
  for (int a = 0; a < 4; ++a) CHECK(prof.profile[a].count == expect[a]);
  for (int a = 1; a < 4; ++a)
    CHECK(prof.profile[a].density < prof.profile[a - 1].density);
  for (int a = 0; a < 4; ++a) CHECK(prof.profile[a].density > rat(145, 264));

  // levels where every residue appears stay identically one
  DensityReport p3 = density_profile(fib(3, 10), 5);
  DensityReport p5 = density_profile(fib(5, 10), 5);
  for (const ResidueLevel& lvl : p3.profile) CHECK(lvl.density == 1);
  for (const ResidueLevel& lvl : p5.profile) CHECK(lvl.density == 1);

  // the doubling sequence misses 0 mod 11 but hits every nonzero residue
  RecurrenceSpec dbl = make_spec(11, {-2}, {1}, 10);
  DensityReport pd = density_profile(dbl, 2);
  CHECK(pd.profile[0].count == 10);
  CHECK(pd.profile[0].density == rat(10, 11));

  // p = 7 is inert for the Fibonacci polynomial; coverage thins out
  DensityReport p7 = density_profile(fib(7, 10), 2);
  CHECK(p7.profile[0].count == 7);
  CHECK(p7.profile[1].count == 37);
}

TEST_CASE("exact limiting density of Fibonacci at p = 11") {
  DensityReport rep = exact_limiting_density(fib(11, 12));
  REQUIRE(rep.has_exact);
  CHECK(rep.mode == DensityMode::exact);
  CHECK(rep.exact_limit == rat(145, 264));

  REQUIRE(rep.components.size() == 2);
  CHECK(rep.components[0].label == "certified cosets");
  CHECK(rep.components[0].measure == rat(6, 11));
  CHECK(rep.components[1].measure == rat(1, 264));

  // predicted per-level counts match the enumerated orbit
  REQUIRE(rep.profile.size() == 8);
  CHECK(rep.profile[0].count == 7);
  CHECK(rep.profile[1].count == 67);
  CHECK(rep.profile[2].count == 732);
  CHECK(rep.profile[3].count == 8042);
  CHECK(rep.profile[4].count == 88457);

  bool pruned_note = false;
  for (const std::string& line : rep.trace)
    if (line.find("closes empty") != std::string::npos) pruned_note = true;
  CHECK(pruned_note);

  DensityReport prof = density_profile(fib(11, 12), 4);
  CHECK(bracket_check(rep, prof));

  // tampering with one enumerated density must break the bracket
  DensityReport bad = prof;
  bad.profile[2].density += rat(1, 1331);
  CHECK_FALSE(bracket_check(rep, bad));
  DensityReport low = prof;
  low.profile[1].density = rat(1, 11);
  CHECK_FALSE(bracket_check(rep, low));
}

TEST_CASE("saturation certificates at p = 3 and p = 5") {
  for (long p : {3L, 5L}) {
    CAPTURE(p);
    DensityReport rep = exact_limiting_density(fib(p, 14));
    REQUIRE(rep.has_exact);
    CHECK(rep.exact_limit == 1);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].label.find("saturation by level") == 0);
    for (const ResidueLevel& lvl : rep.profile) CHECK(lvl.density == 1);
    CHECK(bracket_check(rep, density_profile(fib(p, 14), 4)));
  }
}

TEST_CASE("unsupported exact classes fail with the empirical hint") {
  // inert quadratic with partial coverage
  CHECK_THROWS_WITH_AS(exact_limiting_density(fib(7, 12)),
                       "exact density unsupported; use empirical mode", padic_error);
  CHECK_THROWS_WITH_AS(exact_limiting_density(fib(13, 12)),
                       "exact density unsupported; use empirical mode", padic_error);
  // the doubling sequence never attains 0 mod 11, so it cannot saturate
  RecurrenceSpec dbl = make_spec(11, {-2}, {1}, 10);
  CHECK_THROWS_WITH_AS(exact_limiting_density(dbl),
                       "exact density unsupported; use empirical mode", padic_error);
}

TEST_CASE("degenerate exact classes: zero and periodic families") {
  RecurrenceSpec zero = make_spec(7, {-1, -1}, {0, 0}, 10);
  DensityReport zr = exact_limiting_density(zero);
  REQUIRE(zr.has_exact);
  CHECK(zr.exact_limit == 0);
  REQUIRE(zr.components.size() == 1);
  CHECK(zr.components[0].label == "identically zero");
  for (const ResidueLevel& lvl : zr.profile) CHECK(lvl.count == 1);
  CHECK(bracket_check(zr, density_profile(zero, 4)));

  // s(n+1) = -s(n): the image is {1, -1}
  RecurrenceSpec alt = make_spec(7, {1}, {1}, 10);
  DensityReport ar = exact_limiting_density(alt);
  REQUIRE(ar.has_exact);
  CHECK(ar.exact_limit == 0);
  REQUIRE(ar.components.size() == 1);
  CHECK(ar.components[0].label == "finite image");
  for (const ResidueLevel& lvl : ar.profile) CHECK(lvl.count == 2);
  CHECK(bracket_check(ar, density_profile(alt, 4)));
}

TEST_CASE("exact engine agrees with the orbit at other split primes") {
  // 19 and 29 are +-1 mod 5, so the Fibonacci polynomial splits over Z_p
  for (long p : {19L, 29L}) {
    CAPTURE(p);
    DensityReport rep = exact_limiting_density(fib(p, 12));
    REQUIRE(rep.has_exact);
    CHECK(rep.exact_limit > 0);
    CHECK(rep.exact_limit < 1);
    CHECK(bracket_check(rep, density_profile(fib(p, 12), 3)));
  }

  // a_0 = +1: s(n+2) = 3 s(n+1) - s(n) with discriminant 5 again
  RecurrenceSpec luc = make_spec(11, {1, -3}, {0, 1}, 12);
  DensityReport rep = exact_limiting_density(luc);
  REQUIRE(rep.has_exact);
  CHECK(bracket_check(rep, density_profile(luc, 3)));
}

TEST_CASE("empirical residue tree carries projections as edges") {
  ResidueTree tree = residue_tree(fib(11, 12), 2, DensityMode::empirical);
  REQUIRE(tree.levels.size() == 2);
  CHECK(to_longs(tree.levels[0].residues) == std::vector<long>{0, 1, 2, 3, 5, 8, 10});
  CHECK(tree.levels[1].count == 67);
  CHECK(tree.full_marks.empty());
  CHECK(tree.edges.size() == 67);

  // node 5 has exactly one child, reached by digit 0
  std::vector<std::pair<long, long>> five;
  for (const TreeEdge& e : tree.edges)
    if (e.alpha == 1 && e.parent == 5)
      five.push_back({mpz_get_si(e.digit.get_mpz_t()), mpz_get_si(e.child.get_mpz_t())});
  REQUIRE(five.size() == 1);
  CHECK(five[0] == std::pair<long, long>{0, 5});

  for (const TreeEdge& e : tree.edges) {
    CHECK(e.child == e.parent + e.digit * pow_int(Int(11), e.alpha));
    CHECK(e.child % pow_int(Int(11), e.alpha) == e.parent);
  }
}

TEST_CASE("exact residue tree marks full cosets and prunes empty chains") {
  ResidueTree tree = residue_tree(fib(11, 12), 3, DensityMode::exact);
  REQUIRE(tree.levels.size() == 3);
  CHECK(to_longs(tree.levels[0].residues) == std::vector<long>{0, 1, 2, 3, 5, 8, 10});

  std::set<long> full1;
  for (auto& [lvl, r] : tree.full_marks)
    if (lvl == 1) full1.insert(mpz_get_si(r.get_mpz_t()));
  CHECK(full1 == std::set<long>{0, 1, 2, 3, 8, 10});

  // the open node 5 continues alone at level 2
  CHECK(to_longs(tree.levels[1].residues) == std::vector<long>{5});
  CHECK(tree.full_marks.count({2, Int(5)}) == 0);

  // at level 3 it sheds five full children and one continuation
  std::vector<long> digits, full_digits;
  for (const TreeEdge& e : tree.edges)
    if (e.alpha == 2 && e.parent == 5) {
      long d = mpz_get_si(e.digit.get_mpz_t());
      digits.push_back(d);
      if (tree.full_marks.count({3, e.child})) full_digits.push_back(d);
    }
  std::sort(digits.begin(), digits.end());
  std::sort(full_digits.begin(), full_digits.end());
  CHECK(digits == std::vector<long>{0, 4, 5, 6, 8, 9});
  CHECK(full_digits == std::vector<long>{0, 4, 5, 6, 8});
  CHECK(tree.levels[2].count == 6);

  // full nodes are frontier nodes: no edges leave them
  for (const TreeEdge& e : tree.edges)
    CHECK(tree.full_marks.count({e.alpha, e.parent}) == 0);
}

TEST_CASE("exact trees for the degenerate classes") {
  RecurrenceSpec zero = make_spec(7, {-1, -1}, {0, 0}, 10);
  ResidueTree zt = residue_tree(zero, 4, DensityMode::exact);
  REQUIRE(zt.levels.size() == 4);
  for (const ResidueLevel& lvl : zt.levels) {
    CHECK(lvl.count == 1);
    CHECK(lvl.residues[0] == 0);
  }
  CHECK(zt.full_marks.empty());
  for (const TreeEdge& e : zt.edges) CHECK(e.digit == 0);

  // saturated: a single level, every residue full
  ResidueTree st = residue_tree(fib(3, 14), 4, DensityMode::exact);
  REQUIRE(st.levels.size() == 1);
  CHECK(to_longs(st.levels[0].residues) == std::vector<long>{0, 1, 2});
  CHECK(st.full_marks.size() == 3);

  RecurrenceSpec dbl = make_spec(11, {-2}, {1}, 10);
  CHECK_THROWS_WITH_AS(residue_tree(dbl, 2, DensityMode::exact),
                       "exact density unsupported; use empirical mode", padic_error);
}

TEST_CASE("tree renderings") {
  ResidueTree tree = residue_tree(fib(11, 12), 3, DensityMode::exact);
  std::string dot = tree_to_dot(tree);
  CHECK(dot.find("digraph residue_tree") != std::string::npos);
  CHECK(dot.find("root [label=\"Z_11\"") != std::string::npos);
  CHECK(dot.find("n1_0 [label=\"0\\n(0)\" shape=box]") != std::string::npos);
  CHECK(dot.find("n1_5 [label=\"5\\n(5)\" shape=ellipse]") != std::string::npos);
  CHECK(dot.find("root -> n1_5") != std::string::npos);
  CHECK(dot.find("n2_5 -> n3_610") != std::string::npos);  // 5 + 5*121
  CHECK(dot.find("n1_6") == std::string::npos);            // pruned chain

  std::string text = tree_to_text(tree);
  CHECK(text.find("Z_11") == 0);
  CHECK(text.find("0 (0) [full]") != std::string::npos);
  CHECK(text.find("5 (5)\n") != std::string::npos);
  CHECK(text.find("610 (5 0 5)") != std::string::npos);

  // empirical trees render without full marks
  std::string etext = tree_to_text(residue_tree(fib(11, 12), 2, DensityMode::empirical));
  CHECK(etext.find("[full]") == std::string::npos);
}
