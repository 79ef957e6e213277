#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "padicseq/localfield.hpp"

using namespace padic;

TEST_CASE("primality") {
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int(3)));
  CHECK(is_prime(Int(11)));
  CHECK(is_prime(Int(104729)));
  CHECK_FALSE(is_prime(Int(1)));
  CHECK_FALSE(is_prime(Int(91)));
  CHECK_FALSE(is_prime(Int(104730)));
  CHECK(is_prime(Int("2305843009213693951")));
}

TEST_CASE("rational valuations") {
  Int p(5);
  CHECK(nu_p(p, Int(75025)) == 2);
  CHECK(nu_p(p, Rat(1, 25)) == -2);
  CHECK(nu_p(p, Rat(50, 3)) == 2);
}

TEST_CASE("extension classification for x^2-x-1 across primes") {
  std::vector<Rat> fib = {Rat(-1), Rat(-1), Rat(1)};
  // inert primes
  for (long p : {2, 3, 7, 13}) {
    auto K = build_extension(Int(p), fib);
    CHECK(K->d == 2);
    CHECK(K->e == 1);
    CHECK(K->f == 2);
    CHECK(K->kind == FieldKind::unramified);
  }
  // p = 5 ramifies with working modulus x^2 - 5
  auto K5 = build_extension(Int(5), fib);
  CHECK(K5->e == 2);
  CHECK(K5->f == 1);
  CHECK(K5->kind == FieldKind::eisenstein);
  CHECK(K5->B == 0);
  CHECK(K5->C == -5);
  // split primes refuse to build
  for (long p : {11, 19}) {
    CHECK_THROWS_AS(build_extension(Int(p), fib), padic_error);
    try {
      build_extension(Int(p), fib);
    } catch (const padic_error& e) {
      CHECK(e.code() == errc::unsupported);
    }
  }
  CHECK_THROWS_AS(build_extension(Int(10), fib), padic_error);
}

TEST_CASE("x^2-5 normal forms by prime") {
  std::vector<Rat> m5 = {Rat(-5), Rat(0), Rat(1)};
  auto K5 = build_extension(Int(5), m5);
  CHECK(K5->kind == FieldKind::eisenstein);
  CHECK(K5->C == -5);
  auto K3 = build_extension(Int(3), m5);
  CHECK(K3->kind == FieldKind::unramified);
  // p = 2: 5 == 5 mod 8, Artin-Schreier style modulus x^2 - x - 1
  auto K2 = build_extension(Int(2), m5);
  CHECK(K2->kind == FieldKind::unramified);
  CHECK(K2->B == -1);
  CHECK(K2->C == -1);
  // x^2 - 3 and x^2 - 7 are wild at 2 and stay unsupported
  CHECK_THROWS_AS(build_extension(Int(2), {Rat(-3), Rat(0), Rat(1)}), padic_error);
  CHECK_THROWS_AS(build_extension(Int(2), {Rat(-7), Rat(0), Rat(1)}), padic_error);
  // x^2 - 17 splits over Q_2
  CHECK_THROWS_AS(build_extension(Int(2), {Rat(-17), Rat(0), Rat(1)}), padic_error);
  // x^2 - 2 is kept as an Eisenstein modulus
  auto E2 = build_extension(Int(2), {Rat(-2), Rat(0), Rat(1)});
  CHECK(E2->kind == FieldKind::eisenstein);
  CHECK(E2->C == -2);
}

TEST_CASE("golden ratio in the ramified field Q_5(sqrt 5)") {
  auto K = build_extension(Int(5), {Rat(-1), Rat(-1), Rat(1)});
  long N = 4;
  PadicValue theta = generator(K, N);
  PadicValue phi = (one(K, N) + theta) * from_rational(K, Rat(1, 2), N);
  CHECK(phi.coeff(0) == 13);
  CHECK(phi.coeff(1) == 13);
  CHECK(equals(phi * phi, phi + one(K, N)));
  CHECK(digit_string(phi) == "[3 3 2 2]");
  // theta is the uniformizer
  Valuation v = valuation(theta);
  CHECK(v.bounded);
  CHECK(v.nu == 1);
  CHECK(equals(uniformizer(K, N), theta));
  // 5 theta has pi-valuation 3
  PadicValue x = from_int(K, 5, 8) * generator(K, 8);
  CHECK(valuation(x).nu == 3);
}

TEST_CASE("golden ratio in the unramified field over Q_3") {
  auto K = build_extension(Int(3), {Rat(-1), Rat(-1), Rat(1)});
  CHECK(K->C == -5);
  long N = 6;
  PadicValue theta = generator(K, N);  // sqrt 5
  CHECK(equals(theta * theta, from_int(K, 5, N)));
  PadicValue phi = (one(K, N) + theta) * from_rational(K, Rat(1, 2), N);
  CHECK(equals(phi * phi, phi + one(K, N)));
  CHECK(valuation(phi).nu == 0);
  // conjugate root: phi + conj(phi) = 1, phi * conj(phi) = -1
  CHECK(equals(phi + conj(phi), one(K, N)));
  CHECK(equals(phi * conj(phi), -one(K, N)));
}

TEST_CASE("split analysis over Q_11 freezes the Fibonacci roots") {
  auto qa = analyze_quadratic(Int(11), Rat(-1), Rat(-1), 2);
  REQUIRE(qa.kind == QuadraticAnalysis::Kind::split);
  REQUIRE(qa.roots.size() == 2);
  Int r0 = qa.roots[0].coeff(0), r1 = qa.roots[1].coeff(0);
  CHECK(((r0 == 85 && r1 == 37) || (r0 == 37 && r1 == 85)));
  auto Q = qa.roots[0].field();
  for (const auto& r : qa.roots)
    CHECK(is_zero(r * r - r - one(Q, 2)));
}

TEST_CASE("sqrt in Z_11") {
  auto K = base_field(Int(11));
  PadicValue five = from_int(K, 5, 6);
  CHECK(is_square(five));
  PadicValue r = sqrt(five);
  CHECK(r.precision() == 6);
  CHECK(equals(r * r, five));
  CHECK(r.coeff(0) % 11 == 4);  // canonical branch
  PadicValue r2 = sqrt(from_int(K, 5, 2));
  CHECK(r2.coeff(0) == 48);
  CHECK_FALSE(is_square(from_int(K, 7, 6)));
  CHECK_FALSE(is_square(from_int(K, 55, 6)));
  CHECK_THROWS_AS(sqrt(from_int(K, 7, 6)), padic_error);
  // even valuation factors out
  PadicValue v = sqrt(from_int(K, 5 * 121, 6));
  CHECK(valuation(v).nu == 1);
  CHECK(equals(v * v, from_int(K, 5 * 121, 6)));
}

TEST_CASE("sqrt in Z_2") {
  auto K = base_field(Int(2));
  PadicValue c = from_int(K, 17, 6);
  CHECK(is_square(c));
  PadicValue r = sqrt(c);
  CHECK(r.precision() == 5);
  CHECK(r.coeff(0) == 9);
  CHECK(r.coeff(0) % 4 == 1);
  CHECK(equals(reduce_precision(r * r, 5), reduce_precision(c, 5)));
  CHECK_FALSE(is_square(from_int(K, 12, 6)));
  CHECK_FALSE(is_square(from_int(K, 8, 6)));
  CHECK(is_square(from_int(K, 41, 6)));
  CHECK_THROWS_AS(sqrt(from_int(K, 3, 6)), padic_error);
  CHECK_THROWS_AS(sqrt(from_int(K, 3, 2)), padic_error);  // undecidable, precision error
  PadicValue big = sqrt(from_int(K, 68, 8));
  CHECK(valuation(big).nu == 1);
  CHECK(equals(big * big, reduce_precision(from_int(K, 68, 8), big.precision())));
}

TEST_CASE("inversion and division") {
  auto K = build_extension(Int(5), {Rat(-5), Rat(0), Rat(1)});
  long N = 8;
  PadicValue x = from_int(K, 3, N) + generator(K, N) * from_int(K, 2, N);
  PadicValue xi = invert(x);
  CHECK(equals(x * xi, one(K, N)));
  PadicValue theta = generator(K, N);
  PadicValue prod = theta * x;
  PadicValue q = div_exact(prod, theta);
  CHECK(q.precision() == N - 1);
  CHECK(equals(q, reduce_precision(x, N - 1)));
  CHECK_THROWS_AS(invert(theta), padic_error);
  CHECK_THROWS_AS(div_exact(x, zero(K, N)), padic_error);
  CHECK_THROWS_AS(div_exact(x, theta), padic_error);

  auto B = base_field(Int(11));
  PadicValue h = from_rational(B, Rat(1, 2), 3);
  CHECK(h.coeff(0) == 666);
  CHECK(equals(h * from_int(B, 2, 3), one(B, 3)));
}

TEST_CASE("powers") {
  auto qa = analyze_quadratic(Int(11), Rat(-1), Rat(-1), 6);
  PadicValue phi = qa.roots[0];
  auto Q = phi.field();
  long N = phi.precision();
  // phi^10 = 55 phi + 34
  CHECK(equals(pow(phi, Int(10)), from_int(Q, 55, N) * phi + from_int(Q, 34, N)));
  CHECK(equals(pow(phi, Int(-1)) * phi, one(Q, N)));
  CHECK(equals(pow(phi, Int(0)), one(Q, N)));
}

TEST_CASE("hensel lifting") {
  auto K = base_field(Int(11));
  long N = 6;
  std::vector<PadicValue> f = {from_int(K, -5, N), zero(K, N), one(K, N)};
  PadicValue root = hensel_lift(f, from_int(K, 7, N));
  CHECK(root.coeff(0) % 11 == 7);
  CHECK(equals(root * root, reduce_precision(from_int(K, 5, N), root.precision())));

  auto K2 = base_field(Int(2));
  std::vector<PadicValue> g = {one(K2, 8), zero(K2, 8), one(K2, 8)};
  CHECK_THROWS_AS(hensel_lift(g, one(K2, 8)), padic_error);
  try {
    hensel_lift(g, one(K2, 8));
  } catch (const padic_error& e) {
    CHECK(e.code() == errc::domain);
    CHECK(std::string(e.what()).find("criterion") != std::string::npos);
  }
  // exact root short-circuits
  std::vector<PadicValue> h = {from_int(K2, -1, 8), zero(K2, 8), one(K2, 8)};
  PadicValue r = hensel_lift(h, one(K2, 8));
  CHECK(r.precision() == 8);
  CHECK(r.coeff(0) == 1);
}

TEST_CASE("pi digit expansions") {
  auto B = base_field(Int(11));
  PadicValue x = from_int(B, 363, 4);
  CHECK(valuation(x).nu == 2);
  auto digs = pi_expansion(x);
  REQUIRE(digs.size() == 4);
  CHECK(digs[0].c0 == 0);
  CHECK(digs[1].c0 == 0);
  CHECK(digs[2].c0 == 3);
  CHECK(digs[3].c0 == 0);
  CHECK(equals(pi_reassemble(B, digs, 4), x));

  auto K = build_extension(Int(5), {Rat(-5), Rat(0), Rat(1)});
  PadicValue theta = generator(K, 3);
  auto td = pi_expansion(theta);
  REQUIRE(td.size() == 3);
  CHECK(td[0].c0 == 0);
  CHECK(td[1].c0 == 1);
  CHECK(td[2].c0 == 0);
  CHECK(equals(pi_reassemble(K, td, 3), theta));

  auto U = build_extension(Int(3), {Rat(-1), Rat(-1), Rat(1)});
  PadicValue y = from_int(U, 7, 3) + generator(U, 3) * from_int(U, 4, 3);
  auto yd = pi_expansion(y);
  REQUIRE(yd.size() == 3);
  CHECK(yd[0].c0 == 1);
  CHECK(yd[0].c1 == 1);
  CHECK(equals(pi_reassemble(U, yd, 3), y));
}

TEST_CASE("sqrt_delta witnesses from the quadratic engine") {
  // Q_2(phi): sqrt(5) = 2 theta - 1 exactly
  auto qa2 = analyze_quadratic(Int(2), Rat(-1), Rat(-1), 8);
  REQUIRE(qa2.kind == QuadraticAnalysis::Kind::unramified);
  auto K2 = qa2.field;
  CHECK(equals(qa2.sqrt_delta * qa2.sqrt_delta, from_int(K2, 5, qa2.sqrt_delta.precision())));
  // x^2 - 5 at p=2 rebuilds through the 5 mod 8 normal form; delta = 20
  auto qb = analyze_quadratic(Int(2), Rat(0), Rat(-5), 8);
  REQUIRE(qb.kind == QuadraticAnalysis::Kind::unramified);
  CHECK(equals(qb.sqrt_delta * qb.sqrt_delta,
               from_int(qb.field, 20, qb.sqrt_delta.precision())));
  // x^2 - 2 at p=2: delta = 8, sqrt_delta = 2 theta
  auto qc = analyze_quadratic(Int(2), Rat(0), Rat(-2), 8);
  REQUIRE(qc.kind == QuadraticAnalysis::Kind::ramified);
  CHECK(equals(qc.sqrt_delta * qc.sqrt_delta,
               from_int(qc.field, 8, qc.sqrt_delta.precision())));
  // x^2 + x + 2 at p=2 splits with a unit root and a valuation-1 root
  auto qd = analyze_quadratic(Int(2), Rat(1), Rat(2), 8);
  REQUIRE(qd.kind == QuadraticAnalysis::Kind::split);
  auto Q2 = qd.roots[0].field();
  for (const auto& r : qd.roots)
    CHECK(is_zero(r * r + r + from_int(Q2, 2, 8)));
  long v0 = valuation_or(qd.roots[0], 99), v1 = valuation_or(qd.roots[1], 99);
  CHECK(std::min(v0, v1) == 0);
  CHECK(std::max(v0, v1) == 1);
  // ramified over Q_3 via an odd-valuation discriminant
  auto qe = analyze_quadratic(Int(3), Rat(3), Rat(3), 6);
  REQUIRE(qe.kind == QuadraticAnalysis::Kind::ramified);
  CHECK(qe.field->C == 3);  // working modulus x^2 + 3, delta = -3
  CHECK(equals(qe.sqrt_delta * qe.sqrt_delta,
               from_int(qe.field, -3, qe.sqrt_delta.precision())));
  // double rational root
  auto qf = analyze_quadratic(Int(7), Rat(-2), Rat(1), 5);
  REQUIRE(qf.kind == QuadraticAnalysis::Kind::split);
  CHECK(qf.note == "double rational root");
  CHECK(qf.roots[0].coeff(0) == 1);
}

TEST_CASE("precision handling") {
  auto K = base_field(Int(5));
  PadicValue x = from_int(K, 126, 4);
  PadicValue r = reduce_precision(x, 2);
  CHECK(r.precision() == 2);
  CHECK(r.coeff(0) == 1);
  CHECK_THROWS_AS(reduce_precision(r, 3), padic_error);
  PadicValue lifted = lift_representative(r, 6);
  CHECK(lifted.precision() == 6);
  CHECK(lifted.coeff(0) == 1);
  CHECK(equals(x + zero(K, 2), r));
  Valuation vz = valuation(zero(K, 7));
  CHECK_FALSE(vz.bounded);
  CHECK(vz.cap == 7);
  CHECK(valuation_or(zero(K, 7), -1) == -1);
}

TEST_CASE("embedding base values") {
  auto B = base_field(Int(5));
  auto K = build_extension(Int(5), {Rat(-5), Rat(0), Rat(1)});
  PadicValue x = from_int(B, 7, 4);
  PadicValue y = embed(x, K);
  CHECK(y.precision() == 8);
  CHECK(y.coeff(0) == 7);
  CHECK(y.coeff(1) == 0);
  auto U = build_extension(Int(3), {Rat(-1), Rat(-1), Rat(1)});
  CHECK_THROWS_AS(embed(x, U), padic_error);
}

static PadicValue random_value(std::mt19937_64& rng, const FieldPtr& K, long N) {
  std::vector<Int> c(K->d);
  for (int j = 0; j < K->d; ++j) {
    unsigned long long raw = rng();
    c[j] = Int(static_cast<unsigned long>(raw & 0xffffffffULL));
    c[j] *= Int(static_cast<unsigned long>((raw >> 32) | 1));
  }
  return PadicValue(K, N, std::move(c));
}

TEST_CASE("ring axioms and valuation laws on random values") {
  std::mt19937_64 rng(20260822);
  std::vector<FieldPtr> fields = {
      base_field(Int(2)),
      base_field(Int(13)),
      build_extension(Int(3), {Rat(-1), Rat(-1), Rat(1)}),
      build_extension(Int(5), {Rat(-5), Rat(0), Rat(1)}),
      build_extension(Int(2), {Rat(-2), Rat(0), Rat(1)}),
      build_extension(Int(2), {Rat(-1), Rat(-1), Rat(1)}),
  };
  for (const auto& K : fields) {
    long N = 12;
    for (int trial = 0; trial < 200; ++trial) {
      PadicValue a = random_value(rng, K, N);
      PadicValue b = random_value(rng, K, N);
      PadicValue c = random_value(rng, K, N);
      CHECK(equals(a + b, b + a));
      CHECK(equals(a * b, b * a));
      CHECK(equals((a + b) + c, a + (b + c)));
      CHECK(equals((a * b) * c, a * (b * c)));
      CHECK(equals(a * (b + c), a * b + a * c));
      CHECK(equals(a - a, zero(K, N)));
      // norm map is multiplicative, so valuations add
      Valuation va = valuation(a), vb = valuation(b);
      if (va.bounded && vb.bounded) {
        Valuation vab = valuation(a * b);
        long expect = va.nu + vb.nu;
        if (expect >= N) CHECK_FALSE(vab.bounded);
        else CHECK(vab.nu == expect);
      }
      if (va.bounded && va.nu == 0) {
        CHECK(equals(invert(a) * a, one(K, N)));
        CHECK(equals(div_exact(b, a), b * invert(a)));
      }
      CHECK(equals(conj(a * b), conj(a) * conj(b)));
      CHECK(equals(conj(a + b), conj(a) + conj(b)));
      // digits round-trip
      CHECK(equals(pi_reassemble(K, pi_expansion(a), N), a));
    }
  }
}

TEST_CASE("random squares pull back under sqrt") {
  std::mt19937_64 rng(7);
  for (long p : {2, 3, 5, 11}) {
    auto K = base_field(Int(p));
    long N = 14;
    for (int trial = 0; trial < 100; ++trial) {
      PadicValue y = random_value(rng, K, N);
      if (is_zero(y)) continue;
      long vy = valuation_or(y, N);
      if (2 * vy + 4 > N) continue;  // keep the unit part decidable at p = 2
      PadicValue sq = y * y;
      CHECK(is_square(sq));
      PadicValue r = sqrt(sq);
      PadicValue diff = r * r - reduce_precision(sq, r.precision());
      CHECK(is_zero(reduce_precision(diff, std::min(diff.precision(), r.precision()))));
    }
  }
}
