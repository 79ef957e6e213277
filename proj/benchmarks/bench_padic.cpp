#include <benchmark/benchmark.h>

#include "padicseq/analytic.hpp"
#include "padicseq/density.hpp"
#include "padicseq/interpolation.hpp"
#include "padicseq/localfield.hpp"
#include "padicseq/recurrence.hpp"

using namespace padic;

namespace {

RecurrenceSpec fib(long p, long precision) {
  RecurrenceSpec s;
  s.p = p;
  s.order = 2;
  s.coeffs = {Rat(-1), Rat(-1)};
  s.initial = {Rat(0), Rat(1)};
  s.precision = precision;
  return s;
}

}  // namespace

static void BM_BaseMul(benchmark::State& state) {
  auto K = base_field(Int(11));
  PadicValue x = from_int(K, 123456789, state.range(0));
  PadicValue y = from_int(K, 987654321, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_BaseMul)->Arg(32)->Arg(256);

static void BM_ExtensionMul(benchmark::State& state) {
  // unramified quadratic over Q_11
  auto K = build_extension(Int(11), {Rat(-2), Rat(0), Rat(1)});
  PadicValue x(K, state.range(0), {Int(123456789), Int(55555)});
  PadicValue y(K, state.range(0), {Int(987654321), Int(77777)});
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_ExtensionMul)->Arg(32)->Arg(256);

static void BM_Invert(benchmark::State& state) {
  auto K = build_extension(Int(11), {Rat(-2), Rat(0), Rat(1)});
  PadicValue x(K, state.range(0), {Int(123456789), Int(55555)});
  for (auto _ : state) benchmark::DoNotOptimize(invert(x));
}
BENCHMARK(BM_Invert)->Arg(32)->Arg(256);

static void BM_ExpSeries(benchmark::State& state) {
  auto K = base_field(Int(5));
  PadicValue x = from_int(K, 5 * 123456789L, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exp_p(x));
}
BENCHMARK(BM_ExpSeries)->Arg(32)->Arg(128)->Arg(512);

static void BM_Teichmuller(benchmark::State& state) {
  auto K = base_field(Int(11));
  PadicValue x = from_int(K, 123456789, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(teichmuller(x));
}
BENCHMARK(BM_Teichmuller)->Arg(32)->Arg(256);

static void BM_TermAtIndex(benchmark::State& state) {
  // companion-matrix power: F(11^k) mod 11^24
  RecurrenceSpec spec = fib(11, 24);
  Int n = pow_int(Int(11), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(term_at_index(spec, n));
}
BENCHMARK(BM_TermAtIndex)->Arg(4)->Arg(8)->Arg(16);

static void BM_BuildInterpolation(benchmark::State& state) {
  RecurrenceSpec spec = fib(11, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_interpolation(spec));
}
BENCHMARK(BM_BuildInterpolation)->Arg(16)->Arg(64);

static void BM_EvalAtInteger(benchmark::State& state) {
  RecurrenceSpec spec = fib(11, state.range(0));
  TwistedInterpolation T = build_interpolation(spec);
  long n = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_at_integer(T, Int(n)));
    n = (n + 37) % 1000;
  }
}
BENCHMARK(BM_EvalAtInteger)->Arg(16)->Arg(64);

static void BM_PadicLimit(benchmark::State& state) {
  RecurrenceSpec spec = fib(11, state.range(0));
  TwistedInterpolation T = build_interpolation(spec);
  for (auto _ : state) benchmark::DoNotOptimize(padic_limit(T, Int(1), Int(0)));
}
BENCHMARK(BM_PadicLimit)->Arg(16)->Arg(64);

static void BM_OrbitEnumeration(benchmark::State& state) {
  // attained residues mod 11^alpha by state-orbit closure
  RecurrenceSpec spec = fib(11, 14);
  long alpha = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(attained_residues(spec, alpha));
}
BENCHMARK(BM_OrbitEnumeration)->Arg(2)->Arg(3)->Arg(4);

static void BM_ExactDensity(benchmark::State& state) {
  RecurrenceSpec spec = fib(11, 14);
  for (auto _ : state) benchmark::DoNotOptimize(exact_limiting_density(spec));
}
BENCHMARK(BM_ExactDensity);

BENCHMARK_MAIN();
