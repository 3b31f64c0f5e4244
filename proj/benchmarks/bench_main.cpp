#include <benchmark/benchmark.h>

#include "qkflag/presentations.hpp"
#include "qkflag/quotient.hpp"
#include "qkflag/schubert.hpp"
#include "qkflag/serialize.hpp"
#include "qkflag/todaham.hpp"

using namespace qkflag;

namespace {

QuotientOptions no_cache() {
  QuotientOptions opt;
  opt.use_cache = false;
  return opt;
}

void BM_LaurentMultiply(benchmark::State& state) {
  auto reg = shape_registry(FlagShape::full(4));
  auto f = parse_expression(reg, "(1 + y*T1)*(1 + y*T2)*(1 + y*T3)*(1 + y*T4) - y*Q1*eY1_1").as_poly();
  auto g = parse_expression(reg, "T1^-1*eX2_1 + T2^-1*eX2_2 + Q2*T3*T4 - 1").as_poly();
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_LaurentMultiply);

void BM_TridiagDet(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto m = toda_matrix(FlagShape::full(n));
  for (auto _ : state) benchmark::DoNotOptimize(tridiag_det(m));
}
BENCHMARK(BM_TridiagDet)->DenseRange(2, 5);

void BM_TodaPresentation(benchmark::State& state) {
  auto s = FlagShape::full(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(toda_presentation(s));
}
BENCHMARK(BM_TodaPresentation)->DenseRange(2, 5);

void BM_Elimination(benchmark::State& state) {
  auto s = FlagShape::full(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eliminate_whitney_to_toda(s));
}
BENCHMARK(BM_Elimination)->DenseRange(2, 5);

void BM_Rho(benchmark::State& state) {
  auto s = FlagShape::full(4);
  auto pt = point_class(s).poly;
  for (auto _ : state) benchmark::DoNotOptimize(apply_word({1, 2, 3, 1, 2, 1}, pt));
}
BENCHMARK(BM_Rho);

void BM_SchubertBasis(benchmark::State& state) {
  auto s = FlagShape::full(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(schubert_basis(s));
}
BENCHMARK(BM_SchubertBasis)->DenseRange(2, 4);

void BM_GroebnerToda(benchmark::State& state, const char* shape) {
  auto s = FlagShape::parse(shape);
  for (auto _ : state) {
    QuotientRing R(toda_presentation(s), no_cache());
    benchmark::DoNotOptimize(R.rank());
  }
}
BENCHMARK_CAPTURE(BM_GroebnerToda, fl3, "1,2;3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_GroebnerToda, gr24, "2;4")->Unit(benchmark::kMillisecond);

void BM_Gr24ProductExpand(benchmark::State& state) {
  auto s = FlagShape::grassmannian(2, 4);
  QuotientRing R(toda_presentation(s), no_cache());
  auto basis = schubert_basis(s);
  const auto& a = basis[2].rep;
  const auto& b = basis[3].rep;
  for (auto _ : state) benchmark::DoNotOptimize(schubert_expand(quantum_product(a, b, R), basis, R));
}
BENCHMARK(BM_Gr24ProductExpand)->Unit(benchmark::kMillisecond);

void BM_TodaCommutator(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto h1 = toda_hamiltonian_x(n, 1);
  auto h2 = toda_hamiltonian_x(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(op_commutator(h1, h2));
}
BENCHMARK(BM_TodaCommutator)->DenseRange(2, 4);

void BM_Symbol(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto h = hamiltonian_hat_Q(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(symbol_at_q1(h));
}
BENCHMARK(BM_Symbol)->DenseRange(2, 5);

}  // namespace
BENCHMARK_MAIN();
