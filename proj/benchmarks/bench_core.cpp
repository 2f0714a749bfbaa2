#include <benchmark/benchmark.h>

#include "bmvshs/gram.hpp"

using namespace bmvshs;

namespace {

void BM_BuildCertificate(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build(m));
}
BENCHMARK(BM_BuildCertificate)->Arg(9)->Arg(17)->Arg(32);

void BM_VerifySymbolic(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Certificate cert = build(m);
  for (auto _ : state) benchmark::DoNotOptimize(verify_symbolic(cert));
}
BENCHMARK(BM_VerifySymbolic)->Arg(9)->Arg(17)->Arg(32);

void BM_ClassDecomposition(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Polynomial target = substitute_squares(s_poly(m, 4));
  for (auto _ : state) benchmark::DoNotOptimize(class_decomposition(target));
}
BENCHMARK(BM_ClassDecomposition)->Arg(9)->Arg(17)->Arg(32);

void BM_CanonicalRotation(benchmark::State& state) {
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  Word w;
  std::uint64_t bits = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < len; ++i) {
    w.push_back((bits >> (i % 64)) & 1 ? Letter::Y : Letter::X);
    if (i % 64 == 63) bits ^= bits << 13;
  }
  for (auto _ : state) benchmark::DoNotOptimize(canonical_rotation(w));
}
BENCHMARK(BM_CanonicalRotation)->Arg(16)->Arg(64)->Arg(128);

void BM_Eval(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Polynomial p = substitute_squares(s_poly(m, 4));
  const auto a = MatrixAssignment::random_symmetric(4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(eval(p, a));
}
BENCHMARK(BM_Eval)->Arg(8)->Arg(13)->Arg(20);

void BM_GramSolve(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Polynomial target = substitute_squares(s_poly(m, 4));
  const GramProblem prob = assemble(target, default_basis(m, BasisFilter::v01));
  for (auto _ : state) benchmark::DoNotOptimize(solve_feasibility(prob));
}
BENCHMARK(BM_GramSolve)->Arg(6)->Arg(8)->Arg(10);

void BM_ExactGram(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Certificate cert = build(m);
  for (auto _ : state) benchmark::DoNotOptimize(gram_of_certificate(cert));
}
BENCHMARK(BM_ExactGram)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
