#include <benchmark/benchmark.h>

#include <random>

#include "nilbary/barycenter.hpp"
#include "nilbary/families.hpp"
#include "nilbary/signature.hpp"

using namespace nilbary;

namespace {

DiscreteMeasure make_measure(const Shape& s, std::size_t n) {
  // Brownian signatures are cheap to produce and realistic inputs
  return DiscreteMeasure::uniform(sample_bm_signatures(CovarianceMatrix::identity(s.d), 16, 7, n, s));
}

Execution exec_of(const benchmark::State& st) { return st.range(1) == 0 ? Execution::Serial : Execution::Parallel; }

void label(benchmark::State& st) {
  st.SetLabel(exec_of(st) == Execution::Serial ? "serial" : "parallel x" + std::to_string(thread_count()));
  st.SetComplexityN(st.range(0));
}

void BM_Ambient(benchmark::State& st) {
  const DiscreteMeasure nu = make_measure(Shape{3, 4}, static_cast<std::size_t>(st.range(0)));
  BarycenterOptions opt;
  opt.execution = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(barycenter_ambient(nu, opt));
  label(st);
}

void BM_Abch(benchmark::State& st) {
  const DiscreteMeasure nu = make_measure(Shape{3, 4}, static_cast<std::size_t>(st.range(0)));
  BarycenterOptions opt;
  opt.execution = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(barycenter_abch(nu, opt));
  label(st);
}

void BM_Pi1(benchmark::State& st) {
  const DiscreteMeasure nu = make_measure(Shape{3, 4}, static_cast<std::size_t>(st.range(0)));
  BarycenterOptions opt;
  opt.execution = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(barycenter_pi1(nu, opt));
  label(st);
}

void BM_Lyndon(benchmark::State& st) {
  const Shape s{3, 4};
  const DiscreteMeasure nu = make_measure(s, static_cast<std::size_t>(st.range(0)));
  RelationProcedure proc = reference_procedure(s);
  const UpdateFamily fam = UpdateFamily::from_r(s, generate_r(s, proc.order, proc.options));
  BarycenterOptions opt;
  opt.execution = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(barycenter_lyndon(nu, fam, opt));
  label(st);
}

void BM_SampleSignatures(benchmark::State& st) {
  const Shape s{3, 4};
  const CovarianceMatrix sigma = CovarianceMatrix::identity(3);
  for (auto _ : st) {
    benchmark::DoNotOptimize(sample_bm_signatures(sigma, 64, 1, static_cast<std::size_t>(st.range(0)), s, exec_of(st)));
  }
  label(st);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int exec : {0, 1})
    for (int n : {100, 200, 400, 800, 1600}) b->Args({n, exec});
}

}  // namespace

BENCHMARK(BM_Ambient)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Abch)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pi1)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lyndon)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSignatures)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
