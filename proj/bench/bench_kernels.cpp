#include <benchmark/benchmark.h>

#include "bilinv/parallel.hpp"
#include "bilinv/relations.hpp"
#include "bilinv/sampling.hpp"

using namespace bilinv;

namespace {

GeneratorId large_generator()
{
  Rng rng(5);
  return random_generator(3, 3, 6, rng);
}

SparseTensor triple_tensor()
{
  Rng rng(7);
  return interleave_triples(
    tensor_product(build_v(2, 4, random_permutation(8, rng)), build_w(2, 4, random_permutation(4, rng))));
}

std::vector<RelationCertificate> certificates()
{
  Rng rng(11);
  std::vector<RelationCertificate> out;
  for (int i = 0; i < 200; ++i)
    out.push_back(combined_relation(2, 2, typeA_relation(2, 4, random_shuffle_spec(8, 2, rng)),
                                    random_permutation(4, rng)));
  return out;
}

std::vector<GeneratorId> generators()
{
  Rng rng(13);
  std::vector<GeneratorId> out;
  for (int i = 0; i < 64; ++i)
    out.push_back(random_generator(2, 2, 6, rng));
  return out;
}

void threads_from_arg(const benchmark::State& state)
{
  set_thread_count(static_cast<int>(state.range(0)));
}

} // namespace

static void BM_EvaluatePolynomial_Serial(benchmark::State& state)
{
  const auto g = large_generator();
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::evaluate_polynomial(g));
}
BENCHMARK(BM_EvaluatePolynomial_Serial)->Unit(benchmark::kMillisecond);

static void BM_EvaluatePolynomial_Parallel(benchmark::State& state)
{
  threads_from_arg(state);
  const auto g = large_generator();
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_polynomial(g));
}
BENCHMARK(BM_EvaluatePolynomial_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_EvaluateBatch_Serial(benchmark::State& state)
{
  const auto gs = generators();
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::evaluate_batch(gs));
}
BENCHMARK(BM_EvaluateBatch_Serial)->Unit(benchmark::kMillisecond);

static void BM_EvaluateBatch_Parallel(benchmark::State& state)
{
  threads_from_arg(state);
  const auto gs = generators();
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_batch(gs));
}
BENCHMARK(BM_EvaluateBatch_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_Symmetrize_Serial(benchmark::State& state)
{
  const auto t = triple_tensor();
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::symmetrize_groups(t, 3));
}
BENCHMARK(BM_Symmetrize_Serial)->Unit(benchmark::kMillisecond);

static void BM_Symmetrize_Parallel(benchmark::State& state)
{
  threads_from_arg(state);
  const auto t = triple_tensor();
  for (auto _ : state)
    benchmark::DoNotOptimize(symmetrize_groups(t, 3));
}
BENCHMARK(BM_Symmetrize_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_VerifyAll_Serial(benchmark::State& state)
{
  const auto certs = certificates();
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::verify_all(certs));
}
BENCHMARK(BM_VerifyAll_Serial)->Unit(benchmark::kMillisecond);

static void BM_VerifyAll_Parallel(benchmark::State& state)
{
  threads_from_arg(state);
  const auto certs = certificates();
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_all(certs));
}
BENCHMARK(BM_VerifyAll_Parallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
