#include <benchmark/benchmark.h>

#include <random>

#include "avk/ann.hpp"
#include "avk/irreducibility.hpp"
#include "avk/sugawara.hpp"

using namespace avk;

namespace {

std::shared_ptr<const PBW> sl2_pbw() {
  static auto pbw = std::make_shared<const PBW>(
      std::make_shared<const AffVirAlgebra>(std::make_shared<const SimpleLieAlgebra>(SimpleLieAlgebra::sl2())));
  return pbw;
}

HWParams level_two() { return HWParams{GWeight({Scalar(2)}), Scalar(3, 2), 2, Scalar(5, 2)}; }
TensorParams level_two_tensor() { return {level_two(), GWeight({Scalar(3)}), Scalar(1, 3), Scalar(2, 7)}; }

void BM_Straighten(benchmark::State& state) {
  const auto pbw = sl2_pbw();
  std::vector<Gen> gens;
  for (long m = -4; m <= -1; ++m) {
    for (std::size_t i = 0; i < 3; ++i) gens.push_back(Gen::loop(i, m));
    gens.push_back(Gen::vir(m));
  }
  std::mt19937 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::vector<std::vector<Gen>> words(64);
  for (auto& w : words)
    for (long i = 0; i < state.range(0); ++i) w.push_back(gens[pick(rng)]);
  for (auto _ : state)
    for (const auto& w : words) benchmark::DoNotOptimize(pbw->straighten(w));
}
BENCHMARK(BM_Straighten)->Arg(3)->Arg(5)->Arg(7);

void BM_IrreducibleQuotient(benchmark::State& state) {
  for (auto _ : state) {
    const auto m = HWModule::build_verma(sl2_pbw(), level_two(), state.range(0), state.range(0));
    benchmark::DoNotOptimize(m.irreducible_quotient());
  }
}
BENCHMARK(BM_IrreducibleQuotient)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SugawaraT(benchmark::State& state) {
  const auto m = HWModule::build_verma(sl2_pbw(), level_two(), 3, 3);
  const SugawaraContext ctx(m);
  std::vector<ModVec> vs;
  for (const auto& w : m.weights())
    for (const auto& b : m.basis(w)) vs.emplace_back(b);
  for (auto _ : state)
    for (const auto& v : vs) benchmark::DoNotOptimize(ctx.apply_T(-1, v));
}
BENCHMARK(BM_SugawaraT)->Unit(benchmark::kMillisecond);

void BM_PhiImageRank(benchmark::State& state) {
  const auto pbw = sl2_pbw();
  const PhiContext ctx(pbw, level_two_tensor());
  const auto gens = ann_generators(pbw, level_two());
  for (auto _ : state) benchmark::DoNotOptimize(phi_image_rank(ctx, gens));
}
BENCHMARK(BM_PhiImageRank)->Unit(benchmark::kMillisecond);

void BM_EndoDimension(benchmark::State& state) {
  const TensorModule t(sl2_pbw(), level_two_tensor(), 2, 2, 4);
  ClosureOptions opts;
  opts.copies = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(endo_dimension(t, opts));
}
BENCHMARK(BM_EndoDimension)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
