#include "moravak/ahss.hpp"
#include "moravak/rbk.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace moravak;

namespace {

void BM_rank(benchmark::State& state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(7);
    LinearMap m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.set(i, j, gen() & 1u);
    for (auto _ : state)
        benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_rank)->Arg(64)->Arg(256)->Arg(1024);

void BM_kernel(benchmark::State& state)
{
    auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 gen(8);
    LinearMap m(n, n / 2);
    for (std::size_t i = 0; i < n / 2; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.set(i, j, gen() & 1u);
    for (auto _ : state)
        benchmark::DoNotOptimize(m.kernel());
}
BENCHMARK(BM_kernel)->Arg(128)->Arg(512);

SpaceModel bv_space(int rank, int cap)
{
    std::vector<Generator> gens;
    for (int i = 0; i < rank; ++i)
        gens.push_back({"a" + std::to_string(i), 1, GeneratorKind::polynomial});
    auto a = std::make_shared<Algebra>(gens, cap);
    auto action = SteenrodAction::load(a, {});
    return SpaceModel{a, action, std::nullopt, cap, true};
}

void BM_sq_bv(benchmark::State& state)
{
    int rank = static_cast<int>(state.range(0));
    auto space = bv_space(rank, 16);
    const auto& a = *space.algebra;
    Element x;
    for (const auto& m : a.basis(8))
        x += Element(m);
    for (auto _ : state)
        for (int i = 1; i <= 8; ++i)
            benchmark::DoNotOptimize(space.action.sq(i, x));
}
BENCHMARK(BM_sq_bv)->Arg(2)->Arg(3)->Arg(4);

void BM_milnor_q(benchmark::State& state)
{
    int j = static_cast<int>(state.range(0));
    auto space = bv_space(3, 24);
    const auto& a = *space.algebra;
    Element x;
    for (const auto& m : a.basis(6))
        x += Element(m);
    for (auto _ : state)
        benchmark::DoNotOptimize(milnor_q(j, x, space.action));
}
BENCHMARK(BM_milnor_q)->DenseRange(0, 3);

void BM_ahss_page(benchmark::State& state)
{
    int cap = static_cast<int>(state.range(0));
    auto space = bv_space(3, cap);
    for (auto _ : state) {
        auto page = first_differential(e2_page(space, 1), space, {Element{}, true});
        benchmark::DoNotOptimize(turn_page(page));
    }
}
BENCHMARK(BM_ahss_page)->Arg(8)->Arg(12)->Arg(16);

void BM_bar_e2(benchmark::State& state)
{
    int factors = static_cast<int>(state.range(0));
    auto p = TensorModule::from_factor(standard_module(StandardModule::R, 2, 0), factors);
    auto hom = to_algebra_hom(TwistElement::universal(), 2, factors);
    for (auto _ : state)
        benchmark::DoNotOptimize(bar_e2(p, hom, 4));
}
BENCHMARK(BM_bar_e2)->Arg(2)->Arg(4)->Arg(6);

}  // namespace
BENCHMARK_MAIN();
