// Microbenchmarks for the hot paths: field arithmetic, norm/transfer
// expansion, and the exhaustive separation scan.

#include <benchmark/benchmark.h>

#include <modsep/action.hpp>
#include <modsep/field.hpp>
#include <modsep/poly.hpp>
#include <modsep/reps.hpp>
#include <modsep/sep.hpp>
#include <modsep/verify.hpp>

namespace {

using namespace modsep;

void BM_field_mul(benchmark::State& state) {
    const FiniteField& F = make_field_named("3^2");
    auto elems = F.elements();
    size_t i = 0;
    for (auto _ : state) {
        FieldElement r = elems[i % elems.size()] * elems[(3 * i + 1) % elems.size()];
        benchmark::DoNotOptimize(r);
        ++i;
    }
}
BENCHMARK(BM_field_mul);

void BM_norm_expansion(benchmark::State& state) {
    auto spec = ModuleSpec::parse("klein-ii:n=4,lambda=t");
    const FiniteField& F = make_field_named("2^2");
    GroupAction G = build_action(spec, F);
    auto x1 = Polynomial::variable(F, spec.dimension(), 1);
    auto full = G.full_subgroup();
    for (auto _ : state) {
        Polynomial n = G.norm(full, x1);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_norm_expansion)->Unit(benchmark::kMicrosecond);

void BM_transfer_cubic(benchmark::State& state) {
    auto spec = ModuleSpec::parse("klein-ii:n=4,lambda=t");
    const FiniteField& F = make_field_named("2^2");
    GroupAction G = build_action(spec, F);
    uint32_t d = spec.dimension();
    auto f = Polynomial::variable(F, d, 1) * Polynomial::variable(F, d, 2).pow(3);
    for (auto _ : state) {
        Polynomial t = G.transfer_full(f);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_transfer_cubic)->Unit(benchmark::kMicrosecond);

void BM_substitute_linear(benchmark::State& state) {
    auto spec = ModuleSpec::parse("klein-v:n=4");
    const FiniteField& F = make_field_named("2^2");
    GroupAction G = build_action(spec, F);
    auto set = separating_set(spec, F);
    const Polynomial& f = set.elements.back().poly;
    const Matrix& D = G.element(1).dual;
    for (auto _ : state) {
        Polynomial g = f.substitute_linear(D);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_substitute_linear)->Unit(benchmark::kMicrosecond);

void BM_check_separating(benchmark::State& state) {
    auto spec = ModuleSpec::parse("klein-ii:n=3,lambda=t");
    const FiniteField& F = make_field_named("2^2");
    GroupAction G = build_action(spec, F);
    auto polys = separating_set(spec, F).polynomials();
    uint32_t threads = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        VerificationReport rep = check_separating(G, polys, kDefaultPointLimit, threads);
        benchmark::DoNotOptimize(rep.ok);
    }
}
BENCHMARK(BM_check_separating)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
