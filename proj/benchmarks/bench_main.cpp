#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "conecal/calibration/checks.hpp"
#include "conecal/calibration/field.hpp"
#include "conecal/geometry/curve.hpp"
#include "conecal/numerics/tridiagonal.hpp"
#include "conecal/spectral/radial.hpp"

using namespace conecal;

namespace {

numerics::TridiagonalSystem radial_matrix(int n) {
    const double h = 100.0 / n;
    numerics::TridiagonalSystem sys;
    sys.diagonal.assign(n, 2.0 / (h * h) + 6.25);
    sys.off_diagonal.assign(n - 1, -1.0 / (h * h));
    return sys;
}

void BM_SmallestEigenpair(benchmark::State& state) {
    const auto sys = radial_matrix(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto pair = numerics::smallest_eigenpair(sys);
        benchmark::DoNotOptimize(pair.value);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmallestEigenpair)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_RadialSolveZ(benchmark::State& state) {
    spectral::RadialProblem p;
    p.K = 8.0;
    p.Z = 100.0;
    p.step = 100.0 / state.range(0);
    for (auto _ : state) {
        auto r = spectral::radial_eigensolve_z(p);
        benchmark::DoNotOptimize(r.eigenvalue);
    }
}
BENCHMARK(BM_RadialSolveZ)->Arg(10000)->Arg(20000);

void BM_BaseLeaf(benchmark::State& state) {
    for (auto _ : state) {
        auto leaf = calibration::integrate_base_leaf(geometry::Side::above_diagonal,
                                                     1e-10, 1000.0);
        benchmark::DoNotOptimize(leaf.size());
    }
}
BENCHMARK(BM_BaseLeaf);

void BM_FieldEval(benchmark::State& state) {
    static const auto field = calibration::CalibrationField::build({});
    double angle = 0.0;
    for (auto _ : state) {
        angle += 0.1;
        const double theta =
            std::numbers::pi / 4.0 + 0.5 * std::sin(angle);
        const geometry::Vec2 p{1.3 * std::cos(theta), 1.3 * std::sin(theta)};
        benchmark::DoNotOptimize(calibration::field_X(p, field));
    }
}
BENCHMARK(BM_FieldEval);

void BM_DivergenceResidual(benchmark::State& state) {
    static const auto field = calibration::CalibrationField::build({});
    const geometry::Vec2 p{0.9, 0.5};
    for (auto _ : state)
        benchmark::DoNotOptimize(calibration::divergence_residual(p, field, 1e-3));
}
BENCHMARK(BM_DivergenceResidual);

void BM_WeightedVolume(benchmark::State& state) {
    geometry::DomainParams params;
    const auto region = geometry::reduced_cone_region(params, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(geometry::detail::loop_weighted_volume(region.loop));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WeightedVolume)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

}  // namespace

BENCHMARK_MAIN();
