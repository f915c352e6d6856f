#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "undulant/dynamics.hpp"
#include "undulant/linear_solver.hpp"
#include "undulant/operators.hpp"

using namespace undulant;

namespace {

RadiusProfile canonical(const Grid& g) {
    ProfileSpec s;
    s.kind = ProfileKind::sinusoidal;
    s.base_radius = 0.2;
    s.undulation_amplitude = 0.25;
    s.undulation_wavenumber = 2 * std::numbers::pi / g.length();
    return build_profile(s, g);
}

Field noise(const Grid& g) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-1, 1);
    Field f = Field::surface(g);
    for (double& v : f.values()) v = d(rng);
    return f;
}

void BM_Laplacian(benchmark::State& state) {
    const Grid g(static_cast<int>(state.range(0)), 64, 40.0);
    const auto prof = canonical(g);
    const Field f = noise(g);
    Field out = Field::like(f);
    for (auto _ : state) {
        apply_laplacian(f, prof, out);
        benchmark::DoNotOptimize(out.values().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(f.size()));
}
BENCHMARK(BM_Laplacian)->Arg(128)->Arg(256)->Arg(512);

void BM_ShiftedSolve(benchmark::State& state) {
    const Grid g(256, 64, 40.0);
    const auto prof = canonical(g);
    const auto kind = state.range(0) == 0 ? LinearSolverKind::cg : LinearSolverKind::modal;
    const ShiftedSolver solver(prof, 0.1, 0.25, kind, 1e-10);
    const Field rhs = noise(g);
    long iterations = 0;
    for (auto _ : state) {
        Field x = Field::like(rhs);
        iterations += solver.solve(rhs, x).iterations;
        benchmark::DoNotOptimize(x.values().data());
    }
    state.SetLabel(kind == LinearSolverKind::cg ? "cg" : "modal");
    state.counters["iterations"] = benchmark::Counter(static_cast<double>(iterations), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_ShiftedSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
    const Grid g(256, 64, 40.0);
    const auto prof = canonical(g);
    const FhnParams params{0.25, 0.01, 0.01};
    StepperConfig cfg;
    cfg.dt = 0.1;
    cfg.scheme = state.range(0) == 0 ? Scheme::imex_euler : Scheme::imex_cn;
    cfg.solver = LinearSolverKind::modal;
    ImexStepper stepper(prof, cfg, params);
    State u{0.1 * noise(g), Field::surface(g), params};
    for (auto _ : state) stepper.advance(u);
    state.SetLabel(cfg.scheme == Scheme::imex_euler ? "imex_euler" : "imex_cn");
}
BENCHMARK(BM_Step)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
