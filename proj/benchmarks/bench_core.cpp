// Microbenchmarks for the hot paths of the gradient iteration: the PSD
// projection, constraint-violation gradients, residual evaluation, and a
// few end-to-end solves at experiment scale.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "clfgrad/families.hpp"
#include "clfgrad/functionals.hpp"
#include "clfgrad/rng.hpp"
#include "clfgrad/solver.hpp"
#include "clfgrad/symmetric_matrix.hpp"
#include "clfgrad/verify.hpp"

namespace {

using namespace clfgrad;

Eigen::MatrixXd random_symmetric(int n, Rng& rng) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
    return m;
}

Eigen::MatrixXd random_hurwitz(int n, Rng& rng) {
    // Shifted random matrix: strictly diagonally dominant with negative
    // diagonal, hence Hurwitz by Gershgorin.
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-0.3, 0.3);
    a.diagonal().array() -= static_cast<double>(n);
    return a;
}

void bm_psd_projection(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(11);
    const SymMatrix r(random_symmetric(n, rng));
    for (auto _ : state) benchmark::DoNotOptimize(psd_projection(r));
}
BENCHMARK(bm_psd_projection)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void bm_v_grad_sqnorm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(12);
    const SymMatrix p(SymMatrix::identity(n));
    const Eigen::MatrixXd a = random_hurwitz(n, rng);
    const SymMatrix q = SymMatrix::identity(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(v_grad(p, a, q, Functional::SquaredPositivePart));
    }
}
BENCHMARK(bm_v_grad_sqnorm)->Arg(4)->Arg(8)->Arg(16);

void bm_v_grad_lambdamax(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(13);
    const SymMatrix p(SymMatrix::identity(n));
    const Eigen::MatrixXd a = random_hurwitz(n, rng);
    const SymMatrix q = SymMatrix::identity(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(v_grad(p, a, q, Functional::MaxEigenvalue));
    }
}
BENCHMARK(bm_v_grad_lambdamax)->Arg(4)->Arg(8)->Arg(16);

void bm_residual(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(14);
    const SymMatrix p(SymMatrix::identity(n));
    const Eigen::MatrixXd a = random_hurwitz(n, rng);
    const SymMatrix q = SymMatrix::identity(n);
    for (auto _ : state) benchmark::DoNotOptimize(residual(p, a, q));
}
BENCHMARK(bm_residual)->Arg(4)->Arg(8)->Arg(16);

void bm_solve_vertex_family(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TriangularIntervalParams params;
    params.n = n;
    params.interval_diagonal = true;
    Rng rng(15);
    const IntervalFamily box = generate_triangular_interval(params, rng);
    const ProblemSpec problem(MatrixFamily(enumerate_vertices(box)), SymMatrix::identity(n));
    SolverConfig config;
    config.scheduler = SchedulerKind::RoundRobin;
    for (auto _ : state) benchmark::DoNotOptimize(run(problem, config));
}
BENCHMARK(bm_solve_vertex_family)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_solve_random_interval(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TriangularIntervalParams params;
    params.n = n;
    params.interval_diagonal = true;
    Rng rng(16);
    const ProblemSpec problem(MatrixFamily(generate_triangular_interval(params, rng)),
                              SymMatrix::identity(n));
    SolverConfig config;
    config.scheduler = SchedulerKind::Randomized;
    config.seed = 16;
    for (auto _ : state) benchmark::DoNotOptimize(run(problem, config));
}
BENCHMARK(bm_solve_random_interval)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
