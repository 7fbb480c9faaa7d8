#include <benchmark/benchmark.h>

#include <cmath>

#include "dmi/gpr.hpp"
#include "dmi/hypervolume.hpp"
#include "dmi/manifold.hpp"
#include "dmi/objective.hpp"
#include "dmi/sampling.hpp"
#include "dmi/selection.hpp"

using namespace dmi;

namespace {

std::vector<Vector> simplex_front(std::size_t count, std::size_t m, std::uint64_t seed)
{
    RandomSource rng(seed);
    std::vector<Vector> pts;
    for (std::size_t i = 0; i < count; ++i) {
        Vector v(static_cast<Eigen::Index>(m));
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            v[k] = -std::log(rng.uniform_open_closed());
        }
        pts.push_back(v / v.sum());
    }
    return pts;
}

Matrix design(std::size_t size, std::size_t n)
{
    RandomSource rng(1);
    const auto d = latin_hypercube(size, Bounds::unit(n), rng);
    Matrix x(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < size; ++i) {
        x.row(static_cast<Eigen::Index>(i)) = d.points[i].coords().transpose();
    }
    return x;
}

void BM_Hypervolume(benchmark::State& state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto pts = simplex_front(static_cast<std::size_t>(state.range(1)), m, 3);
    const Vector ref = Vector::Constant(static_cast<Eigen::Index>(m), 1.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hypervolume(pts, ref));
    }
}
BENCHMARK(BM_Hypervolume)->Args({2, 100})->Args({2, 1000})->Args({3, 100})->Args({3, 400});

void BM_NondominatedSort(benchmark::State& state)
{
    RandomSource rng(5);
    std::vector<Vector> pts;
    for (std::int64_t i = 0; i < state.range(0); ++i) {
        pts.push_back(Vector{{rng.uniform(), rng.uniform(), rng.uniform()}});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(nondominated_sort(pts));
    }
}
BENCHMARK(BM_NondominatedSort)->Arg(100)->Arg(200)->Arg(400);

void BM_LogMarginalLikelihood(benchmark::State& state)
{
    const auto size = static_cast<std::size_t>(state.range(0));
    const Matrix x = design(size, 10);
    const Vector y = standardize(x.rowwise().squaredNorm()).values;
    const KernelParams params{1.0, 0.7, 1e-8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_marginal_likelihood(x, y, params));
    }
}
BENCHMARK(BM_LogMarginalLikelihood)->Arg(109)->Arg(259)->Arg(359);

void BM_HyperparameterFit(benchmark::State& state)
{
    const Matrix x = design(static_cast<std::size_t>(state.range(0)), 10);
    const Vector y = x.rowwise().squaredNorm();
    for (auto _ : state) {
        RandomSource rng(2);
        benchmark::DoNotOptimize(optimize_hyperparameters(x, y, rng));
    }
}
BENCHMARK(BM_HyperparameterFit)->Arg(109)->Unit(benchmark::kMillisecond);

void BM_TangentVectors(benchmark::State& state)
{
    const auto n = static_cast<Eigen::Index>(state.range(0));
    Vector far = Vector::Zero(n);
    far[0] = 1.0;
    const SphereObjectives f({Vector::Zero(n), far});
    const Vector x = 0.5 * far;
    const Vector alpha = estimate_multipliers(f, x).alpha;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tangent_vectors(f, x, alpha));
    }
}
BENCHMARK(BM_TangentVectors)->Arg(10)->Arg(30);

} // namespace
BENCHMARK_MAIN();
