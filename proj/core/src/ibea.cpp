#include <cmath>
#include <vector>

#include "dmi/search.hpp"

namespace dmi {

namespace {

// Removes the worst member until `keep` remain, updating the fitness of the
// survivors after each removal. Returns surviving indices in input order
// and their fitness.
std::pair<std::vector<std::size_t>, std::vector<double>> reduce(std::span<const Vector> objectives, std::size_t keep,
                                                                double kappa)
{
    const Matrix indicator = hd_indicator_matrix(objectives);
    const std::size_t n = objectives.size();
    std::vector<double> fitness(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i != j) {
                fitness[j] -= std::exp(-indicator(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) / kappa);
            }
        }
    }

    std::vector<bool> alive(n, true);
    for (std::size_t remaining = n; remaining > keep; --remaining) {
        std::size_t worst = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (alive[i] && (worst == n || fitness[i] < fitness[worst])) {
                worst = i;
            }
        }
        alive[worst] = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (alive[j]) {
                fitness[j] +=
                    std::exp(-indicator(static_cast<Eigen::Index>(worst), static_cast<Eigen::Index>(j)) / kappa);
            }
        }
    }

    std::vector<std::size_t> survivors;
    std::vector<double> survivor_fitness;
    for (std::size_t i = 0; i < n; ++i) {
        if (alive[i]) {
            survivors.push_back(i);
            survivor_fitness.push_back(fitness[i]);
        }
    }
    return {std::move(survivors), std::move(survivor_fitness)};
}

} // namespace

Population ibea_run(const DifferentiableVectorObjective& objective, const Bounds& bounds, const SearchConfig& config,
                    RandomSource& rng)
{
    config.validate();
    const std::size_t n_pop = config.population_size;
    Population population = detail::random_population(objective, bounds, n_pop, rng);
    if (config.generations == 0) {
        return population;
    }
    std::vector<double> fitness = ibea_fitness(population.objective_vectors(), config.kappa);

    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        auto tournament = [&]() {
            const auto a = rng.index(n_pop);
            const auto b = rng.index(n_pop);
            if (fitness[a] != fitness[b]) {
                return fitness[a] > fitness[b] ? a : b;
            }
            return std::min(a, b);
        };

        Population pool = population;
        while (pool.size() < 2 * n_pop) {
            const auto& p1 = population[tournament()].x().coords();
            const auto& p2 = population[tournament()].x().coords();
            auto [c1, c2] = sbx_crossover(p1, p2, bounds, config.operators, rng);
            pool.push_back(detail::predict(objective, polynomial_mutation(std::move(c1), bounds, config.operators, rng)));
            if (pool.size() < 2 * n_pop) {
                pool.push_back(
                    detail::predict(objective, polynomial_mutation(std::move(c2), bounds, config.operators, rng)));
            }
        }

        auto [survivors, survivor_fitness] = reduce(pool.objective_vectors(), n_pop, config.kappa);
        population = pool.subset(survivors);
        fitness = std::move(survivor_fitness);
    }
    return population;
}

} // namespace dmi
