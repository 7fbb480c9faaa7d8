#include <numeric>
#include <vector>

#include "dmi/search.hpp"

namespace dmi {

Population moead_run(const DifferentiableVectorObjective& objective, const Bounds& bounds, const SearchConfig& config,
                     RandomSource& rng)
{
    config.validate();
    const std::size_t m = objective.num_objectives();
    const std::size_t divisions = das_dennis_divisions(m, config.population_size);
    const WeightSet weights = das_dennis_weights(m, divisions, config.neighborhood_size);
    const std::size_t n_pop = weights.size();

    Population initial = detail::random_population(objective, bounds, n_pop, rng);
    if (config.generations == 0) {
        return initial;
    }

    std::vector<EvaluatedSolution> members(initial.begin(), initial.end());
    Vector ideal = members.front().f().values();
    for (const auto& s : members) {
        ideal = ideal.cwiseMin(s.f().values());
    }

    std::vector<std::size_t> everyone(n_pop);
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});

    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        for (std::size_t i = 0; i < n_pop; ++i) {
            std::vector<std::size_t> scope = rng.bernoulli(config.delta) ? everyone : weights.neighborhoods[i];

            const auto a = scope[rng.index(scope.size())];
            auto b = scope[rng.index(scope.size())];
            if (scope.size() > 1) {
                while (b == a) {
                    b = scope[rng.index(scope.size())];
                }
            }
            auto [c1, c2] =
                sbx_crossover(members[a].x().coords(), members[b].x().coords(), bounds, config.operators, rng);
            (void)c2;
            auto child = detail::predict(objective, polynomial_mutation(std::move(c1), bounds, config.operators, rng));
            ideal = ideal.cwiseMin(child.f().values());

            rng.shuffle(std::span<std::size_t>(scope));
            std::size_t replaced = 0;
            for (auto j : scope) {
                const auto& w = weights.vectors[j];
                if (tchebycheff(child.f().values(), w, ideal) < tchebycheff(members[j].f().values(), w, ideal)) {
                    members[j] = child;
                    if (++replaced >= config.max_replacements) {
                        break;
                    }
                }
            }
        }
    }
    return Population(std::move(members));
}

} // namespace dmi
