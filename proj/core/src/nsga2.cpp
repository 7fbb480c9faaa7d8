#include <algorithm>
#include <limits>
#include <numeric>

#include "dmi/errors.hpp"
#include "dmi/search.hpp"

namespace dmi {

Optimizer parse_optimizer(std::string_view id)
{
    if (id == "nsga2") {
        return Optimizer::Nsga2;
    }
    if (id == "ibea") {
        return Optimizer::Ibea;
    }
    if (id == "moead") {
        return Optimizer::Moead;
    }
    throw ConfigError("unknown optimizer '" + std::string(id) + "' (expected nsga2, ibea or moead)");
}

std::string optimizer_id(Optimizer optimizer)
{
    switch (optimizer) {
    case Optimizer::Nsga2:
        return "nsga2";
    case Optimizer::Ibea:
        return "ibea";
    case Optimizer::Moead:
        return "moead";
    }
    return "unknown";
}

void SearchConfig::validate() const
{
    require(population_size >= 2, "search population must be at least 2");
    require(kappa > 0.0, "kappa must be positive");
    require(neighborhood_size >= 2, "neighborhood size must be at least 2");
    require(delta >= 0.0 && delta <= 1.0, "delta must be in [0,1]");
    require(max_replacements >= 1, "replacement cap must be at least 1");
    operators.validate();
}

std::size_t default_population_size(std::size_t m)
{
    if (m == 2) {
        return 100;
    }
    if (m == 3) {
        return 105;
    }
    std::size_t h = 1;
    while (das_dennis_count(m, h) < 100) {
        ++h;
    }
    return das_dennis_count(m, h);
}

Population run_optimizer(Optimizer optimizer, const DifferentiableVectorObjective& objective, const Bounds& bounds,
                         const SearchConfig& config, RandomSource& rng)
{
    switch (optimizer) {
    case Optimizer::Nsga2:
        return nsga2_run(objective, bounds, config, rng);
    case Optimizer::Ibea:
        return ibea_run(objective, bounds, config, rng);
    case Optimizer::Moead:
        return moead_run(objective, bounds, config, rng);
    }
    throw ContractViolation("run_optimizer: unknown optimizer");
}

namespace detail {

EvaluatedSolution predict(const DifferentiableVectorObjective& objective, Vector x)
{
    auto f = objective.value(x);
    return {DecisionVector(std::move(x)), std::move(f), Source::SurrogatePrediction};
}

Population random_population(const DifferentiableVectorObjective& objective, const Bounds& bounds, std::size_t size,
                             RandomSource& rng)
{
    require(objective.dimension() == bounds.dimension(), "search: objective and bounds dimension differ");
    Population population;
    for (std::size_t i = 0; i < size; ++i) {
        Vector x(static_cast<Eigen::Index>(bounds.dimension()));
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            x[k] = rng.uniform(bounds.lower()[k], bounds.upper()[k]);
        }
        population.push_back(predict(objective, std::move(x)));
    }
    return population;
}

} // namespace detail

namespace {

struct Ranked {
    std::vector<std::size_t> rank;
    std::vector<double> crowding;
};

// Ranks and crowding of the whole set, plus the indices of the best `keep`.
std::pair<Ranked, std::vector<std::size_t>> environmental_selection(std::span<const Vector> objectives, std::size_t keep)
{
    const auto fronts = nondominated_sort(objectives);
    Ranked ranked{std::vector<std::size_t>(objectives.size()), std::vector<double>(objectives.size())};
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        const auto& front = fronts[r];
        std::vector<Vector> members;
        members.reserve(front.size());
        for (auto i : front) {
            members.push_back(objectives[i]);
        }
        const auto crowd = crowding_distance(members);
        for (std::size_t k = 0; k < front.size(); ++k) {
            ranked.rank[front[k]] = r;
            ranked.crowding[front[k]] = crowd[k];
        }
        if (chosen.size() >= keep) {
            continue;
        }
        if (chosen.size() + front.size() <= keep) {
            chosen.insert(chosen.end(), front.begin(), front.end());
            continue;
        }
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
        for (std::size_t k = 0; chosen.size() < keep; ++k) {
            chosen.push_back(front[order[k]]);
        }
    }
    return {std::move(ranked), std::move(chosen)};
}

} // namespace

Population nsga2_run(const DifferentiableVectorObjective& objective, const Bounds& bounds, const SearchConfig& config,
                     RandomSource& rng)
{
    config.validate();
    const std::size_t n_pop = config.population_size;
    Population population = detail::random_population(objective, bounds, n_pop, rng);
    if (config.generations == 0) {
        return population;
    }

    auto [ranked, ignored] = environmental_selection(population.objective_vectors(), n_pop);
    (void)ignored;

    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        auto tournament = [&]() {
            const auto a = rng.index(n_pop);
            const auto b = rng.index(n_pop);
            if (ranked.rank[a] != ranked.rank[b]) {
                return ranked.rank[a] < ranked.rank[b] ? a : b;
            }
            if (ranked.crowding[a] != ranked.crowding[b]) {
                return ranked.crowding[a] > ranked.crowding[b] ? a : b;
            }
            return std::min(a, b);
        };

        Population combined = population;
        while (combined.size() < 2 * n_pop) {
            const auto& p1 = population[tournament()].x().coords();
            const auto& p2 = population[tournament()].x().coords();
            auto [c1, c2] = sbx_crossover(p1, p2, bounds, config.operators, rng);
            combined.push_back(detail::predict(objective, polynomial_mutation(std::move(c1), bounds, config.operators, rng)));
            if (combined.size() < 2 * n_pop) {
                combined.push_back(
                    detail::predict(objective, polynomial_mutation(std::move(c2), bounds, config.operators, rng)));
            }
        }

        const auto objectives = combined.objective_vectors();
        auto [combined_ranked, chosen] = environmental_selection(objectives, n_pop);
        Ranked next{std::vector<std::size_t>(n_pop), std::vector<double>(n_pop)};
        for (std::size_t k = 0; k < n_pop; ++k) {
            next.rank[k] = combined_ranked.rank[chosen[k]];
            next.crowding[k] = combined_ranked.crowding[chosen[k]];
        }
        population = combined.subset(chosen);
        ranked = std::move(next);
    }
    return population;
}

} // namespace dmi
