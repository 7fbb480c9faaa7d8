#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "dmi/objective.hpp"
#include "dmi/operators.hpp"
#include "dmi/random.hpp"
#include "dmi/selection.hpp"
#include "dmi/types.hpp"

namespace dmi {

enum class Optimizer { Nsga2, Ibea, Moead };

Optimizer parse_optimizer(std::string_view id);
std::string optimizer_id(Optimizer optimizer);

/// Surrogate-search settings shared by the three optimizers.
struct SearchConfig {
    std::size_t population_size = 100;
    std::size_t generations = 100;
    OperatorParams operators;
    double kappa = 0.05;               ///< IBEA scaling factor
    std::size_t neighborhood_size = 20;  ///< MOEA/D T
    double delta = 0.1;                ///< MOEA/D whole-population scope probability
    std::size_t max_replacements = 2;  ///< MOEA/D per-offspring replacement cap

    void validate() const;
};

/// 100 for m = 2, 105 for m = 3; otherwise the smallest lattice size >= 100.
std::size_t default_population_size(std::size_t m);

/// Members are surrogate-valued (Source::SurrogatePrediction).
Population nsga2_run(const DifferentiableVectorObjective& objective, const Bounds& bounds, const SearchConfig& config,
                     RandomSource& rng);
Population ibea_run(const DifferentiableVectorObjective& objective, const Bounds& bounds, const SearchConfig& config,
                    RandomSource& rng);

/// One member per subproblem, in weight order. population_size must be a
/// simplex-lattice size for the objective count.
Population moead_run(const DifferentiableVectorObjective& objective, const Bounds& bounds, const SearchConfig& config,
                     RandomSource& rng);

Population run_optimizer(Optimizer optimizer, const DifferentiableVectorObjective& objective, const Bounds& bounds,
                         const SearchConfig& config, RandomSource& rng);

namespace detail {

Population random_population(const DifferentiableVectorObjective& objective, const Bounds& bounds, std::size_t size,
                             RandomSource& rng);
EvaluatedSolution predict(const DifferentiableVectorObjective& objective, Vector x);

} // namespace detail

} // namespace dmi
