#pragma once

#include <optional>
#include <utility>

#include "dmi/random.hpp"
#include "dmi/types.hpp"

namespace dmi {

/// Reproduction settings. An unset mutation probability means 1/n.
struct OperatorParams {
    double crossover_probability = 1.0;
    double crossover_eta = 20.0;
    std::optional<double> mutation_probability;
    double mutation_eta = 20.0;

    void validate() const;
    [[nodiscard]] double mutation_rate(std::size_t n) const;
};

/// Simulated binary crossover with bounded spread. Children are clipped.
std::pair<Vector, Vector> sbx_crossover(const Vector& p1, const Vector& p2, const Bounds& bounds,
                                        const OperatorParams& params, RandomSource& rng);

/// Bounded polynomial mutation, per-variable with the mutation rate.
Vector polynomial_mutation(Vector x, const Bounds& bounds, const OperatorParams& params, RandomSource& rng);

} // namespace dmi
