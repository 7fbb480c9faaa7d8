#pragma once

#include <cstddef>
#include <vector>

#include "dmi/random.hpp"
#include "dmi/types.hpp"

namespace dmi {

struct InitialDesign {
    std::vector<DecisionVector> points;
    [[nodiscard]] std::size_t size() const { return points.size(); }
};

/// Default initial archive size for n variables: 11n - 1.
constexpr std::size_t default_initial_size(std::size_t n) { return 11 * n - 1; }

/// Plain Latin hypercube: one point per stratum per dimension, uniform
/// placement inside the stratum, independent column permutations.
InitialDesign latin_hypercube(std::size_t size, const Bounds& bounds, RandomSource& rng);

} // namespace dmi
