#include "dmi/sampling.hpp"

#include <numeric>

#include "dmi/errors.hpp"

namespace dmi {

InitialDesign latin_hypercube(std::size_t size, const Bounds& bounds, RandomSource& rng)
{
    require(size >= 1, "latin_hypercube: size must be at least 1");
    const auto n = bounds.dimension();

    Matrix unit(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(n));
    std::vector<std::size_t> strata(size);
    for (std::size_t d = 0; d < n; ++d) {
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        rng.shuffle(std::span<std::size_t>(strata));
        for (std::size_t i = 0; i < size; ++i) {
            const double u = (static_cast<double>(strata[i]) + rng.uniform()) / static_cast<double>(size);
            unit(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = u;
        }
    }

    InitialDesign design;
    design.points.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        Vector u = unit.row(static_cast<Eigen::Index>(i)).transpose();
        design.points.emplace_back(bounds.clip(bounds.from_unit(u)));
    }
    return design;
}

} // namespace dmi
