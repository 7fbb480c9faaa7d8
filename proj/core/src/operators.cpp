#include "dmi/operators.hpp"

#include <algorithm>
#include <cmath>

#include "dmi/errors.hpp"

namespace dmi {

void OperatorParams::validate() const
{
    require(crossover_probability >= 0.0 && crossover_probability <= 1.0, "crossover probability must be in [0,1]");
    require(!mutation_probability || (*mutation_probability >= 0.0 && *mutation_probability <= 1.0),
            "mutation probability must be in [0,1]");
    require(crossover_eta > 0.0 && mutation_eta > 0.0, "distribution indices must be positive");
}

double OperatorParams::mutation_rate(std::size_t n) const
{
    return mutation_probability ? *mutation_probability : 1.0 / static_cast<double>(n);
}

std::pair<Vector, Vector> sbx_crossover(const Vector& p1, const Vector& p2, const Bounds& bounds,
                                        const OperatorParams& params, RandomSource& rng)
{
    require(p1.size() == p2.size() && static_cast<std::size_t>(p1.size()) == bounds.dimension(),
            "sbx_crossover: dimension mismatch");
    Vector c1 = p1;
    Vector c2 = p2;
    if (!rng.bernoulli(params.crossover_probability)) {
        return {c1, c2};
    }
    const double eta = params.crossover_eta;
    for (Eigen::Index i = 0; i < p1.size(); ++i) {
        if (!rng.bernoulli(0.5) || std::abs(p1[i] - p2[i]) <= 1e-14) {
            continue;
        }
        const double lo = bounds.lower()[i];
        const double hi = bounds.upper()[i];
        const double y1 = std::min(p1[i], p2[i]);
        const double y2 = std::max(p1[i], p2[i]);
        const double u = rng.uniform();

        auto spread = [&](double beta) {
            const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
            if (u <= 1.0 / alpha) {
                return std::pow(u * alpha, 1.0 / (eta + 1.0));
            }
            return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
        };

        const double bq1 = spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
        const double bq2 = spread(1.0 + 2.0 * (hi - y2) / (y2 - y1));
        double v1 = std::clamp(0.5 * ((y1 + y2) - bq1 * (y2 - y1)), lo, hi);
        double v2 = std::clamp(0.5 * ((y1 + y2) + bq2 * (y2 - y1)), lo, hi);
        if (rng.bernoulli(0.5)) {
            std::swap(v1, v2);
        }
        c1[i] = v1;
        c2[i] = v2;
    }
    return {c1, c2};
}

Vector polynomial_mutation(Vector x, const Bounds& bounds, const OperatorParams& params, RandomSource& rng)
{
    require(static_cast<std::size_t>(x.size()) == bounds.dimension(), "polynomial_mutation: dimension mismatch");
    const double rate = params.mutation_rate(static_cast<std::size_t>(x.size()));
    const double power = 1.0 / (params.mutation_eta + 1.0);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!rng.bernoulli(rate)) {
            continue;
        }
        const double lo = bounds.lower()[i];
        const double hi = bounds.upper()[i];
        const double width = hi - lo;
        if (width <= 0.0) {
            continue;
        }
        const double d1 = (x[i] - lo) / width;
        const double d2 = (hi - x[i]) / width;
        const double u = rng.uniform();
        double dq = 0.0;
        if (u < 0.5) {
            const double v = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, params.mutation_eta + 1.0);
            dq = std::pow(v, power) - 1.0;
        } else {
            const double v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, params.mutation_eta + 1.0);
            dq = 1.0 - std::pow(v, power);
        }
        x[i] = std::clamp(x[i] + dq * width, lo, hi);
    }
    return x;
}

} // namespace dmi
