#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dmi/objective.hpp"
#include "dmi/random.hpp"
#include "dmi/types.hpp"

namespace dmi {

/// Convex combination weights of the objective gradients.
struct KktMultipliers {
    Vector alpha;
    double residual = 0.0;  ///< ||J^T alpha||
};

/// Minimizes ||J^T alpha||^2 over the unit simplex with accelerated
/// projected gradient from the uniform point.
KktMultipliers estimate_multipliers(const Matrix& jacobian);
KktMultipliers estimate_multipliers(const DifferentiableVectorObjective& objective, const Vector& x);

/// Euclidean projection onto {a >= 0, sum a = 1}.
Vector project_to_simplex(const Vector& v);

/// (1 + n) x (m + n): first row [1 ... 1, 0 ... 0], then [J^T, sum_i alpha_i H_i].
Matrix kkt_system_matrix(const DifferentiableVectorObjective& objective, const Vector& x, const Vector& alpha);

struct TangentBasis {
    std::vector<Vector> directions;    ///< unit, pairwise orthogonal, decision space
    std::vector<Vector> null_vectors;  ///< (alpha', x') generating each direction; x' block equals the direction
    double residual = 0.0;             ///< max ||M v|| over the generating null vectors
};

/// Null space of the KKT system by SVD (sigma <= 1e-8 sigma_max), reduced to
/// at most m - 1 orthonormal x' directions. Throws EmptyTangent when none is usable.
TangentBasis tangent_vectors(const DifferentiableVectorObjective& objective, const Vector& x, const Vector& alpha);
TangentBasis tangent_vectors(const Matrix& system, std::size_t m);

struct InterpolationConfig {
    std::size_t count_total = 100;
    double step_scale = 0.1;

    void validate() const;
};

/// Samples ceil(count_total / |P|) points per parent along its tangent space
/// (random sign and scale in (0, 1] per direction), drops points outside the
/// bounds and points within 1e-6 (unit-cube distance) of the archive or of
/// earlier candidates, predicts them with the objective and returns the
/// non-dominated ones.
Population interpolate(const Population& parents, const DifferentiableVectorObjective& objective,
                       const InterpolationConfig& config, const Bounds& bounds, std::span<const Vector> archive,
                       RandomSource& rng);

} // namespace dmi
