#pragma once

#include <cstddef>
#include <vector>

#include "dmi/types.hpp"

namespace dmi {

/// A vector objective with first and second derivatives.
///
/// Both the Gaussian-process surrogate bank and analytic test functions
/// implement this; the manifold step only ever talks to this interface.
class DifferentiableVectorObjective {
public:
    virtual ~DifferentiableVectorObjective() = default;

    [[nodiscard]] virtual std::size_t num_objectives() const = 0;
    [[nodiscard]] virtual std::size_t dimension() const = 0;

    [[nodiscard]] virtual ObjectiveVector value(const Vector& x) const = 0;
    /// m x n, row i is the gradient of objective i.
    [[nodiscard]] virtual Matrix jacobian(const Vector& x) const = 0;
    /// m symmetric n x n matrices.
    [[nodiscard]] virtual std::vector<Matrix> hessians(const Vector& x) const = 0;
};

/// f_i(x) = ||x - c_i||^2 for a set of centers c_i.
///
/// With two centers the Pareto set is the segment between them, which makes
/// this the reference analytic model for tangent and search tests.
class SphereObjectives final : public DifferentiableVectorObjective {
public:
    explicit SphereObjectives(std::vector<Vector> centers);

    [[nodiscard]] std::size_t num_objectives() const override { return centers_.size(); }
    [[nodiscard]] std::size_t dimension() const override { return static_cast<std::size_t>(centers_.front().size()); }
    [[nodiscard]] ObjectiveVector value(const Vector& x) const override;
    [[nodiscard]] Matrix jacobian(const Vector& x) const override;
    [[nodiscard]] std::vector<Matrix> hessians(const Vector& x) const override;

    [[nodiscard]] const std::vector<Vector>& centers() const { return centers_; }

private:
    std::vector<Vector> centers_;
};

} // namespace dmi
