#include "dmi/objective.hpp"

#include "dmi/errors.hpp"

namespace dmi {

SphereObjectives::SphereObjectives(std::vector<Vector> centers) : centers_(std::move(centers))
{
    require(centers_.size() >= 2, "SphereObjectives: need at least two centers");
    for (const auto& c : centers_) {
        require(c.size() == centers_.front().size() && c.size() >= 1, "SphereObjectives: center dimension mismatch");
    }
}

ObjectiveVector SphereObjectives::value(const Vector& x) const
{
    Vector f(static_cast<Eigen::Index>(centers_.size()));
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        f[static_cast<Eigen::Index>(i)] = (x - centers_[i]).squaredNorm();
    }
    return ObjectiveVector(std::move(f));
}

Matrix SphereObjectives::jacobian(const Vector& x) const
{
    Matrix j(static_cast<Eigen::Index>(centers_.size()), x.size());
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        j.row(static_cast<Eigen::Index>(i)) = 2.0 * (x - centers_[i]).transpose();
    }
    return j;
}

std::vector<Matrix> SphereObjectives::hessians(const Vector& x) const
{
    return std::vector<Matrix>(centers_.size(), 2.0 * Matrix::Identity(x.size(), x.size()));
}

} // namespace dmi
