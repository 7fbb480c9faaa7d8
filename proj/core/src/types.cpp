#include "dmi/types.hpp"

#include <cmath>
#include <string>

#include "dmi/errors.hpp"

namespace dmi {

Bounds::Bounds(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper))
{
    require(lower_.size() >= 1, "Bounds: dimension must be at least 1");
    require(lower_.size() == upper_.size(), "Bounds: lower/upper size mismatch");
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
        require(lower_[i] < upper_[i], "Bounds: lower[" + std::to_string(i) + "] must be < upper");
    }
}

Bounds Bounds::unit(std::size_t n) { return uniform(n, 0.0, 1.0); }

Bounds Bounds::uniform(std::size_t n, double lower, double upper)
{
    const auto size = static_cast<Eigen::Index>(n);
    return Bounds(Vector::Constant(size, lower), Vector::Constant(size, upper));
}

bool Bounds::contains(const Vector& x) const
{
    if (x.size() != lower_.size()) {
        return false;
    }
    return (x.array() >= lower_.array()).all() && (x.array() <= upper_.array()).all();
}

Vector Bounds::clip(Vector x) const
{
    require(x.size() == lower_.size(), "Bounds::clip: dimension mismatch");
    return x.cwiseMax(lower_).cwiseMin(upper_);
}

Vector Bounds::to_unit(const Vector& x) const
{
    require(x.size() == lower_.size(), "Bounds::to_unit: dimension mismatch");
    return ((x - lower_).array() / (upper_ - lower_).array()).matrix();
}

Vector Bounds::from_unit(const Vector& u) const
{
    require(u.size() == lower_.size(), "Bounds::from_unit: dimension mismatch");
    return lower_ + (u.array() * (upper_ - lower_).array()).matrix();
}

ObjectiveVector::ObjectiveVector(Vector values) : values_(std::move(values))
{
    require(values_.size() >= 2, "ObjectiveVector: m must be at least 2");
    require(values_.allFinite(), "ObjectiveVector: values must be finite");
}

ObjectiveVector::ObjectiveVector(std::initializer_list<double> values)
    : ObjectiveVector(Vector::Map(values.begin(), static_cast<Eigen::Index>(values.size())))
{
}

Population::Population(std::vector<EvaluatedSolution> members)
{
    members_.reserve(members.size());
    for (auto& s : members) {
        push_back(std::move(s));
    }
}

void Population::push_back(EvaluatedSolution s)
{
    if (!members_.empty()) {
        require(s.x().size() == dimension(), "Population: decision dimension mismatch");
        require(s.f().size() == num_objectives(), "Population: objective count mismatch");
    }
    members_.push_back(std::move(s));
}

void Population::append(const Population& other)
{
    for (const auto& s : other) {
        push_back(s);
    }
}

std::size_t Population::dimension() const { return members_.empty() ? 0 : members_.front().x().size(); }

std::size_t Population::num_objectives() const { return members_.empty() ? 0 : members_.front().f().size(); }

std::vector<Vector> Population::objective_vectors() const
{
    std::vector<Vector> out;
    out.reserve(members_.size());
    for (const auto& s : members_) {
        out.push_back(s.f().values());
    }
    return out;
}

std::vector<Vector> Population::decision_vectors() const
{
    std::vector<Vector> out;
    out.reserve(members_.size());
    for (const auto& s : members_) {
        out.push_back(s.x().coords());
    }
    return out;
}

Population Population::subset(std::span<const std::size_t> indices) const
{
    Population out;
    for (auto i : indices) {
        require(i < members_.size(), "Population::subset: index out of range");
        out.members_.push_back(members_[i]);
    }
    return out;
}

} // namespace dmi
