#pragma once

#include <span>
#include <vector>

#include "dmi/types.hpp"

namespace dmi {

/// Pareto dominance under minimization: a <= b componentwise and a != b.
/// Equality is exact; there is no epsilon.
bool dominates(const Vector& a, const Vector& b);
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Indices of the members not dominated by any other member, in input order.
/// Objective-space duplicates are all kept.
std::vector<std::size_t> nondominated_indices(std::span<const Vector> objectives);

Population nondominated_filter(const Population& population);

} // namespace dmi
