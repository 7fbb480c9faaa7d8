#pragma once

#include <span>
#include <vector>

#include "dmi/types.hpp"

namespace dmi {

/// Exact hypervolume dominated by `points` and bounded by `ref`
/// (minimization). Points not strictly better than ref in every objective
/// contribute nothing. m must be 2 or 3, otherwise NotSupported.
double hypervolume(std::span<const Vector> points, const Vector& ref);
double hypervolume(const Population& front, const Vector& ref);

/// HV(C) - HV(ND(C) \ {x}) per member. Dominated members and exact
/// duplicates get 0.
std::vector<double> ihv_contributions(std::span<const Vector> points, const Vector& ref);

/// Per objective: 1.1 * max when max > 0, else max + 0.1 * range (0.1 when
/// the range is zero).
Vector experiment_reference(std::span<const Vector> true_front);

} // namespace dmi
