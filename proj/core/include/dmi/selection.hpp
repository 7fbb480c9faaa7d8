#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dmi/types.hpp"

namespace dmi {

/// Fronts F1, F2, ... as index lists in input order. The fronts partition
/// the input.
std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const Vector> objectives);

/// Crowding distance of each member of a mutually non-dominated set.
/// Per-objective extremes get +inf; objectives with zero range add 0.
std::vector<double> crowding_distance(std::span<const Vector> front);

/// Simplex-lattice weights and their T-nearest neighbourhoods (self included).
struct WeightSet {
    std::vector<Vector> vectors;
    std::vector<std::vector<std::size_t>> neighborhoods;

    [[nodiscard]] std::size_t size() const { return vectors.size(); }
};

/// All lattice points of the unit simplex with spacing 1/H, in
/// lexicographic order of the leading components.
WeightSet das_dennis_weights(std::size_t m, std::size_t divisions, std::size_t neighborhood_size = 20);

/// Number of lattice points C(H+m-1, m-1).
std::size_t das_dennis_count(std::size_t m, std::size_t divisions);

/// The H with das_dennis_count(m, H) == size; ContractViolation if none.
std::size_t das_dennis_divisions(std::size_t m, std::size_t size);

/// max_i |f_i - z_i| / w_i, with zero weight components floored at 1e-6.
double tchebycheff(const Vector& f, const Vector& w, const Vector& ideal);

/// Binary hypervolume indicator for single-point sets under minimization:
/// HV(b) - HV(a) when a dominates b, otherwise HV({a, b}) - HV(a).
double hd_indicator(const Vector& a, const Vector& b, const Vector& ref);

/// I(i, j) = hd_indicator(f_i, f_j) on objectives min-max normalized over
/// the set with reference 1.1 in every component.
Matrix hd_indicator_matrix(std::span<const Vector> objectives);

/// F(x) = sum over x' != x of -exp(-I({x'}, {x}) / kappa), on normalized
/// objectives. Larger is better.
std::vector<double> ibea_fitness(std::span<const Vector> objectives, double kappa);

} // namespace dmi
