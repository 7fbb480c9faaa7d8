#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmi/selection.hpp"
#include "dmi/types.hpp"

namespace dmi {

/// `ranking` is a full preference order over C (indices, no duplicate
/// decision vectors); `chosen` holds its first min(xi, |ranking|) members.
/// `scores[i]` is the selector's score of candidate i.
struct BatchSelection {
    Population chosen;
    std::vector<std::size_t> ranking;
    std::vector<double> scores;
};

enum class Selector { Ihv, Native };

Selector parse_selector(std::string_view id);
std::string selector_id(Selector selector);

/// Reference for batch IHV: componentwise max + 10% of the range (+0.1 for
/// a zero range).
Vector ihv_reference(std::span<const Vector> objectives);

/// Top-xi by individual hypervolume contribution, ties by index, dominated
/// members last. The reference comes from the non-dominated members.
BatchSelection select_ihv(const Population& candidates, std::size_t xi);

/// Angle association to weight rays after translating by the ideal point
/// and normalizing; one largest-crowding representative per occupied
/// subregion, padded from the remaining non-dominated members.
BatchSelection select_nsga2_native(const Population& candidates, std::size_t xi, const WeightSet& weights);

/// Largest IBEA fitness first, ties by index.
BatchSelection select_ibea_native(const Population& candidates, std::size_t xi, double kappa);

/// Per-subproblem Tchebycheff best of C under `ideal`; subproblems ranked by
/// relative improvement (prev - new) / prev over `previous_bests`, each
/// contributing its best member once.
BatchSelection select_moead_native(const Population& candidates, std::size_t xi, const WeightSet& weights,
                                   std::span<const double> previous_bests, const Vector& ideal);

/// Best Tchebycheff value per subproblem over a set of objective vectors.
std::vector<double> subproblem_bests(std::span<const Vector> objectives, const WeightSet& weights, const Vector& ideal);

} // namespace dmi
