#include "dmi/batch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dmi/dominance.hpp"
#include "dmi/errors.hpp"
#include "dmi/hypervolume.hpp"

namespace dmi {

namespace {

constexpr double kDuplicateTolerance = 1e-6;

// Drops later entries whose decision vector repeats an earlier one and fills
// `chosen` from the head of the ranking.
BatchSelection finish(const Population& candidates, std::vector<std::size_t> order, std::vector<double> scores,
                      std::size_t xi)
{
    BatchSelection out;
    out.scores = std::move(scores);
    for (auto i : order) {
        const auto& x = candidates[i].x().coords();
        const bool repeated = std::any_of(out.ranking.begin(), out.ranking.end(), [&](std::size_t j) {
            return (candidates[j].x().coords() - x).norm() <= kDuplicateTolerance;
        });
        if (!repeated) {
            out.ranking.push_back(i);
        }
    }
    const auto take = std::min(xi, out.ranking.size());
    out.chosen = candidates.subset(std::span<const std::size_t>(out.ranking.data(), take));
    return out;
}

std::vector<std::size_t> iota_indices(std::size_t n)
{
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

void check_candidates(const Population& candidates, std::size_t xi)
{
    require(!candidates.empty(), "batch selection: candidate set is empty");
    require(xi >= 1, "batch selection: batch size must be at least 1");
}

} // namespace

Selector parse_selector(std::string_view id)
{
    if (id == "ihv") {
        return Selector::Ihv;
    }
    if (id == "native") {
        return Selector::Native;
    }
    throw ConfigError("unknown selector '" + std::string(id) + "' (expected ihv or native)");
}

std::string selector_id(Selector selector) { return selector == Selector::Ihv ? "ihv" : "native"; }

Vector ihv_reference(std::span<const Vector> objectives)
{
    require(!objectives.empty(), "ihv_reference: empty set");
    Vector lo = objectives.front();
    Vector hi = objectives.front();
    for (const auto& f : objectives) {
        lo = lo.cwiseMin(f);
        hi = hi.cwiseMax(f);
    }
    const Vector range = hi - lo;
    return hi + range.unaryExpr([](double r) { return r > 0.0 ? 0.1 * r : 0.1; });
}

BatchSelection select_ihv(const Population& candidates, std::size_t xi)
{
    check_candidates(candidates, xi);
    const auto objectives = candidates.objective_vectors();
    std::vector<bool> nondominated(candidates.size(), false);
    std::vector<Vector> nd_objectives;
    for (auto i : nondominated_indices(objectives)) {
        nondominated[i] = true;
        nd_objectives.push_back(objectives[i]);
    }
    const auto contributions = ihv_contributions(objectives, ihv_reference(nd_objectives));

    auto order = iota_indices(candidates.size());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (contributions[a] != contributions[b]) {
            return contributions[a] > contributions[b];
        }
        return nondominated[a] && !nondominated[b];
    });
    return finish(candidates, std::move(order), contributions, xi);
}

BatchSelection select_nsga2_native(const Population& candidates, std::size_t xi, const WeightSet& weights)
{
    check_candidates(candidates, xi);
    require(weights.size() >= 1, "select_nsga2_native: empty weight set");
    const auto objectives = candidates.objective_vectors();
    const auto fronts = nondominated_sort(objectives);
    const auto& nd = fronts.front();

    std::vector<Vector> nd_objectives;
    for (auto i : nd) {
        nd_objectives.push_back(objectives[i]);
    }
    const auto crowd = crowding_distance(nd_objectives);

    Vector ideal = nd_objectives.front();
    Vector nadir = nd_objectives.front();
    for (const auto& f : nd_objectives) {
        ideal = ideal.cwiseMin(f);
        nadir = nadir.cwiseMax(f);
    }
    const Vector range = (nadir - ideal).unaryExpr([](double r) { return r > 0.0 ? r : 1.0; });

    // subregion -> position in nd of its representative
    std::vector<std::ptrdiff_t> representative(weights.size(), -1);
    for (std::size_t k = 0; k < nd.size(); ++k) {
        const Vector g = (nd_objectives[k] - ideal).cwiseQuotient(range);
        std::size_t region = 0;
        double best_cos = -std::numeric_limits<double>::infinity();
        for (std::size_t w = 0; w < weights.size(); ++w) {
            const double denom = g.norm() * weights.vectors[w].norm();
            const double cosine = denom > 0.0 ? g.dot(weights.vectors[w]) / denom : 1.0;
            if (cosine > best_cos) {
                best_cos = cosine;
                region = w;
            }
        }
        auto& rep = representative[region];
        if (rep < 0 || crowd[k] > crowd[static_cast<std::size_t>(rep)]) {
            rep = static_cast<std::ptrdiff_t>(k);
        }
    }

    std::vector<bool> is_rep(nd.size(), false);
    for (auto r : representative) {
        if (r >= 0) {
            is_rep[static_cast<std::size_t>(r)] = true;
        }
    }
    auto by_crowding = [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b] || (crowd[a] == crowd[b] && a < b); };
    std::vector<std::size_t> reps;
    std::vector<std::size_t> others;
    for (std::size_t k = 0; k < nd.size(); ++k) {
        (is_rep[k] ? reps : others).push_back(k);
    }
    std::sort(reps.begin(), reps.end(), by_crowding);
    std::sort(others.begin(), others.end(), by_crowding);

    std::vector<double> scores(candidates.size(), 0.0);
    std::vector<std::size_t> order;
    for (auto k : reps) {
        order.push_back(nd[k]);
    }
    for (auto k : others) {
        order.push_back(nd[k]);
    }
    for (std::size_t k = 0; k < nd.size(); ++k) {
        scores[nd[k]] = crowd[k];
    }
    for (std::size_t r = 1; r < fronts.size(); ++r) {
        std::vector<Vector> members;
        for (auto i : fronts[r]) {
            members.push_back(objectives[i]);
        }
        const auto c = crowding_distance(members);
        auto idx = iota_indices(fronts[r].size());
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return c[a] > c[b]; });
        for (auto k : idx) {
            order.push_back(fronts[r][k]);
            scores[fronts[r][k]] = -static_cast<double>(r);
        }
    }
    return finish(candidates, std::move(order), std::move(scores), xi);
}

BatchSelection select_ibea_native(const Population& candidates, std::size_t xi, double kappa)
{
    check_candidates(candidates, xi);
    const auto objectives = candidates.objective_vectors();
    auto fitness = ibea_fitness(objectives, kappa);
    auto order = iota_indices(candidates.size());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
    return finish(candidates, std::move(order), std::move(fitness), xi);
}

std::vector<double> subproblem_bests(std::span<const Vector> objectives, const WeightSet& weights, const Vector& ideal)
{
    std::vector<double> best(weights.size(), std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < weights.size(); ++j) {
        for (const auto& f : objectives) {
            best[j] = std::min(best[j], tchebycheff(f, weights.vectors[j], ideal));
        }
    }
    return best;
}

BatchSelection select_moead_native(const Population& candidates, std::size_t xi, const WeightSet& weights,
                                   std::span<const double> previous_bests, const Vector& ideal)
{
    check_candidates(candidates, xi);
    require(previous_bests.size() == weights.size(), "select_moead_native: one previous best per subproblem required");
    const auto objectives = candidates.objective_vectors();

    const std::size_t n_sub = weights.size();
    std::vector<std::size_t> best_member(n_sub, 0);
    std::vector<double> improvement(n_sub, 0.0);
    for (std::size_t j = 0; j < n_sub; ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < objectives.size(); ++i) {
            const double g = tchebycheff(objectives[i], weights.vectors[j], ideal);
            if (g < best) {
                best = g;
                best_member[j] = i;
            }
        }
        const double prev = previous_bests[j];
        if (prev > 0.0 && std::isfinite(prev)) {
            improvement[j] = (prev - best) / prev;
        } else if (prev == 0.0 || !std::isfinite(prev)) {
            improvement[j] = (std::isinf(prev) || best < prev) ? std::numeric_limits<double>::infinity() : 0.0;
        }
    }

    auto subproblems = iota_indices(n_sub);
    std::stable_sort(subproblems.begin(), subproblems.end(),
                     [&](std::size_t a, std::size_t b) { return improvement[a] > improvement[b]; });

    std::vector<double> scores(candidates.size(), -std::numeric_limits<double>::infinity());
    std::vector<bool> placed(candidates.size(), false);
    std::vector<std::size_t> order;
    for (auto j : subproblems) {
        const auto i = best_member[j];
        scores[i] = std::max(scores[i], improvement[j]);
        if (!placed[i]) {
            placed[i] = true;
            order.push_back(i);
        }
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!placed[i]) {
            order.push_back(i);
        }
    }
    return finish(candidates, std::move(order), std::move(scores), xi);
}

} // namespace dmi
