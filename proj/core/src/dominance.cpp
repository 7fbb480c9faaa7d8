#include "dmi/dominance.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "dmi/errors.hpp"

namespace dmi {

bool dominates(const Vector& a, const Vector& b)
{
    require(a.size() == b.size(), "dominates: objective count mismatch");
    bool strictly_better = false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
        if (a[i] < b[i]) {
            strictly_better = true;
        }
    }
    return strictly_better;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) { return dominates(a.values(), b.values()); }

namespace {

// Bi-objective fast path: sort by (f1, f2) and sweep the running minimum of f2.
std::vector<std::size_t> nondominated_indices_2d(std::span<const Vector> f)
{
    std::vector<std::size_t> order(f.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (f[a][0] != f[b][0]) {
            return f[a][0] < f[b][0];
        }
        return f[a][1] < f[b][1];
    });

    std::vector<char> keep(f.size(), 0);
    double best_f2 = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < order.size()) {
        // group of equal f1
        std::size_t j = i;
        while (j < order.size() && f[order[j]][0] == f[order[i]][0]) {
            ++j;
        }
        const double group_min = f[order[i]][1];
        if (group_min < best_f2) {
            for (std::size_t k = i; k < j && f[order[k]][1] == group_min; ++k) {
                keep[order[k]] = 1;
            }
            best_f2 = group_min;
        }
        i = j;
    }

    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (keep[k] != 0) {
            out.push_back(k);
        }
    }
    return out;
}

} // namespace

std::vector<std::size_t> nondominated_indices(std::span<const Vector> objectives)
{
    if (objectives.empty()) {
        return {};
    }
    const auto m = objectives.front().size();
    for (const auto& f : objectives) {
        require(f.size() == m, "nondominated_indices: objective count mismatch");
    }
    if (m == 2) {
        return nondominated_indices_2d(objectives);
    }

    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < objectives.size() && !dominated; ++j) {
            dominated = j != i && dominates(objectives[j], objectives[i]);
        }
        if (!dominated) {
            out.push_back(i);
        }
    }
    return out;
}

Population nondominated_filter(const Population& population)
{
    const auto objectives = population.objective_vectors();
    const auto keep = nondominated_indices(objectives);
    return population.subset(keep);
}

} // namespace dmi
