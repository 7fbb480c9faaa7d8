#include "dmi/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dmi/dominance.hpp"
#include "dmi/errors.hpp"

namespace dmi {

std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const Vector> objectives)
{
    const std::size_t n = objectives.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(objectives[i], objectives[j])) {
                dominated_by_me[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(objectives[j], objectives[i])) {
                dominated_by_me[j].push_back(i);
                ++domination_count[i];
            }
        }
    }

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (domination_count[i] == 0) {
            current.push_back(i);
        }
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto i : current) {
            for (auto j : dominated_by_me[i]) {
                if (--domination_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const Vector> front)
{
    const std::size_t n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n == 0) {
        return distance;
    }
    if (n <= 2) {
        std::fill(distance.begin(), distance.end(), std::numeric_limits<double>::infinity());
        return distance;
    }
    const auto m = front.front().size();
    std::vector<std::size_t> order(n);
    for (Eigen::Index k = 0; k < m; ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][k] < front[b][k]; });
        const double lo = front[order.front()][k];
        const double hi = front[order.back()][k];
        distance[order.front()] = std::numeric_limits<double>::infinity();
        distance[order.back()] = std::numeric_limits<double>::infinity();
        const double range = hi - lo;
        if (range <= 0.0) {
            continue;
        }
        for (std::size_t r = 1; r + 1 < n; ++r) {
            distance[order[r]] += (front[order[r + 1]][k] - front[order[r - 1]][k]) / range;
        }
    }
    return distance;
}

std::size_t das_dennis_count(std::size_t m, std::size_t divisions)
{
    require(m >= 1, "das_dennis_count: m must be positive");
    // C(H + m - 1, m - 1)
    std::size_t result = 1;
    for (std::size_t i = 1; i < m; ++i) {
        result = result * (divisions + i) / i;
    }
    return result;
}

std::size_t das_dennis_divisions(std::size_t m, std::size_t size)
{
    require(m >= 2, "das_dennis_divisions: m must be at least 2");
    for (std::size_t h = 1;; ++h) {
        const auto count = das_dennis_count(m, h);
        if (count == size) {
            return h;
        }
        require(count < size, "population size " + std::to_string(size) + " is not a simplex-lattice size for m=" +
                                  std::to_string(m));
    }
}

namespace {

void lattice(std::size_t m, std::size_t remaining, std::size_t divisions, std::vector<std::size_t>& prefix,
             std::vector<Vector>& out)
{
    if (prefix.size() + 1 == m) {
        Vector w(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < prefix.size(); ++i) {
            w[static_cast<Eigen::Index>(i)] = static_cast<double>(prefix[i]) / static_cast<double>(divisions);
        }
        w[static_cast<Eigen::Index>(m - 1)] = static_cast<double>(remaining) / static_cast<double>(divisions);
        out.push_back(std::move(w));
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        prefix.push_back(k);
        lattice(m, remaining - k, divisions, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

WeightSet das_dennis_weights(std::size_t m, std::size_t divisions, std::size_t neighborhood_size)
{
    require(m >= 2, "das_dennis_weights: m must be at least 2");
    require(divisions >= 1, "das_dennis_weights: H must be at least 1");
    require(neighborhood_size >= 1, "das_dennis_weights: T must be at least 1");

    WeightSet set;
    std::vector<std::size_t> prefix;
    lattice(m, divisions, divisions, prefix, set.vectors);

    const std::size_t n = set.vectors.size();
    const std::size_t t = std::min(neighborhood_size, n);
    set.neighborhoods.resize(n);
    std::vector<std::size_t> order(n);
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            dist[j] = (set.vectors[i] - set.vectors[j]).squaredNorm();
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        set.neighborhoods[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(t));
    }
    return set;
}

double tchebycheff(const Vector& f, const Vector& w, const Vector& ideal)
{
    require(f.size() == w.size() && f.size() == ideal.size(), "tchebycheff: size mismatch");
    double worst = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        const double wi = w[i] > 0.0 ? w[i] : 1e-6;
        worst = std::max(worst, std::abs(f[i] - ideal[i]) / wi);
    }
    return worst;
}

double hd_indicator(const Vector& a, const Vector& b, const Vector& ref)
{
    require(a.size() == b.size() && a.size() == ref.size(), "hd_indicator: size mismatch");
    auto box = [&](const Vector& p) { return (ref - p).cwiseMax(0.0).prod(); };
    if (dominates(a, b)) {
        return box(b) - box(a);
    }
    return box(b) - box(a.cwiseMax(b));
}

Matrix hd_indicator_matrix(std::span<const Vector> objectives)
{
    const std::size_t n = objectives.size();
    Matrix indicator = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (n == 0) {
        return indicator;
    }
    const auto m = objectives.front().size();
    Vector lo = objectives.front();
    Vector hi = objectives.front();
    for (const auto& f : objectives) {
        lo = lo.cwiseMin(f);
        hi = hi.cwiseMax(f);
    }
    const Vector range = (hi - lo).unaryExpr([](double r) { return r > 0.0 ? r : 1.0; });
    std::vector<Vector> normalized;
    normalized.reserve(n);
    for (const auto& f : objectives) {
        normalized.push_back((f - lo).cwiseQuotient(range));
    }
    const Vector ref = Vector::Constant(m, 1.1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                indicator(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    hd_indicator(normalized[i], normalized[j], ref);
            }
        }
    }
    return indicator;
}

std::vector<double> ibea_fitness(std::span<const Vector> objectives, double kappa)
{
    require(kappa > 0.0, "ibea_fitness: kappa must be positive");
    const Matrix indicator = hd_indicator_matrix(objectives);
    const std::size_t n = objectives.size();
    std::vector<double> fitness(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i != j) {
                fitness[j] -= std::exp(-indicator(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) / kappa);
            }
        }
    }
    return fitness;
}

} // namespace dmi
