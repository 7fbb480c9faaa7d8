#include "dmi/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <spdlog/spdlog.h>

#include "dmi/dominance.hpp"
#include "dmi/errors.hpp"

namespace dmi {

namespace {

constexpr double kRankTolerance = 1e-8;
constexpr double kMinBlockNorm = 1e-10;
constexpr double kDuplicateTolerance = 1e-6;

} // namespace

Vector project_to_simplex(const Vector& v)
{
    const auto m = v.size();
    std::vector<double> sorted(v.data(), v.data() + m);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        cumulative += sorted[static_cast<std::size_t>(k)];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted[static_cast<std::size_t>(k)] - t > 0.0) {
            theta = t;
        }
    }
    return (v.array() - theta).cwiseMax(0.0).matrix();
}

KktMultipliers estimate_multipliers(const Matrix& jacobian)
{
    const auto m = jacobian.rows();
    require(m >= 1, "estimate_multipliers: empty jacobian");
    const Matrix gram = jacobian * jacobian.transpose();
    Vector alpha = Vector::Constant(m, 1.0 / static_cast<double>(m));

    const double lipschitz = 2.0 * Eigen::SelfAdjointEigenSolver<Matrix>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    if (lipschitz > 0.0) {
        const double step = 1.0 / lipschitz;
        Vector y = alpha;
        double t = 1.0;
        double value = alpha.dot(gram * alpha);
        for (int iter = 0; iter < 500; ++iter) {
            const Vector next = project_to_simplex(y - step * 2.0 * (gram * y));
            const double next_value = next.dot(gram * next);
            if (next_value > value) {
                // restart momentum
                y = alpha;
                t = 1.0;
                continue;
            }
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            y = next + ((t - 1.0) / t_next) * (next - alpha);
            const double change = (next - alpha).norm();
            alpha = next;
            value = next_value;
            t = t_next;
            if (std::sqrt(std::max(value, 0.0)) <= 1e-10 || change <= 1e-10) {
                break;
            }
        }
    }
    return {alpha, (jacobian.transpose() * alpha).norm()};
}

KktMultipliers estimate_multipliers(const DifferentiableVectorObjective& objective, const Vector& x)
{
    return estimate_multipliers(objective.jacobian(x));
}

Matrix kkt_system_matrix(const DifferentiableVectorObjective& objective, const Vector& x, const Vector& alpha)
{
    const auto m = static_cast<Eigen::Index>(objective.num_objectives());
    const auto n = static_cast<Eigen::Index>(objective.dimension());
    require(alpha.size() == m, "kkt_system_matrix: alpha size must equal m");
    require(x.size() == n, "kkt_system_matrix: x dimension mismatch");

    const Matrix jac = objective.jacobian(x);
    const auto hessians = objective.hessians(x);
    Matrix weighted = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < m; ++i) {
        weighted += alpha[i] * hessians[static_cast<std::size_t>(i)];
    }

    Matrix system = Matrix::Zero(1 + n, m + n);
    system.block(0, 0, 1, m).setOnes();
    system.block(1, 0, n, m) = jac.transpose();
    system.block(1, m, n, n) = weighted;
    return system;
}

TangentBasis tangent_vectors(const Matrix& system, std::size_t m)
{
    const auto cols = system.cols();
    const auto n = cols - static_cast<Eigen::Index>(m);
    require(n >= 1 && system.rows() == n + 1, "tangent_vectors: system must be (1+n) x (m+n)");
    require(system.allFinite(), "tangent_vectors: system has non-finite entries");

    Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeFullV);
    const Vector& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma.maxCoeff() : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > kRankTolerance * sigma_max) {
            ++rank;
        }
    }

    const Matrix& v = svd.matrixV();
    std::vector<Vector> candidates;
    for (Eigen::Index c = rank; c < cols; ++c) {
        if (v.col(c).tail(n).norm() > kMinBlockNorm) {
            candidates.push_back(v.col(c));
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const Vector& a, const Vector& b) { return a.tail(n).norm() > b.tail(n).norm(); });

    TangentBasis basis;
    const auto keep = m - 1;
    for (auto& cand : candidates) {
        if (basis.directions.size() >= keep) {
            break;
        }
        Vector full = cand;
        for (std::size_t k = 0; k < basis.directions.size(); ++k) {
            const double proj = basis.directions[k].dot(full.tail(n));
            full -= proj * basis.null_vectors[k];
        }
        const double norm = full.tail(n).norm();
        if (norm <= kMinBlockNorm) {
            continue;
        }
        full /= norm;
        basis.directions.push_back(full.tail(n));
        basis.null_vectors.push_back(full);
        basis.residual = std::max(basis.residual, (system * full).norm());
    }
    if (basis.directions.empty()) {
        throw EmptyTangent("tangent_vectors: no usable null-space direction");
    }
    return basis;
}

TangentBasis tangent_vectors(const DifferentiableVectorObjective& objective, const Vector& x, const Vector& alpha)
{
    return tangent_vectors(kkt_system_matrix(objective, x, alpha), objective.num_objectives());
}

void InterpolationConfig::validate() const
{
    require(count_total >= 1, "interpolation count must be at least 1");
    require(step_scale >= 0.0 && std::isfinite(step_scale), "step scale must be non-negative");
}

Population interpolate(const Population& parents, const DifferentiableVectorObjective& objective,
                       const InterpolationConfig& config, const Bounds& bounds, std::span<const Vector> archive,
                       RandomSource& rng)
{
    config.validate();
    if (parents.empty()) {
        return {};
    }
    const std::size_t per_parent = (config.count_total + parents.size() - 1) / parents.size();

    std::vector<Vector> archive_unit;
    archive_unit.reserve(archive.size());
    for (const auto& a : archive) {
        archive_unit.push_back(bounds.to_unit(a));
    }

    std::vector<Vector> accepted;
    std::vector<Vector> accepted_unit;
    std::size_t generated = 0;
    std::size_t empty_tangents = 0;
    auto is_duplicate = [&](const Vector& u) {
        auto near = [&](const Vector& other) { return (other - u).norm() <= kDuplicateTolerance; };
        return std::any_of(archive_unit.begin(), archive_unit.end(), near) ||
               std::any_of(accepted_unit.begin(), accepted_unit.end(), near);
    };

    for (const auto& parent : parents) {
        if (generated >= config.count_total) {
            break;
        }
        const Vector& x = parent.x().coords();
        TangentBasis basis;
        try {
            const auto multipliers = estimate_multipliers(objective, x);
            basis = tangent_vectors(objective, x, multipliers.alpha);
        } catch (const EmptyTangent&) {
            ++empty_tangents;
            continue;
        }
        for (std::size_t k = 0; k < per_parent && generated < config.count_total; ++k) {
            ++generated;
            Vector candidate = x;
            for (const auto& dir : basis.directions) {
                const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
                const double eta = rng.uniform_open_closed();
                candidate += sign * eta * config.step_scale * dir;
            }
            if (!bounds.contains(candidate)) {
                continue;
            }
            Vector unit = bounds.to_unit(candidate);
            if (is_duplicate(unit)) {
                continue;
            }
            accepted_unit.push_back(std::move(unit));
            accepted.push_back(std::move(candidate));
        }
    }
    if (empty_tangents == parents.size()) {
        spdlog::warn("interpolation: no parent yielded a tangent direction");
    }

    Population candidates;
    for (auto& c : accepted) {
        auto f = objective.value(c);
        candidates.push_back(EvaluatedSolution(DecisionVector(std::move(c)), std::move(f), Source::SurrogatePrediction));
    }
    return nondominated_filter(candidates);
}

} // namespace dmi
