#include "dmi/gpr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <spdlog/spdlog.h>

#include "dmi/errors.hpp"

namespace dmi {

namespace {

constexpr double kSqrt5 = 2.23606797749978969640917366873128;
constexpr double kMaxJitter = 1e-2;
constexpr double kDuplicateTolerance = 1e-6;

Matrix pairwise_distances(const Matrix& x)
{
    const auto n = x.rows();
    Matrix d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        d(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = (x.row(i) - x.row(j)).norm();
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

// Only the lower triangle is filled; LLT reads nothing else.
void fill_kernel(const Matrix& distances, const KernelParams& p, Matrix& k)
{
    const auto n = distances.rows();
    const double s = kSqrt5 / p.length_scale;
    k.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto r = s * distances.col(j).tail(n - j).array();
        k.col(j).tail(n - j) = p.amplitude * (1.0 + r + r.square() / 3.0) * (-r).exp();
    }
    k.diagonal().array() += p.jitter;
}

Matrix kernel_matrix(const Matrix& distances, const KernelParams& p)
{
    Matrix k = Matrix::Zero(distances.rows(), distances.rows());
    fill_kernel(distances, p, k);
    return k;
}

// Scratch buffers reused across likelihood evaluations; the factorization
// runs in place on `kernel`.
struct LmlWorkspace {
    Matrix kernel;
    Vector alpha;
};

double lml_from_distances(const Matrix& distances, const Vector& y, const KernelParams& p, LmlWorkspace& ws)
{
    fill_kernel(distances, p, ws.kernel);
    Eigen::LLT<Eigen::Ref<Matrix>> llt(ws.kernel);
    if (llt.info() != Eigen::Success) {
        return -std::numeric_limits<double>::infinity();
    }
    ws.alpha = llt.solve(y);
    const auto diag = ws.kernel.diagonal();
    if ((diag.array() <= 0.0).any() || !ws.alpha.allFinite()) {
        return -std::numeric_limits<double>::infinity();
    }
    const double log_det = 2.0 * diag.array().log().sum();
    const auto n = static_cast<double>(y.size());
    return -0.5 * y.dot(ws.alpha) - 0.5 * log_det - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

double lml_from_distances(const Matrix& distances, const Vector& y, const KernelParams& p)
{
    LmlWorkspace ws;
    return lml_from_distances(distances, y, p, ws);
}

// Bounded Nelder-Mead on a 2-D log-parameter box. Points are clamped to the box.
struct Simplex2 {
    std::array<Eigen::Vector2d, 3> points;
    std::array<double, 3> values;
};

struct NmTolerance {
    double step;      ///< initial simplex edge
    double spread;    ///< relative value spread
    double diameter;  ///< simplex diameter
};

constexpr NmTolerance kCoarse{1.0, 1e-4, 1e-2};
constexpr NmTolerance kPolish{0.1, 1e-7, 1e-4};

template <typename Objective>
std::pair<Eigen::Vector2d, double> nelder_mead(Objective&& objective, Eigen::Vector2d start, double lo, double hi,
                                               std::size_t max_iterations, const NmTolerance& tol)
{
    auto clamp = [&](Eigen::Vector2d p) { return Eigen::Vector2d(p.cwiseMax(lo).cwiseMin(hi)); };
    auto eval = [&](const Eigen::Vector2d& p) {
        const double v = objective(p);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    const double step = tol.step;
    Simplex2 s;
    s.points[0] = clamp(start);
    for (int k = 0; k < 2; ++k) {
        Eigen::Vector2d p = s.points[0];
        p[k] += (p[k] + step <= hi) ? step : -step;
        s.points[static_cast<std::size_t>(k) + 1] = clamp(p);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        s.values[i] = eval(s.points[i]);
    }

    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        std::array<std::size_t, 3> order{0, 1, 2};
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
        const auto best = order[0];
        const auto mid = order[1];
        const auto worst = order[2];

        const double spread = s.values[worst] - s.values[best];
        const double diameter = std::max((s.points[worst] - s.points[best]).norm(), (s.points[mid] - s.points[best]).norm());
        if (std::isfinite(spread) && spread <= tol.spread * (1.0 + std::abs(s.values[best])) &&
            diameter <= tol.diameter) {
            break;
        }

        const Eigen::Vector2d centroid = 0.5 * (s.points[best] + s.points[mid]);
        const Eigen::Vector2d reflected = clamp(centroid + (centroid - s.points[worst]));
        const double fr = eval(reflected);

        if (fr < s.values[best]) {
            const Eigen::Vector2d expanded = clamp(centroid + 2.0 * (centroid - s.points[worst]));
            const double fe = eval(expanded);
            if (fe < fr) {
                s.points[worst] = expanded;
                s.values[worst] = fe;
            } else {
                s.points[worst] = reflected;
                s.values[worst] = fr;
            }
            continue;
        }
        if (fr < s.values[mid]) {
            s.points[worst] = reflected;
            s.values[worst] = fr;
            continue;
        }

        const bool outside = fr < s.values[worst];
        const Eigen::Vector2d contracted =
            outside ? clamp(centroid + 0.5 * (reflected - centroid)) : clamp(centroid + 0.5 * (s.points[worst] - centroid));
        const double fc = eval(contracted);
        if (fc < std::min(fr, s.values[worst])) {
            s.points[worst] = contracted;
            s.values[worst] = fc;
            continue;
        }

        // shrink toward best
        for (auto i : {mid, worst}) {
            s.points[i] = clamp(s.points[best] + 0.5 * (s.points[i] - s.points[best]));
            s.values[i] = eval(s.points[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (s.values[i] < s.values[best]) {
            best = i;
        }
    }
    return {s.points[best], s.values[best]};
}

double median_pairwise_distance(const Matrix& distances)
{
    std::vector<double> values;
    for (Eigen::Index i = 0; i < distances.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < distances.cols(); ++j) {
            values.push_back(distances(i, j));
        }
    }
    if (values.empty()) {
        return 1.0;
    }
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

} // namespace

double matern52(double d, const KernelParams& params)
{
    require(d >= 0.0, "matern52: distance must be non-negative");
    const double r = kSqrt5 * d / params.length_scale;
    return params.amplitude * (1.0 + r + r * r / 3.0) * std::exp(-r);
}

StandardizedTargets standardize(const Vector& y)
{
    StandardizedTargets out;
    out.mean = y.mean();
    const double var = (y.array() - out.mean).square().mean();
    out.sd = var > 1e-24 ? std::sqrt(var) : 1.0;
    out.values = (y.array() - out.mean) / out.sd;
    return out;
}

double log_marginal_likelihood(const Matrix& train_x, const Vector& standardized_y, const KernelParams& params)
{
    require(train_x.rows() == standardized_y.size(), "log_marginal_likelihood: size mismatch");
    require(train_x.rows() >= 1, "log_marginal_likelihood: need at least one point");
    return lml_from_distances(pairwise_distances(train_x), standardized_y, params);
}

GpModel GpModel::fit(Matrix train_x, const Vector& train_y, const KernelParams& params)
{
    require(train_x.rows() >= 2, "GpModel::fit: need at least two training points");
    require(train_x.rows() == train_y.size(), "GpModel::fit: size mismatch");
    require(train_y.allFinite(), "GpModel::fit: targets must be finite");
    require(params.amplitude > 0.0 && params.length_scale > 0.0, "GpModel::fit: kernel parameters must be positive");
    require(params.jitter >= 1e-10, "GpModel::fit: jitter must be >= 1e-10");

    const Matrix distances = pairwise_distances(train_x);
    for (Eigen::Index i = 0; i < distances.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < distances.cols(); ++j) {
            require(distances(i, j) > kDuplicateTolerance, "GpModel::fit: duplicate training inputs");
        }
    }

    GpModel model;
    const auto targets = standardize(train_y);
    model.train_x_ = std::move(train_x);
    model.train_y_ = targets.values;
    model.target_mean_ = targets.mean;
    model.target_sd_ = targets.sd;
    model.params_ = params;

    for (double jitter = params.jitter; jitter <= kMaxJitter * (1.0 + 1e-12); jitter *= 10.0) {
        model.params_.jitter = jitter;
        model.llt_.compute(kernel_matrix(distances, model.params_));
        if (model.llt_.info() == Eigen::Success && (model.llt_.matrixLLT().diagonal().array() > 0.0).all()) {
            model.weights_ = model.llt_.solve(model.train_y_);
            if (model.weights_.allFinite()) {
                return model;
            }
        }
    }
    throw IllConditioned("GpModel::fit: covariance not positive definite up to jitter 1e-2");
}

Vector GpModel::distances_to(const Vector& x) const
{
    require(x.size() == train_x_.cols(), "GpModel: query dimension mismatch");
    return (train_x_.rowwise() - x.transpose()).rowwise().norm();
}

double GpModel::predict_mean_from_distances(const Vector& distances) const
{
    const auto r = (kSqrt5 / params_.length_scale) * distances.array();
    const double dot = (params_.amplitude * (1.0 + r + r.square() / 3.0) * (-r).exp() * weights_.array()).sum();
    return target_mean_ + target_sd_ * dot;
}

double GpModel::predict_mean(const Vector& x) const { return predict_mean_from_distances(distances_to(x)); }

Prediction GpModel::predict(const Vector& x) const
{
    const Vector d = distances_to(x);
    const auto r = (kSqrt5 / params_.length_scale) * d.array();
    const Vector k = (params_.amplitude * (1.0 + r + r.square() / 3.0) * (-r).exp()).matrix();
    Prediction out;
    out.mean = target_mean_ + target_sd_ * k.dot(weights_);
    const Vector v = llt_.matrixL().solve(k);
    const double var = params_.amplitude - v.squaredNorm();
    out.variance = std::max(var, 0.0) * target_sd_ * target_sd_;
    return out;
}

// With s = sqrt(5)/rho the kernel gradient is phi(d) (x - x_i) where
// phi(d) = -(5 / (3 rho^2)) a (1 + s d) exp(-s d); phi'(d)/d = (25 / (3 rho^4)) a exp(-s d).
// Both are finite at d = 0, which gives the coincident-point limit directly.
Vector GpModel::mean_gradient(const Vector& x) const
{
    const Matrix diff = (-train_x_).rowwise() + x.transpose();  // N x n, x - x_i
    const Vector d = diff.rowwise().norm();
    const double rho = params_.length_scale;
    const double s = kSqrt5 / rho;
    const auto phi = -(5.0 / (3.0 * rho * rho)) * params_.amplitude * (1.0 + s * d.array()) * (-s * d.array()).exp();
    const Vector coeff = (phi * weights_.array()).matrix();
    return target_sd_ * (diff.transpose() * coeff);
}

Matrix GpModel::mean_hessian(const Vector& x) const
{
    const Matrix diff = (-train_x_).rowwise() + x.transpose();
    const Vector d = diff.rowwise().norm();
    const double rho = params_.length_scale;
    const double s = kSqrt5 / rho;
    const auto decay = (-s * d.array()).exp();
    const auto phi = -(5.0 / (3.0 * rho * rho)) * params_.amplitude * (1.0 + s * d.array()) * decay;
    const auto psi = (25.0 / (3.0 * rho * rho * rho * rho)) * params_.amplitude * decay;

    const double phi_sum = (phi * weights_.array()).sum();
    const Vector psi_w = (psi * weights_.array()).matrix();
    Matrix h = diff.transpose() * psi_w.asDiagonal() * diff;
    h.diagonal().array() += phi_sum;
    h = 0.5 * (h + h.transpose());
    return target_sd_ * h;
}

double GpModel::log_marginal_likelihood() const
{
    const auto diag = llt_.matrixLLT().diagonal();
    const double log_det = 2.0 * diag.array().log().sum();
    const auto n = static_cast<double>(train_y_.size());
    return -0.5 * train_y_.dot(weights_) - 0.5 * log_det - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

KernelParams optimize_hyperparameters(const Matrix& train_x, const Vector& train_y, RandomSource& rng,
                                      const HyperparameterSearch& search)
{
    require(train_x.rows() >= 2, "optimize_hyperparameters: need at least two training points");
    require(train_x.rows() == train_y.size(), "optimize_hyperparameters: size mismatch");
    require(search.starts >= 1, "optimize_hyperparameters: need at least one start");
    require(search.lower > 0.0 && search.lower < search.upper, "optimize_hyperparameters: invalid bounds");

    const Matrix distances = pairwise_distances(train_x);
    const Vector y = standardize(train_y).values;
    const double lo = std::log(search.lower);
    const double hi = std::log(search.upper);

    LmlWorkspace ws;
    auto negative_lml = [&](const Eigen::Vector2d& theta) {
        KernelParams p{std::exp(theta[0]), std::exp(theta[1]), search.jitter};
        return -lml_from_distances(distances, y, p, ws);
    };

    double best_value = std::numeric_limits<double>::infinity();
    Eigen::Vector2d best_theta = Eigen::Vector2d::Zero();
    for (std::size_t start = 0; start < search.starts; ++start) {
        const Eigen::Vector2d theta0(rng.uniform(lo, hi), rng.uniform(lo, hi));
        const auto [theta, value] = nelder_mead(negative_lml, theta0, lo, hi, search.max_iterations, kCoarse);
        if (value < best_value) {
            best_value = value;
            best_theta = theta;
        }
    }
    if (std::isfinite(best_value)) {
        const auto [theta, value] = nelder_mead(negative_lml, best_theta, lo, hi, search.max_iterations, kPolish);
        if (value <= best_value) {
            best_value = value;
            best_theta = theta;
        }
    }

    if (!std::isfinite(best_value)) {
        KernelParams fallback{1.0, std::clamp(0.5 * median_pairwise_distance(distances), search.lower, search.upper),
                              search.jitter};
        spdlog::warn("hyperparameter search failed on all {} starts; falling back to amplitude={} length_scale={}",
                     search.starts, fallback.amplitude, fallback.length_scale);
        return fallback;
    }
    return KernelParams{std::exp(best_theta[0]), std::exp(best_theta[1]), search.jitter};
}

SurrogateBank::SurrogateBank(std::vector<GpModel> models) : models_(std::move(models))
{
    require(models_.size() >= 2, "SurrogateBank: need at least two objectives");
    for (const auto& m : models_) {
        require(m.train_x().rows() == models_.front().train_x().rows() &&
                    m.train_x().cols() == models_.front().train_x().cols(),
                "SurrogateBank: models must share training inputs");
    }
}

SurrogateBank SurrogateBank::fit(const Matrix& train_x, const Matrix& train_y, RandomSource& rng,
                                 const HyperparameterSearch& search)
{
    require(train_y.rows() == train_x.rows(), "SurrogateBank::fit: size mismatch");
    std::vector<GpModel> models;
    models.reserve(static_cast<std::size_t>(train_y.cols()));
    for (Eigen::Index j = 0; j < train_y.cols(); ++j) {
        auto child = rng.child(static_cast<std::uint64_t>(j));
        const Vector y = train_y.col(j);
        const auto params = optimize_hyperparameters(train_x, y, child, search);
        models.push_back(GpModel::fit(train_x, y, params));
    }
    return SurrogateBank(std::move(models));
}

ObjectiveVector SurrogateBank::value(const Vector& x) const
{
    require(static_cast<std::size_t>(x.size()) == dimension(), "SurrogateBank: query dimension mismatch");
    const Vector d = (models_.front().train_x().rowwise() - x.transpose()).rowwise().norm();
    Vector f(static_cast<Eigen::Index>(models_.size()));
    for (std::size_t i = 0; i < models_.size(); ++i) {
        f[static_cast<Eigen::Index>(i)] = models_[i].predict_mean_from_distances(d);
    }
    return ObjectiveVector(std::move(f));
}

Matrix SurrogateBank::jacobian(const Vector& x) const
{
    Matrix j(static_cast<Eigen::Index>(models_.size()), x.size());
    for (std::size_t i = 0; i < models_.size(); ++i) {
        j.row(static_cast<Eigen::Index>(i)) = models_[i].mean_gradient(x).transpose();
    }
    return j;
}

std::vector<Matrix> SurrogateBank::hessians(const Vector& x) const
{
    std::vector<Matrix> out;
    out.reserve(models_.size());
    for (const auto& m : models_) {
        out.push_back(m.mean_hessian(x));
    }
    return out;
}

} // namespace dmi
