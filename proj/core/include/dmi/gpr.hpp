#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Cholesky>

#include "dmi/objective.hpp"
#include "dmi/random.hpp"
#include "dmi/types.hpp"

namespace dmi {

/// Matern 5/2 kernel parameters. `amplitude` is the signal variance in
/// standardized target units; `jitter` is the diagonal stabilizer.
struct KernelParams {
    double amplitude = 1.0;
    double length_scale = 1.0;
    double jitter = 1e-8;
};

/// amplitude * (1 + sqrt(5) d / rho + 5 d^2 / (3 rho^2)) * exp(-sqrt(5) d / rho)
double matern52(double d, const KernelParams& params);

struct HyperparameterSearch {
    std::size_t starts = 8;
    std::size_t max_iterations = 200;
    double lower = 1e-5;  ///< bound for both amplitude and length scale
    double upper = 1e5;
    double jitter = 1e-8;
};

struct Prediction {
    double mean = 0.0;
    double variance = 0.0;
};

struct StandardizedTargets {
    Vector values;
    double mean = 0.0;
    double sd = 1.0;
};

/// Zero-mean, unit-variance targets. A constant target keeps sd = 1.
StandardizedTargets standardize(const Vector& y);

/// Log marginal likelihood of zero-mean targets under the kernel; returns
/// -inf when K + jitter I is not positive definite.
double log_marginal_likelihood(const Matrix& train_x, const Vector& standardized_y, const KernelParams& params);

/// Noiseless GP posterior for one objective.
class GpModel {
public:
    /// Fits with the given hyperparameters. Jitter escalates x10 up to 1e-2
    /// before IllConditioned is thrown. Rows of train_x closer than 1e-6
    /// are a contract violation.
    static GpModel fit(Matrix train_x, const Vector& train_y, const KernelParams& params);

    [[nodiscard]] Prediction predict(const Vector& x) const;
    [[nodiscard]] double predict_mean(const Vector& x) const;
    [[nodiscard]] Vector mean_gradient(const Vector& x) const;
    [[nodiscard]] Matrix mean_hessian(const Vector& x) const;
    [[nodiscard]] double log_marginal_likelihood() const;

    /// Mean from precomputed distances to the training inputs.
    [[nodiscard]] double predict_mean_from_distances(const Vector& distances) const;

    [[nodiscard]] const KernelParams& params() const { return params_; }
    [[nodiscard]] const Matrix& train_x() const { return train_x_; }
    [[nodiscard]] const Vector& train_y() const { return train_y_; }
    [[nodiscard]] const Vector& weights() const { return weights_; }
    [[nodiscard]] Matrix factor() const { return llt_.matrixL(); }
    [[nodiscard]] double target_mean() const { return target_mean_; }
    [[nodiscard]] double target_sd() const { return target_sd_; }
    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(train_x_.cols()); }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(train_x_.rows()); }

private:
    GpModel() = default;

    [[nodiscard]] Vector distances_to(const Vector& x) const;

    Matrix train_x_;
    Vector train_y_;
    KernelParams params_;
    Eigen::LLT<Matrix> llt_;
    Vector weights_;
    double target_mean_ = 0.0;
    double target_sd_ = 1.0;
};

/// Multi-start bounded Nelder-Mead over (log amplitude, log length scale),
/// maximizing the log marginal likelihood. Deterministic given rng.
KernelParams optimize_hyperparameters(const Matrix& train_x, const Vector& train_y, RandomSource& rng,
                                      const HyperparameterSearch& search = {});

/// One GP per objective over shared inputs.
class SurrogateBank final : public DifferentiableVectorObjective {
public:
    explicit SurrogateBank(std::vector<GpModel> models);

    /// Optimizes hyperparameters and fits every column of train_y.
    static SurrogateBank fit(const Matrix& train_x, const Matrix& train_y, RandomSource& rng,
                             const HyperparameterSearch& search = {});

    [[nodiscard]] std::size_t num_objectives() const override { return models_.size(); }
    [[nodiscard]] std::size_t dimension() const override { return models_.front().dimension(); }
    [[nodiscard]] ObjectiveVector value(const Vector& x) const override;
    [[nodiscard]] Matrix jacobian(const Vector& x) const override;
    [[nodiscard]] std::vector<Matrix> hessians(const Vector& x) const override;

    [[nodiscard]] const std::vector<GpModel>& models() const { return models_; }

private:
    std::vector<GpModel> models_;
};

} // namespace dmi
