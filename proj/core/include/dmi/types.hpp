#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace dmi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Box search space [lower, upper]^n.
class Bounds {
public:
    Bounds(Vector lower, Vector upper);

    static Bounds unit(std::size_t n);
    static Bounds uniform(std::size_t n, double lower, double upper);

    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(lower_.size()); }
    [[nodiscard]] const Vector& lower() const { return lower_; }
    [[nodiscard]] const Vector& upper() const { return upper_; }
    [[nodiscard]] Vector width() const { return upper_ - lower_; }

    /// Closed-box membership.
    [[nodiscard]] bool contains(const Vector& x) const;
    [[nodiscard]] Vector clip(Vector x) const;

    /// Affine maps between the box and the unit cube.
    [[nodiscard]] Vector to_unit(const Vector& x) const;
    [[nodiscard]] Vector from_unit(const Vector& u) const;

private:
    Vector lower_;
    Vector upper_;
};

class DecisionVector {
public:
    DecisionVector() = default;
    explicit DecisionVector(Vector coords) : coords_(std::move(coords)) {}

    [[nodiscard]] const Vector& coords() const { return coords_; }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(coords_.size()); }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[static_cast<Eigen::Index>(i)]; }

private:
    Vector coords_;
};

/// Objective values, m >= 2 and all finite.
class ObjectiveVector {
public:
    ObjectiveVector() = default;
    explicit ObjectiveVector(Vector values);
    ObjectiveVector(std::initializer_list<double> values);

    [[nodiscard]] const Vector& values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

    friend bool operator==(const ObjectiveVector& a, const ObjectiveVector& b) { return a.values_ == b.values_; }

private:
    Vector values_;
};

enum class Source { TrueEvaluation, SurrogatePrediction };

class EvaluatedSolution {
public:
    EvaluatedSolution(DecisionVector x, ObjectiveVector f, Source source)
        : x_(std::move(x)), f_(std::move(f)), source_(source) {}

    [[nodiscard]] const DecisionVector& x() const { return x_; }
    [[nodiscard]] const ObjectiveVector& f() const { return f_; }
    [[nodiscard]] Source source() const { return source_; }

private:
    DecisionVector x_;
    ObjectiveVector f_;
    Source source_;
};

/// Ordered collection of solutions sharing n and m.
class Population {
public:
    Population() = default;
    explicit Population(std::vector<EvaluatedSolution> members);

    void push_back(EvaluatedSolution s);
    void append(const Population& other);

    [[nodiscard]] std::size_t size() const { return members_.size(); }
    [[nodiscard]] bool empty() const { return members_.empty(); }
    [[nodiscard]] const EvaluatedSolution& operator[](std::size_t i) const { return members_[i]; }
    [[nodiscard]] auto begin() const { return members_.begin(); }
    [[nodiscard]] auto end() const { return members_.end(); }
    [[nodiscard]] const std::vector<EvaluatedSolution>& members() const { return members_; }

    /// n and m of the members; 0 when empty.
    [[nodiscard]] std::size_t dimension() const;
    [[nodiscard]] std::size_t num_objectives() const;

    [[nodiscard]] std::vector<Vector> objective_vectors() const;
    [[nodiscard]] std::vector<Vector> decision_vectors() const;
    [[nodiscard]] Population subset(std::span<const std::size_t> indices) const;

private:
    std::vector<EvaluatedSolution> members_;
};

} // namespace dmi
