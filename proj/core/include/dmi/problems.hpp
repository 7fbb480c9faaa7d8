#pragma once

#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmi/random.hpp"
#include "dmi/types.hpp"

namespace dmi {

enum class Family { ZDT3, ZDT3Star, DTLZ7, DTLZ7Star, DTLZ2, MinusDTLZ2, WFG2, WFG2Star };

/// Controls for the disconnected-front families.
struct DisconnectParams {
    int regions = 1;   ///< A: number-of-regions control
    double alpha = 1;  ///< shape control
    double beta = 1;   ///< location control
};

struct ProblemSpec {
    std::string id;
    Family family = Family::ZDT3;
    std::size_t n = 0;
    std::size_t m = 0;
    Bounds bounds = Bounds::unit(1);
    std::optional<DisconnectParams> params;
    std::size_t wfg_k = 0;  ///< position-parameter count, WFG only
};

/// Builds and validates a spec. `wfg_k == 0` selects the default 2(m-1)
/// position parameters (bumped by m-1 when that leaves an odd distance count).
ProblemSpec make_problem(Family family, std::size_t n, std::size_t m,
                         std::optional<DisconnectParams> params = std::nullopt,
                         std::size_t wfg_k = 0, std::string id = {});

/// Stable identifiers: zdt3, zdt31, zdt32, dtlz7, dtlz71, dtlz72, dtlz2,
/// minus_dtlz2, wfg2, wfg21, wfg22, wfg23. `m == 0` picks the family default.
ProblemSpec problem_from_id(std::string_view id, std::size_t n, std::size_t m = 0);
std::vector<std::string> known_problem_ids();

/// Counter of post-initialization true evaluations. Thread-safe.
class EvaluationBudget {
public:
    explicit EvaluationBudget(std::size_t maximum) : maximum_(maximum) {}

    EvaluationBudget(const EvaluationBudget&) = delete;
    EvaluationBudget& operator=(const EvaluationBudget&) = delete;

    /// Reserves one evaluation; throws BudgetExhausted when none is left.
    void consume();

    [[nodiscard]] std::size_t consumed() const { return consumed_.load(); }
    [[nodiscard]] std::size_t maximum() const { return maximum_; }
    [[nodiscard]] std::size_t remaining() const { return maximum_ - consumed(); }
    [[nodiscard]] bool exhausted() const { return consumed() >= maximum_; }

private:
    std::size_t maximum_;
    std::atomic<std::size_t> consumed_{0};
};

/// Pure closed-form evaluation, no budget accounting.
ObjectiveVector evaluate(const ProblemSpec& spec, const Vector& x);

ObjectiveVector evaluate_true(const ProblemSpec& spec, const DecisionVector& x, EvaluationBudget& budget);

/// `count` points of the true front (fewer only if the parameterization
/// yields fewer non-dominated samples). Dominated parts of the generating
/// surface are removed before thinning.
Population sample_true_pf(const ProblemSpec& spec, std::size_t count, RandomSource& rng);

/// Number of groups of a bi-objective front separated by gaps larger than
/// gap_factor times the median consecutive gap (sorted by f1).
int count_segments(const Population& front, double gap_factor);

/// Component label per point. m == 2 uses the sorted-gap rule of
/// count_segments; otherwise single linkage at gap_factor times the median
/// nearest-neighbour distance.
std::vector<int> segment_labels(std::span<const Vector> points, double gap_factor);

struct SegmentCoverage {
    int covered = 0;
    int total = 0;
};

/// How many true-front segments have a front point within
/// `tolerance_fraction` of the true front's bounding-box diagonal.
SegmentCoverage segment_coverage(std::span<const Vector> front, std::span<const Vector> true_pf,
                                 double gap_factor = 5.0, double tolerance_fraction = 0.05);

} // namespace dmi
