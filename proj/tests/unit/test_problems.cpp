#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dmi/dominance.hpp"
#include "dmi/errors.hpp"
#include "dmi/problems.hpp"
#include "unit/oracles.hpp"

using namespace dmi;

namespace {

Vector classic_zdt3(const Vector& x)
{
    const double g = 1.0 + 9.0 * x.tail(x.size() - 1).sum() / static_cast<double>(x.size() - 1);
    const double f1 = x[0];
    return Vector{{f1, g * (1.0 - std::sqrt(f1 / g) - (f1 / g) * std::sin(10.0 * std::numbers::pi * f1))}};
}

Vector random_in(const Bounds& b, RandomSource& rng)
{
    Vector x(static_cast<Eigen::Index>(b.dimension()));
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform(b.lower()[i], b.upper()[i]);
    }
    return x;
}

Population front_of(std::initializer_list<std::pair<double, double>> pts)
{
    Population p;
    for (auto [a, b] : pts) {
        p.push_back(EvaluatedSolution(DecisionVector(Vector::Zero(1)), ObjectiveVector{a, b}, Source::TrueEvaluation));
    }
    return p;
}

} // namespace

TEST(Problems, RegistryParameters)
{
    const auto zdt31 = problem_from_id("zdt31", 10);
    ASSERT_TRUE(zdt31.params);
    EXPECT_EQ(zdt31.params->regions, 10);
    EXPECT_EQ(zdt31.params->alpha, 10.0);
    EXPECT_EQ(zdt31.params->beta, 1.0);
    EXPECT_EQ(zdt31.m, 2u);

    const auto dtlz72 = problem_from_id("dtlz72", 10);
    EXPECT_EQ(dtlz72.params->regions, 3);
    EXPECT_EQ(dtlz72.params->alpha, 0.0);
    EXPECT_EQ(dtlz72.params->beta, 2.0);
    EXPECT_EQ(dtlz72.m, 3u);

    const auto wfg23 = problem_from_id("wfg23", 10);
    EXPECT_EQ(wfg23.params->regions, 5);
    EXPECT_EQ(wfg23.params->alpha, 1.0);
    EXPECT_EQ(wfg23.params->beta, 5.0);
    EXPECT_EQ(wfg23.wfg_k % (wfg23.m - 1), 0u);
    EXPECT_EQ((wfg23.n - wfg23.wfg_k) % 2, 0u);
    EXPECT_DOUBLE_EQ(wfg23.bounds.upper()[2], 6.0);

    EXPECT_THROW(problem_from_id("zdt99", 10), ConfigError);
    EXPECT_THROW(make_problem(Family::ZDT3, 10, 3), ContractViolation);
}

TEST(Problems, ZdtStarExamples)
{
    const auto spec = make_problem(Family::ZDT3Star, 30, 2, DisconnectParams{10, 1.0, 1.0});
    Vector x = Vector::Zero(30);
    EXPECT_EQ(evaluate(spec, x).values(), (Vector{{0.0, 1.0}}));
    x[0] = 1.0;
    const auto f = evaluate(spec, x);
    EXPECT_DOUBLE_EQ(f[0], 1.0);
    EXPECT_NEAR(f[1], 0.0, 1e-14);
}

TEST(Problems, ZdtStarWithClassicParametersIsZdt3)
{
    const auto spec = make_problem(Family::ZDT3Star, 10, 2, DisconnectParams{10, 1.0, 1.0});
    RandomSource rng(17);
    for (int i = 0; i < 1000; ++i) {
        const Vector x = random_in(spec.bounds, rng);
        EXPECT_LE((evaluate(spec, x).values() - classic_zdt3(x)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Problems, Dtlz7StarOnDistanceZeroGrid)
{
    const auto spec = problem_from_id("dtlz72", 10);
    const auto& p = *spec.params;
    for (int a = 0; a <= 10; ++a) {
        for (int b = 0; b <= 10; ++b) {
            Vector x = Vector::Zero(10);
            x[0] = a / 10.0;
            x[1] = b / 10.0;
            const double g = 1.0;
            double h = 3.0;
            for (int i = 0; i < 2; ++i) {
                const double fi = x[i];
                h -= fi / (1.0 + g) * (1.0 + std::pow(fi, p.alpha) * std::sin(p.regions * std::numbers::pi * std::pow(fi, p.beta)));
            }
            const auto f = evaluate(spec, x);
            EXPECT_DOUBLE_EQ(f[0], x[0]);
            EXPECT_DOUBLE_EQ(f[1], x[1]);
            EXPECT_NEAR(f[2], (1.0 + g) * h, 1e-12);
        }
    }
}

TEST(Problems, EvaluationIsPure)
{
    RandomSource rng(23);
    for (const auto& id : known_problem_ids()) {
        const auto spec = problem_from_id(id, 10);
        for (int i = 0; i < 50; ++i) {
            const Vector x = random_in(spec.bounds, rng);
            EXPECT_EQ(evaluate(spec, x), evaluate(spec, x)) << id;
        }
    }
}

TEST(Problems, Dtlz7StarReducesToClassic)
{
    const auto star = make_problem(Family::DTLZ7Star, 10, 3, DisconnectParams{3, 0.0, 1.0});
    const auto classic = problem_from_id("dtlz7", 10);
    RandomSource rng(5);
    for (int i = 0; i < 500; ++i) {
        const Vector x = random_in(star.bounds, rng);
        EXPECT_LE((evaluate(star, x).values() - evaluate(classic, x).values()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Problems, ZdtDistanceRaisesSecondObjectiveBaseline)
{
    // f2 + sqrt(f1 g) + wave*g = g, and g >= 1 whenever the tail is in [0,1]
    const auto spec = problem_from_id("zdt31", 10);
    const auto& p = *spec.params;
    RandomSource rng(7);
    for (int i = 0; i < 500; ++i) {
        const Vector x = random_in(spec.bounds, rng);
        const auto f = evaluate(spec, x);
        const double x1 = x[0];
        const double g = 1.0 + 9.0 * x.tail(9).sum() / 9.0;
        EXPECT_GE(g, 1.0);
        const double rebuilt = g - std::sqrt(x1 * g) - std::pow(x1, p.alpha) * std::sin(p.regions * std::numbers::pi * x1);
        EXPECT_NEAR(f[1], rebuilt, 1e-12);
    }
}

TEST(Problems, WfgObjectiveRanges)
{
    RandomSource rng(29);
    for (std::size_t m : {2u, 3u}) {
        const auto spec = problem_from_id("wfg21", 10, m);
        for (int i = 0; i < 1000; ++i) {
            const auto f = evaluate(spec, random_in(spec.bounds, rng));
            for (std::size_t k = 0; k < m; ++k) {
                EXPECT_GE(f[k], 0.0);
                EXPECT_LE(f[k], 1.0 + 2.0 * static_cast<double>(k + 1));
            }
        }
        RandomSource pf_rng(1);
        for (const auto& s : sample_true_pf(spec, 300, pf_rng)) {
            for (std::size_t k = 0; k < m; ++k) {
                EXPECT_GE(s.f()[k], -1e-12);
                EXPECT_LE(s.f()[k], 2.0 * static_cast<double>(k + 1) + 1e-12);
            }
        }
    }
}

TEST(Problems, BudgetAccounting)
{
    const auto spec = problem_from_id("zdt3", 5);
    EvaluationBudget budget(2);
    const DecisionVector x(Vector::Constant(5, 0.5));
    const auto f = evaluate_true(spec, x, budget);
    EXPECT_EQ(f, evaluate(spec, x.coords()));
    (void)evaluate_true(spec, x, budget);
    EXPECT_EQ(budget.consumed(), 2u);
    EXPECT_TRUE(budget.exhausted());
    EXPECT_THROW((void)evaluate_true(spec, x, budget), BudgetExhausted);
    EXPECT_EQ(budget.consumed(), 2u);

    EvaluationBudget other(5);
    EXPECT_THROW((void)evaluate_true(spec, DecisionVector(Vector::Constant(5, 1.5)), other), ContractViolation);
}

TEST(Problems, Zdt3FrontSamplesLieOnCurveAndAreNondominated)
{
    const auto spec = problem_from_id("zdt3", 10);
    RandomSource rng(1);
    const auto pf = sample_true_pf(spec, 1000, rng);
    ASSERT_EQ(pf.size(), 1000u);
    for (const auto& s : pf) {
        const double f1 = s.f()[0];
        EXPECT_NEAR(s.f()[1], 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * std::numbers::pi * f1), 1e-12);
    }
    EXPECT_EQ(nondominated_filter(pf).size(), pf.size());
}

TEST(Problems, Dtlz2FrontOnUnitSphere)
{
    const auto spec = problem_from_id("dtlz2", 10, 3);
    RandomSource rng(1);
    for (const auto& s : sample_true_pf(spec, 500, rng)) {
        EXPECT_NEAR(s.f().values().squaredNorm(), 1.0, 1e-9);
        EXPECT_TRUE((s.f().values().array() >= 0.0).all());
    }
}

TEST(Problems, CountSegmentsExamples)
{
    Population two;
    for (int i = 0; i <= 10; ++i) {
        two.append(front_of({{0.01 * i, 1.0 - 0.01 * i}}));
        two.append(front_of({{0.9 + 0.01 * i, 0.1 - 0.01 * i}}));
    }
    EXPECT_EQ(count_segments(two, 5.0), 2);

    Population one;
    for (int i = 0; i <= 50; ++i) {
        one.append(front_of({{0.02 * i, 1.0 - 0.02 * i}}));
    }
    EXPECT_EQ(count_segments(one, 5.0), 1);
    EXPECT_EQ(count_segments(front_of({{0.5, 0.5}}), 5.0), 1);
}

TEST(Problems, ClassicZdt3HasFiveSegments)
{
    const auto spec = problem_from_id("zdt3", 10);
    RandomSource rng(1);
    EXPECT_EQ(count_segments(sample_true_pf(spec, 1000, rng), 5.0), 5);
}

TEST(Problems, SegmentCoverageCountsTouchedSegments)
{
    const auto spec = problem_from_id("zdt3", 10);
    RandomSource rng(1);
    const auto pf = sample_true_pf(spec, 1000, rng).objective_vectors();
    const auto all = segment_coverage(pf, pf);
    EXPECT_EQ(all.total, 5);
    EXPECT_EQ(all.covered, 5);
    const std::vector<Vector> one{pf.front()};
    EXPECT_EQ(segment_coverage(one, pf).covered, 1);
    const std::vector<Vector> far{Vector{{5.0, 5.0}}};
    EXPECT_EQ(segment_coverage(far, pf).covered, 0);
}
