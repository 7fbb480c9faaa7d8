#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dmi/batch.hpp"
#include "dmi/errors.hpp"
#include "dmi/selection.hpp"
#include "unit/oracles.hpp"

using namespace dmi;

namespace {

Population candidates_from(const std::vector<Vector>& objectives)
{
    Population p;
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        p.push_back(EvaluatedSolution(DecisionVector(Vector::Constant(2, static_cast<double>(i))),
                                      ObjectiveVector(objectives[i]), Source::SurrogatePrediction));
    }
    return p;
}

std::set<std::size_t> chosen_ids(const BatchSelection& s)
{
    std::set<std::size_t> ids;
    for (const auto& m : s.chosen) {
        ids.insert(static_cast<std::size_t>(m.x()[0]));
    }
    return ids;
}

void expect_valid_selection(const BatchSelection& s, const Population& c, std::size_t xi)
{
    EXPECT_EQ(s.chosen.size(), std::min(xi, c.size()));
    EXPECT_EQ(s.scores.size(), c.size());
    std::set<std::size_t> seen(s.ranking.begin(), s.ranking.end());
    EXPECT_EQ(seen.size(), s.ranking.size());
    for (auto i : s.ranking) {
        EXPECT_LT(i, c.size());
    }
    for (std::size_t a = 0; a < s.chosen.size(); ++a) {
        for (std::size_t b = a + 1; b < s.chosen.size(); ++b) {
            EXPECT_GT((s.chosen[a].x().coords() - s.chosen[b].x().coords()).norm(), 1e-6);
        }
    }
}

} // namespace

TEST(BatchIhv, ThreePointStaircase)
{
    const auto c = candidates_from({Vector{{1.0, 3.0}}, Vector{{2.0, 2.0}}, Vector{{3.0, 1.0}}});
    const auto s = select_ihv(c, 10);
    expect_valid_selection(s, c, 10);
    EXPECT_EQ(s.chosen.size(), 3u);
    const Vector ref = ihv_reference(c.objective_vectors());
    EXPECT_DOUBLE_EQ(ref[0], 3.2);
    EXPECT_NEAR(s.scores[1], 1.0, 1e-12);
}

TEST(BatchIhv, SingletonAndSmallSets)
{
    const auto one = candidates_from({Vector{{0.3, 0.4}}});
    const auto s = select_ihv(one, 10);
    ASSERT_EQ(s.chosen.size(), 1u);
    EXPECT_EQ(s.ranking, std::vector<std::size_t>{0});
    EXPECT_THROW(select_ihv(Population{}, 3), ContractViolation);
}

TEST(BatchIhv, DominatedPointsDoNotChangeChosenSet)
{
    RandomSource rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        auto front = oracle::random_front(rng, 15, 2);
        const auto base = select_ihv(candidates_from(front), 5);
        std::vector<Vector> augmented = front;
        // strictly inside the front's bounding box and dominated by a member
        augmented.push_back(front[0] + Vector::Constant(2, 1e-3));
        const auto with = select_ihv(candidates_from(augmented), 5);
        EXPECT_EQ(chosen_ids(base), chosen_ids(with));
    }
}

TEST(BatchIhv, OrderInvariantUpToTies)
{
    RandomSource rng(8);
    const auto front = oracle::random_front(rng, 20, 3);
    const auto base = select_ihv(candidates_from(front), 6);
    std::vector<Vector> reversed(front.rbegin(), front.rend());
    const auto rev = select_ihv(candidates_from(reversed), 6);
    std::set<std::size_t> mapped;
    for (auto i : chosen_ids(rev)) {
        mapped.insert(front.size() - 1 - i);
    }
    EXPECT_EQ(chosen_ids(base), mapped);
}

TEST(BatchNsga2, CandidatesOnRaysAssociateWithTheirRay)
{
    const auto weights = das_dennis_weights(2, 4, 3);
    std::vector<Vector> pts;
    for (const auto& w : weights.vectors) {
        pts.push_back(w / w.norm());
    }
    const auto c = candidates_from(pts);
    const auto s = select_nsga2_native(c, 5, weights);
    expect_valid_selection(s, c, 5);
    EXPECT_EQ(chosen_ids(s).size(), 5u);
    // nearest ray by brute-force angle equals the generating weight
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::size_t best = 0;
        double best_cos = -2.0;
        for (std::size_t w = 0; w < weights.size(); ++w) {
            const double cosine = pts[i].dot(weights.vectors[w]) / (pts[i].norm() * weights.vectors[w].norm());
            if (cosine > best_cos) {
                best_cos = cosine;
                best = w;
            }
        }
        EXPECT_EQ(best, i);
    }
}

TEST(BatchNsga2, BoundaryCandidatesFirst)
{
    RandomSource rng(5);
    const auto front = oracle::random_front(rng, 30, 2);
    const auto weights = das_dennis_weights(2, 99);
    const auto s = select_nsga2_native(candidates_from(front), 10, weights);
    std::size_t lo0 = 0;
    std::size_t lo1 = 0;
    for (std::size_t i = 1; i < front.size(); ++i) {
        lo0 = front[i][0] < front[lo0][0] ? i : lo0;
        lo1 = front[i][1] < front[lo1][1] ? i : lo1;
    }
    const std::set<std::size_t> head{s.ranking[0], s.ranking[1]};
    EXPECT_EQ(head, (std::set<std::size_t>{lo0, lo1}));
}

TEST(BatchNsga2, SingleSubregionIsPadded)
{
    std::vector<Vector> pts;
    for (int i = 0; i < 8; ++i) {
        const double t = 0.49 + 0.0025 * i;
        pts.push_back(Vector{{t, 1.0 - t}});
    }
    const auto weights = das_dennis_weights(2, 1, 2);  // two axis rays only
    const auto s = select_nsga2_native(candidates_from(pts), 4, weights);
    EXPECT_EQ(s.chosen.size(), 4u);
}

TEST(BatchIbea, DominatingPointFirst)
{
    const auto c = candidates_from({Vector{{0.5, 0.6}}, Vector{{0.1, 0.1}}, Vector{{0.6, 0.4}}, Vector{{0.9, 0.2}}});
    const auto s = select_ibea_native(c, 2, 0.05);
    expect_valid_selection(s, c, 2);
    EXPECT_EQ(s.ranking.front(), 1u);
}

TEST(BatchIbea, TwoPointOrderMatchesIndicator)
{
    // after min-max normalization with reference 1.1 a pair is either
    // {(0,1),(1,0)} or {(0,0),(1,1)}
    const auto box = [](const Vector& p) { return (Vector::Constant(2, 1.1) - p).prod(); };
    const auto indicator = [&](const Vector& a, const Vector& b) {
        if (oracle::dominates(a, b)) {
            return box(b) - box(a);
        }
        return box(b) - box(a.cwiseMax(b));
    };
    const auto fitness = [&](const Vector& self, const Vector& other) { return -std::exp(-indicator(other, self) / 0.05); };

    const Vector lo{{0.0, 1.0}};
    const Vector hi{{1.0, 0.0}};
    EXPECT_EQ(fitness(lo, hi), fitness(hi, lo));
    const auto tied = select_ibea_native(candidates_from({Vector{{0.2, 0.9}}, Vector{{0.6, 0.1}}}), 2, 0.05);
    EXPECT_EQ(tied.ranking, (std::vector<std::size_t>{0, 1}));
    EXPECT_NEAR(tied.scores[0], fitness(lo, hi), 1e-12);

    const Vector best = Vector::Zero(2);
    const Vector worst = Vector::Ones(2);
    EXPECT_GT(fitness(best, worst), fitness(worst, best));
    const auto ordered = select_ibea_native(candidates_from({Vector{{0.7, 0.8}}, Vector{{0.2, 0.3}}}), 2, 0.05);
    EXPECT_EQ(ordered.ranking, (std::vector<std::size_t>{1, 0}));
    EXPECT_NEAR(ordered.scores[1], fitness(best, worst), 1e-12);
    EXPECT_NEAR(ordered.scores[0], fitness(worst, best), 1e-12);
}

TEST(BatchMoead, SingleImprovedSubproblemFirst)
{
    const auto weights = das_dennis_weights(2, 2, 3);
    const Vector ideal = Vector::Zero(2);
    const auto c = candidates_from({Vector{{0.5, 0.5}}, Vector{{4.0, 0.2}}, Vector{{0.2, 4.0}}});
    const auto bests = subproblem_bests(c.objective_vectors(), weights, ideal);
    // middle weight: best member 0 scores 1.0 against a previous 2.0
    std::vector<double> previous = bests;
    previous[1] = 2.0 * bests[1];
    const auto s = select_moead_native(c, 1, weights, previous, ideal);
    EXPECT_EQ(s.ranking.front(), 0u);
    EXPECT_NEAR(s.scores[0], 0.5, 1e-12);
}

TEST(BatchMoead, NoImprovementStillTotalOrder)
{
    const auto weights = das_dennis_weights(2, 4, 3);
    const Vector ideal = Vector::Zero(2);
    RandomSource rng(6);
    const auto front = oracle::random_front(rng, 12, 2);
    const auto c = candidates_from(front);
    auto previous = subproblem_bests(c.objective_vectors(), weights, ideal);
    for (auto& p : previous) {
        p *= 0.5;
    }
    const auto s = select_moead_native(c, 3, weights, previous, ideal);
    expect_valid_selection(s, c, 3);
    EXPECT_EQ(s.ranking.size(), c.size());
}

TEST(BatchMoead, MatchesExhaustiveScan)
{
    const auto weights = das_dennis_weights(3, 4, 5);
    RandomSource rng(10);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pts = oracle::random_points(rng, 25, 3, 0.1, 1.0);
        const auto c = candidates_from(pts);
        const Vector ideal = Vector::Zero(3);
        std::vector<double> previous(weights.size());
        for (auto& p : previous) {
            p = rng.uniform(0.2, 1.0);
        }
        const auto s = select_moead_native(c, 4, weights, previous, ideal);

        std::vector<std::pair<double, std::size_t>> delta;
        std::vector<std::size_t> member(weights.size());
        for (std::size_t j = 0; j < weights.size(); ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                double g = 0.0;
                for (Eigen::Index k = 0; k < 3; ++k) {
                    g = std::max(g, pts[i][k] / std::max(weights.vectors[j][k], 1e-6));
                }
                if (g < best) {
                    best = g;
                    member[j] = i;
                }
            }
            delta.emplace_back((previous[j] - best) / previous[j], j);
        }
        std::stable_sort(delta.begin(), delta.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<std::size_t> expected;
        for (const auto& [d, j] : delta) {
            if (std::find(expected.begin(), expected.end(), member[j]) == expected.end()) {
                expected.push_back(member[j]);
            }
        }
        expected.resize(std::min<std::size_t>(4, expected.size()));
        EXPECT_EQ(std::vector<std::size_t>(s.ranking.begin(), s.ranking.begin() + static_cast<std::ptrdiff_t>(expected.size())),
                  expected);
    }
}

TEST(BatchSelection, NoDuplicateDecisionVectors)
{
    Population c;
    for (int i = 0; i < 6; ++i) {
        const double t = 0.1 * (i % 3);
        c.push_back(EvaluatedSolution(DecisionVector(Vector::Constant(2, t)), ObjectiveVector{t + 0.01 * i, 1.0 - t},
                                      Source::SurrogatePrediction));
    }
    const auto weights = das_dennis_weights(2, 9, 3);
    for (const auto& s : {select_ihv(c, 6), select_ibea_native(c, 6, 0.05), select_nsga2_native(c, 6, weights)}) {
        EXPECT_LE(s.chosen.size(), 3u);
        expect_valid_selection(s, c, std::min<std::size_t>(6, s.ranking.size()));
    }
}

TEST(BatchSelection, ParseSelector)
{
    EXPECT_EQ(parse_selector("ihv"), Selector::Ihv);
    EXPECT_EQ(selector_id(Selector::Native), "native");
    EXPECT_THROW(parse_selector("random"), ConfigError);
}
