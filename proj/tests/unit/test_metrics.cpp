#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "dmi/errors.hpp"
#include "dmi/hypervolume.hpp"
#include "unit/oracles.hpp"

using namespace dmi;

TEST(Hypervolume, Examples)
{
    EXPECT_DOUBLE_EQ(hypervolume(std::vector<Vector>{Vector{{0.5, 0.5}}}, Vector{{1.0, 1.0}}), 0.25);
    EXPECT_DOUBLE_EQ(hypervolume(std::vector<Vector>{Vector{{1.0, 2.0}}, Vector{{2.0, 1.0}}}, Vector{{3.0, 3.0}}), 3.0);
    EXPECT_DOUBLE_EQ(hypervolume(std::vector<Vector>{Vector{{0.0, 0.0, 0.0}}}, Vector{{1.0, 2.0, 3.0}}), 6.0);
    EXPECT_EQ(hypervolume(std::vector<Vector>{}, Vector{{1.0, 1.0}}), 0.0);
    EXPECT_EQ(hypervolume(std::vector<Vector>{Vector{{1.0, 0.5}}}, Vector{{1.0, 1.0}}), 0.0);
}

TEST(Hypervolume, FourObjectivesNotSupported)
{
    EXPECT_THROW(hypervolume(std::vector<Vector>{Vector::Zero(4)}, Vector::Ones(4)), NotSupported);
}

TEST(Hypervolume, MatchesMonteCarloIn3d)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        RandomSource rng(seed);
        auto front = oracle::random_front(rng, 30, 3);
        ASSERT_FALSE(front.empty());
        const Vector ref = Vector::Constant(3, 1.1);
        const double exact = hypervolume(front, ref);
        const double mc = oracle::monte_carlo_hv(front, Vector::Zero(3), ref, 1000000, seed + 100);
        EXPECT_NEAR(exact, mc, 0.005 * exact) << "seed " << seed;
    }
}

TEST(Hypervolume, MonotoneAndDominatedInvariant)
{
    RandomSource rng(21);
    for (std::size_t m : {2u, 3u}) {
        const Vector ref = Vector::Constant(static_cast<Eigen::Index>(m), 1.2);
        std::vector<Vector> pts;
        double previous = 0.0;
        for (const auto& p : oracle::random_points(rng, 40, m)) {
            pts.push_back(p);
            const double hv = hypervolume(pts, ref);
            EXPECT_GE(hv, previous - 1e-15);
            previous = hv;
        }
        std::vector<Vector> nd;
        for (auto i : oracle::nondominated(pts, [&] {
                 std::vector<std::size_t> all(pts.size());
                 std::iota(all.begin(), all.end(), std::size_t{0});
                 return all;
             }())) {
            nd.push_back(pts[i]);
        }
        EXPECT_NEAR(hypervolume(nd, ref), hypervolume(pts, ref), 1e-14);
    }
}

TEST(Hypervolume, ThreeDMatchesInclusionExclusion)
{
    const std::vector<Vector> pts{Vector{{0.0, 0.5, 0.5}}, Vector{{0.5, 0.0, 0.5}}};
    // boxes 1*0.5*0.5 each, overlap 0.5*0.5*0.5
    EXPECT_NEAR(hypervolume(pts, Vector::Ones(3)), 0.25 + 0.25 - 0.125, 1e-15);
}

TEST(Ihv, StaircaseContributions)
{
    const std::vector<Vector> pts{Vector{{1.0, 3.0}}, Vector{{2.0, 2.0}}, Vector{{3.0, 1.0}}};
    const auto c = ihv_contributions(pts, Vector{{4.0, 4.0}});
    for (double v : c) {
        EXPECT_DOUBLE_EQ(v, 1.0);
    }
}

TEST(Ihv, DuplicatesAndSingleton)
{
    const std::vector<Vector> dup{Vector{{1.0, 1.0}}, Vector{{1.0, 1.0}}};
    for (double v : ihv_contributions(dup, Vector{{2.0, 2.0}})) {
        EXPECT_EQ(v, 0.0);
    }
    const std::vector<Vector> one{Vector{{0.5, 0.25}}};
    EXPECT_DOUBLE_EQ(ihv_contributions(one, Vector{{1.0, 1.0}})[0], hypervolume(one, Vector{{1.0, 1.0}}));
}

TEST(Ihv, ContributionsNeverOvercount)
{
    RandomSource rng(2);
    for (std::size_t m : {2u, 3u}) {
        const auto pts = oracle::random_points(rng, 30, m);
        const Vector ref = Vector::Constant(static_cast<Eigen::Index>(m), 1.1);
        const auto c = ihv_contributions(pts, ref);
        double sum = 0.0;
        std::vector<std::size_t> all(pts.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        const auto nd = oracle::nondominated(pts, all);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            EXPECT_GE(c[i], 0.0);
            sum += c[i];
            if (std::find(nd.begin(), nd.end(), i) == nd.end()) {
                EXPECT_EQ(c[i], 0.0);
                continue;
            }
            std::vector<Vector> rest;
            for (auto j : nd) {
                if (j != i) {
                    rest.push_back(pts[j]);
                }
            }
            EXPECT_NEAR(c[i], hypervolume(pts, ref) - hypervolume(rest, ref), 1e-12);
        }
        EXPECT_LE(sum, hypervolume(pts, ref) + 1e-12);
    }
}

TEST(Reference, ExperimentRule)
{
    const std::vector<Vector> pf{Vector{{0.0, 1.0}}, Vector{{1.0, -0.5}}};
    const Vector ref = experiment_reference(pf);
    EXPECT_DOUBLE_EQ(ref[0], 1.1);
    EXPECT_DOUBLE_EQ(ref[1], 1.1);
    const std::vector<Vector> negative{Vector{{-2.0, -1.0}}, Vector{{-1.0, -1.0}}};
    const Vector r2 = experiment_reference(negative);
    EXPECT_DOUBLE_EQ(r2[0], -0.9);
    EXPECT_DOUBLE_EQ(r2[1], -0.9);
}
