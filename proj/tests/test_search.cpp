#include <gtest/gtest.h>

#include <cmath>

#include "lpx/bounds.hpp"
#include "lpx/construct.hpp"
#include "lpx/radon.hpp"
#include "lpx/search.hpp"

namespace lpx {
namespace {

TEST(SplitSeed, DistinctStreams) {
    EXPECT_NE(detail::split_seed(1, 0), detail::split_seed(1, 1));
    EXPECT_NE(detail::split_seed(1, 0), detail::split_seed(2, 0));
    EXPECT_EQ(detail::split_seed(5, 3), detail::split_seed(5, 3));
}

TEST(MinimizeRatio, ReproducibleForFixedSeed) {
    const auto a = minimize_ratio(3, 3000, {}, 42);
    const auto b = minimize_ratio(3, 3000, {}, 42);
    EXPECT_EQ(a.best_ratio, b.best_ratio);
    EXPECT_EQ(a.best_config.points(), b.best_config.points());
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(MinimizeRatio, ThreadCountDoesNotChangeResult) {
    SearchOptions one;
    SearchOptions four;
    four.threads = 4;
    const auto a = minimize_ratio(3, 2000, {}, 9, one);
    const auto b = minimize_ratio(3, 2000, {}, 9, four);
    EXPECT_EQ(a.best_ratio, b.best_ratio);
    EXPECT_EQ(a.best_config.points(), b.best_config.points());
}

TEST(MinimizeRatio, NonIncreasingInBudget) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::int64_t budget : {40, 200, 1000, 5000}) {
        const auto r = minimize_ratio(2, budget, {}, 3);
        EXPECT_LE(r.best_ratio, prev) << budget;
        prev = r.best_ratio;
    }
}

TEST(MinimizeRatio, SquareIsFoundInThePlane) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto r = minimize_ratio(2, 10000, {}, seed);
        EXPECT_GE(r.best_ratio, std::pow(2.0, 0.25) - 1e-9);
        EXPECT_LE(r.best_ratio, std::pow(2.0, 0.25) + 1e-3);
        EXPECT_NEAR(r.gap, r.best_ratio - r.bound, 1e-15);
    }
}

TEST(MinimizeRatio, FourDimensionsSitBetweenBoundAndConstruction) {
    const auto r = minimize_ratio(4, 4000, {}, 11);
    EXPECT_GE(r.best_ratio, schuette_bound(4, 4.0) - 1e-9);
    EXPECT_LE(r.best_ratio, construction_ratio(4) + 1e-12);
}

TEST(MinimizeRatio, BestConfigurationPassesAudit) {
    const auto r = minimize_ratio(3, 2000, {}, 5);
    EXPECT_NEAR(ratio_report(r.best_config).ratio, r.best_ratio, 1e-12);
    const auto audit = audit_chain(r.best_config, radon_partition(r.best_config));
    EXPECT_TRUE(audit.all_hold());
}

TEST(MinimizeRatio, ExplicitSeedsAreUsed) {
    const auto seed = build_configuration(2).config;
    const auto r = minimize_ratio(2, 1, {seed}, 0);
    EXPECT_EQ(r.restarts, 1);
    EXPECT_EQ(r.evaluations, 1);
    EXPECT_NEAR(r.best_ratio, construction_ratio(2), 1e-12);
}

TEST(MinimizeRatio, Preconditions) {
    EXPECT_THROW(minimize_ratio(1, 100, {}, 0), PreconditionError);
    EXPECT_THROW(minimize_ratio(2, 0, {}, 0), PreconditionError);
    const Configuration wrong({Point{0.0, 0.0, 0.0}, Point{1.0, 0.0, 0.0}, Point{0.0, 1.0, 0.0}}, 4.0);
    EXPECT_THROW(minimize_ratio(2, 100, {wrong}, 0), PreconditionError);
    SearchOptions bad;
    bad.step_decay = 1.0;
    EXPECT_THROW(minimize_ratio(2, 100, {}, 0, bad), PreconditionError);
}

}  // namespace
}  // namespace lpx
