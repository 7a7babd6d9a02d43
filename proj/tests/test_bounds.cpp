#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lpx/bounds.hpp"
#include "lpx/lpgeom.hpp"
#include "test_support.hpp"

namespace lpx {
namespace {

TEST(SchuetteBound, SmallCases) {
    EXPECT_NEAR(schuette_bound(2, 4.0), std::pow(2.0, 0.25), 1e-15);
    EXPECT_NEAR(schuette_bound(2, 2.0), std::sqrt(2.0), 1e-15);
    // 1 + 2/(3 - 1/5) = 12/7; value from 50-digit evaluation
    EXPECT_NEAR(schuette_bound(3, 4.0), 1.1442496849097028646, 1e-15);
    EXPECT_NEAR(schuette_bound(4, 4.0), std::pow(1.5, 0.25), 1e-15);
}

TEST(SchuetteBound, RejectsOtherExponents) {
    EXPECT_THROW(schuette_bound(3, 3.0), PreconditionError);
    EXPECT_THROW(schuette_bound(3, std::numeric_limits<double>::infinity()), PreconditionError);
    EXPECT_THROW(schuette_bound(0, 4.0), PreconditionError);
}

TEST(SchuetteBound, EvenCaseFourthPower) {
    for (std::int64_t n = 2; n <= 100000; n += 2) {
        const double b = schuette_bound(n, 4.0);
        const double b4 = (b * b) * (b * b);
        ASSERT_NEAR(b4 - 1.0 - 2.0 / static_cast<double>(n), 0.0, 4 * std::numeric_limits<double>::epsilon())
            << "n = " << n;
    }
}

TEST(SchuetteBound, OddCaseSitsBetweenNeighbours) {
    for (std::int64_t n = 3; n <= 2001; n += 2) {
        for (double p : {2.0, 4.0}) {
            EXPECT_LT(schuette_bound(n, p), schuette_bound(n - 1, p));
            EXPECT_GT(schuette_bound(n, p), schuette_bound(n + 1, p));
        }
    }
}

TEST(SchuetteBound, ExactRationalForm) {
    EXPECT_EQ(schuette_bound_power_exact(2), (Fraction{2, 1}));
    EXPECT_EQ(schuette_bound_power_exact(3), (Fraction{12, 7}));
    EXPECT_EQ(schuette_bound_power_exact(4), (Fraction{3, 2}));
    for (std::int64_t n = 1; n <= 500; ++n) {
        const double exact = schuette_bound_power_exact(n).to_double();
        const double ulps4 = 4 * std::numeric_limits<double>::epsilon() * exact;
        const double b = schuette_bound(n, 4.0);
        EXPECT_NEAR((b * b) * (b * b), exact, ulps4);
        const double c = schuette_bound(n, 2.0);
        EXPECT_NEAR(c * c, exact, ulps4);
    }
}

TEST(EpsilonThreshold, Values) {
    EXPECT_NEAR(epsilon_threshold(2, 4.0), 2.0, 1e-15);
    EXPECT_NEAR(epsilon_threshold(2, 2.0), 1.0, 1e-15);
    // 4 ln(1.2) / ln(12), 50-digit reference
    EXPECT_NEAR(epsilon_threshold(10, 4.0), 0.29348636788349267598, 1e-15);
    EXPECT_THROW(epsilon_threshold(5, 3.0), PreconditionError);
}

TEST(EpsilonThreshold, Asymptote) {
    const double n = 1e6;
    const double product = epsilon_threshold(1'000'000, 4.0) * n * std::log(n);
    EXPECT_NEAR(product, 7.9999908418945321293, 1e-9);
    EXPECT_LT(std::abs(product - 8.0), 0.08);
}

TEST(EpsilonThreshold, WindowForcesBoundAboveEquivalenceFactor) {
    // Inside the window the l_4 ratio of an l_p-equilateral set, at most
    // n^|1/4 - 1/p|, falls below the lower bound (1 + 2/n)^(1/4).
    for (std::int64_t n : {2, 4, 10, 100, 1000}) {
        const double eps = epsilon_threshold(n, 4.0);
        for (double frac : {0.5, 0.9, 0.999}) {
            for (double sign : {-1.0, 1.0}) {
                const double p = 4.0 + sign * frac * eps;
                const double even_bound = std::pow(1.0 + 2.0 / static_cast<double>(n), 0.25);
                EXPECT_LT(norm_equivalence_factor(n, p), even_bound) << "n=" << n << " p=" << p;
            }
        }
    }
}

TEST(NormEquivalence, FactorValues) {
    EXPECT_DOUBLE_EQ(norm_equivalence_factor(7, 4.0), 1.0);
    EXPECT_NEAR(norm_equivalence_factor(16, 2.0), 2.0, 1e-15);
    EXPECT_NEAR(norm_equivalence_factor(81, std::numeric_limits<double>::infinity()), 3.0, 1e-15);
    EXPECT_THROW(norm_equivalence_factor(3, 0.5), PreconditionError);
}

TEST(NormEquivalence, TwoSidedInequality) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> pd(1.0, 16.0);
    for (int trial = 0; trial < 20000; ++trial) {
        const std::size_t n = 1 + trial % 12;
        const auto v = testing::random_vector(rng, n, -3.0, 3.0);
        const double p = pd(rng);
        const double n4 = p_norm(std::span<const double>(v), 4.0);
        const double np = p_norm(std::span<const double>(v), p);
        const double f = norm_equivalence_factor(static_cast<std::int64_t>(n), p);
        const double tol = 1e-12 * std::max(n4, np);
        if (p <= 4.0) {
            EXPECT_LE(n4, np + tol);
            EXPECT_LE(np, f * n4 + tol);
        } else {
            EXPECT_LE(np, n4 + tol);
            EXPECT_LE(n4, f * np + tol);
        }
    }
}

TEST(BoundTableTest, RowsDecreaseAndStayAboveOne) {
    for (double p : {2.0, 4.0}) {
        const auto t = bound_table(1, 300, p);
        ASSERT_EQ(t.rows.size(), 300u);
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            EXPECT_GT(t.rows[i].schuette_bound, 1.0);
            EXPECT_GT(t.rows[i].epsilon, 0.0);
            if (i > 0) {
                EXPECT_LT(t.rows[i].schuette_bound, t.rows[i - 1].schuette_bound);
            }
        }
    }
    EXPECT_THROW(bound_table(5, 4, 4.0), PreconditionError);
}

TEST(SchuetteBound, FuzzedConfigurationsRespectIt) {
    std::mt19937_64 rng(99);
    for (std::size_t n = 1; n <= 6; ++n) {
        const double bound = schuette_bound(static_cast<std::int64_t>(n), 4.0);
        for (int trial = 0; trial < 300; ++trial) {
            const auto c = testing::random_configuration(rng, n + 2, n);
            EXPECT_GE(ratio_report(c).ratio, bound - 1e-9);
        }
    }
}

}  // namespace
}  // namespace lpx
