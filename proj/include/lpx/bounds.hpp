#pragma once

// Closed-form lower bounds on the max/min distance ratio of n+2 points in
// l_2^n and l_4^n, and the exponent windows around p = 2 and p = 4 in which
// no equilateral set has more than n+1 points.

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "lpx/error.hpp"

namespace lpx {

/// Non-negative rational with a positive denominator, kept in lowest terms.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Fraction make(std::int64_t num, std::int64_t den) {
        detail::require(den > 0, "fraction denominator must be positive");
        const std::int64_t g = std::gcd(num, den);
        return {num / g, den / g};
    }

    [[nodiscard]] double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Fraction&, const Fraction&) = default;
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
        const auto lhs = static_cast<__int128>(a.num) * b.den;
        const auto rhs = static_cast<__int128>(b.num) * a.den;
        return lhs <=> rhs;
    }
};

namespace detail {

inline void require_dimension(std::int64_t n) { require(n >= 1, "dimension n must be >= 1"); }

inline void require_center(double p, const char* what) {
    require(p == 2.0 || p == 4.0, std::string(what) + ": p must be 2 or 4");
}

}  // namespace detail

/// Lower bound on max/min distance for n+2 points in l_p^n, p in {2, 4}:
/// (1 + 2/n)^(1/p) for even n, (1 + 2/(n - 1/(n+2)))^(1/p) for odd n.
inline double schuette_bound(std::int64_t n, double p) {
    detail::require_dimension(n);
    detail::require_center(p, "schuette_bound");
    const double nd = static_cast<double>(n);
    const double inc = (n % 2 == 0) ? 2.0 / nd : 2.0 / (nd - 1.0 / (nd + 2.0));
    return std::exp(std::log1p(inc) / p);
}

/// The same bound raised to the p-th power, as an exact rational. Identical
/// for p = 2 and p = 4.
inline Fraction schuette_bound_power_exact(std::int64_t n) {
    detail::require_dimension(n);
    detail::require(n <= 1'000'000'000, "schuette_bound_power_exact: n too large for 64-bit rationals");
    if (n % 2 == 0) return Fraction::make(n + 2, n);
    // 1 + 2(n+2)/(n(n+2) - 1)
    return Fraction::make(n * n + 4 * n + 3, n * n + 2 * n - 1);
}

/// Half-width of the exponent window around center_p (2 or 4) that forces
/// e(l_p^n) = n+1: center_p * ln(1 + 2/n) / ln(n + 2).
inline double epsilon_threshold(std::int64_t n, double center_p) {
    detail::require_dimension(n);
    detail::require_center(center_p, "epsilon_threshold");
    const double nd = static_cast<double>(n);
    return center_p * std::log1p(2.0 / nd) / std::log(nd + 2.0);
}

/// n^|1/4 - 1/p|, the constant comparing ||.||_4 and ||.||_p on R^n.
/// p = +infinity is accepted here as the limit 1/p -> 0.
inline double norm_equivalence_factor(std::int64_t n, double p) {
    detail::require_dimension(n);
    detail::require(!std::isnan(p) && p >= 1.0, "norm_equivalence_factor: p must be >= 1");
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    return std::pow(static_cast<double>(n), std::abs(0.25 - inv_p));
}

struct BoundRow {
    std::int64_t n = 0;
    double p = 0.0;
    double schuette_bound = 0.0;
    double epsilon = 0.0;
};

struct BoundTable {
    std::vector<BoundRow> rows;
};

inline BoundTable bound_table(std::int64_t n_first, std::int64_t n_last, double p) {
    detail::require_dimension(n_first);
    detail::require(n_last >= n_first, "bound_table: empty range");
    detail::require_center(p, "bound_table");
    BoundTable t;
    t.rows.reserve(static_cast<std::size_t>(n_last - n_first + 1));
    for (std::int64_t n = n_first; n <= n_last; ++n)
        t.rows.push_back({n, p, schuette_bound(n, p), epsilon_threshold(n, p)});
    return t;
}

}  // namespace lpx
