#pragma once

// An explicit set of n+2 points in l_4^n with only two distinct distances.
//
// For k >= 1 let a = (1+x, x, ..., x) and b = (y, ..., y) in R^k, where
// (x, y) solves
//
//     (1+x)^4 + (k-1) x^4     = k y^4
//     (1+x-y)^4 + (k-1)(x-y)^4 = 2,      y > 0.
//
// The k coordinate permutations of a together with b are k+1 points at
// mutual l_4 distance 2^(1/4), all with the same norm. Two such blocks placed
// in orthogonal coordinate subspaces give n+2 points in R^n.
//
// With f(t) = ((1+t)^4 + (k-1) t^4) / k)^(1/4) the system reads
// f(x) = |y|, f(x-y) = (2/k)^(1/4). The y > 0 solution has x - y = alpha_k,
// the negative root of f(t) = (2/k)^(1/4), and x the root of f(t) - t = -alpha_k.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpx/error.hpp"
#include "lpx/lpgeom.hpp"
#include "lpx/roots.hpp"
#include "lpx/summation.hpp"

namespace lpx {

struct ConstructionSolution {
    std::int64_t k = 0;
    double x = 0.0;
    double y = 0.0;
    double alpha_root = 0.0;
    double residual1 = 0.0;  // |(1+x)^4 + (k-1)x^4 - k y^4|
    double residual2 = 0.0;  // |(1+x-y)^4 + (k-1)(x-y)^4 - 2|
    double f_at_alpha_residual = 0.0;
};

/// The other solution of the system (x - y = beta_k > 0, y < 0). Computed
/// for diagnostics only; it does not give a usable configuration.
struct NegativeBranch {
    std::int64_t k = 0;
    double beta_root = 0.0;
    double x = 0.0;
    double y = 0.0;
    double residual1 = 0.0;
    double residual2 = 0.0;
};

struct ConstructionTolerances {
    double system_residual = 1e-10;
    double f_residual = 1e-12;
};

namespace detail {

inline void require_k(std::int64_t k) { require(k >= 1, "block size k must be >= 1"); }

// (1+t)^4 + (k-1) t^4
inline double block_quartic(double t, std::int64_t k) {
    CompensatedSum s;
    s += pow4(1.0 + t);
    s += static_cast<double>(k - 1) * pow4(t);
    return s.value();
}

inline double block_quartic_derivative(double t, std::int64_t k) {
    const double u = 1.0 + t;
    return 4.0 * (u * u * u) + 4.0 * static_cast<double>(k - 1) * (t * t * t);
}

// (1+x)^4 + (k-1)x^4 - k (x - shift)^4, zero exactly when f(x) = |x - shift|
inline double paired_quartic(double x, double shift, std::int64_t k) {
    CompensatedSum s;
    s += pow4(1.0 + x);
    s += static_cast<double>(k - 1) * pow4(x);
    s -= static_cast<double>(k) * pow4(x - shift);
    return s.value();
}

inline double paired_quartic_derivative(double x, double shift, std::int64_t k) {
    const double u = 1.0 + x;
    const double v = x - shift;
    return 4.0 * (u * u * u) + 4.0 * static_cast<double>(k - 1) * (x * x * x) -
           4.0 * static_cast<double>(k) * (v * v * v);
}

inline double system_residual1(double x, double y, std::int64_t k) {
    CompensatedSum s;
    s += pow4(1.0 + x);
    s += static_cast<double>(k - 1) * pow4(x);
    s -= static_cast<double>(k) * pow4(y);
    return std::abs(s.value());
}

inline double system_residual2(double x, double y, std::int64_t k) {
    const double d = x - y;
    CompensatedSum s;
    s += pow4(1.0 + d);
    s += static_cast<double>(k - 1) * pow4(d);
    s -= 2.0;
    return std::abs(s.value());
}

}  // namespace detail

/// f(t) = (((1+t)^4 + (k-1) t^4) / k)^(1/4).
inline double f_eval(double t, std::int64_t k) {
    detail::require_k(k);
    detail::require(std::isfinite(t), "f_eval: t must be finite");
    return std::sqrt(std::sqrt(detail::block_quartic(t, k) / static_cast<double>(k)));
}

/// The unique negative root alpha_k of f(t) = (2/k)^(1/4); alpha_k < -k^(-1/4).
inline double solve_alpha(std::int64_t k, const RootOptions& opts = {}) {
    detail::require_k(k);
    auto excess = [k](double t) { return detail::block_quartic(t, k) - 2.0; };
    // f(t) >= |1+t| ((k-1)/k)^(1/4) for t < -1 puts the root above -1 - 2^(1/4)
    // for every k; widening only triggers when rounding lands on the root (k = 1).
    Bracket br{-1.0 - std::sqrt(std::sqrt(2.0)), -1.0 / std::sqrt(std::sqrt(static_cast<double>(k)))};
    br = widen(br, true, [&](double t) { return excess(t) > 0.0; });
    br = bisect(excess, br, opts);
    const double alpha = newton_polish(
        excess, [k](double t) { return detail::block_quartic_derivative(t, k); }, br, opts);
    if (!(alpha < -1.0 / std::sqrt(std::sqrt(static_cast<double>(k)))))
        throw NumericalBreakdown("solve_alpha: root not below -k^(-1/4) for k = " + std::to_string(k));
    return alpha;
}

/// The unique positive root beta_k of f(t) = (2/k)^(1/4); beta_k < k^(-1/4).
inline double solve_beta(std::int64_t k, const RootOptions& opts = {}) {
    detail::require_k(k);
    auto excess = [k](double t) { return detail::block_quartic(t, k) - 2.0; };
    Bracket br{0.0, 1.0 / std::sqrt(std::sqrt(static_cast<double>(k)))};
    br = bisect(excess, br, opts);
    return newton_polish(excess, [k](double t) { return detail::block_quartic_derivative(t, k); }, br, opts);
}

/// The solution (x_k, y_k) of the system with y_k > 0.
inline ConstructionSolution solve_system(std::int64_t k, const RootOptions& opts = {},
                                         const ConstructionTolerances& tol = {}) {
    detail::require_k(k);
    const double alpha = solve_alpha(k, opts);
    // f(t) - t is strictly decreasing; find where it equals -alpha.
    auto gap = [k, alpha](double t) { return f_eval(t, k) - t + alpha; };
    Bracket br{-1.0, 0.0};
    br = widen(br, true, [&](double t) { return gap(t) > 0.0; });
    br = bisect(gap, br, opts);
    const double x = newton_polish([k, alpha](double t) { return detail::paired_quartic(t, alpha, k); },
                                   [k, alpha](double t) { return detail::paired_quartic_derivative(t, alpha, k); },
                                   br, opts);

    ConstructionSolution s;
    s.k = k;
    s.x = x;
    s.y = x - alpha;
    s.alpha_root = alpha;
    s.residual1 = detail::system_residual1(s.x, s.y, k);
    s.residual2 = detail::system_residual2(s.x, s.y, k);
    s.f_at_alpha_residual = std::abs(f_eval(alpha, k) - std::sqrt(std::sqrt(2.0 / static_cast<double>(k))));

    const std::string at = " (k = " + std::to_string(k) + ")";
    if (!(s.x < 0.0 && s.y > 0.0)) throw NumericalBreakdown("solve_system: expected x < 0 < y" + at);
    if (!(s.residual1 <= tol.system_residual && s.residual2 <= tol.system_residual))
        throw NumericalBreakdown("solve_system: residual above tolerance" + at);
    if (!(s.f_at_alpha_residual <= tol.f_residual))
        throw NumericalBreakdown("solve_system: f(alpha) residual above tolerance" + at);
    return s;
}

inline NegativeBranch solve_negative_branch(std::int64_t k, const RootOptions& opts = {}) {
    detail::require_k(k);
    const double beta = solve_beta(k, opts);
    // f(t) + t is strictly increasing; find where it equals beta.
    auto gap = [k, beta](double t) { return f_eval(t, k) + t - beta; };
    Bracket br = bisect(gap, {-1.0, 0.0}, opts);
    const double x = newton_polish([k, beta](double t) { return detail::paired_quartic(t, beta, k); },
                                   [k, beta](double t) { return detail::paired_quartic_derivative(t, beta, k); },
                                   br, opts);
    NegativeBranch b;
    b.k = k;
    b.beta_root = beta;
    b.x = x;
    b.y = x - beta;
    b.residual1 = detail::system_residual1(b.x, b.y, k);
    b.residual2 = detail::system_residual2(b.x, b.y, k);
    return b;
}

/// The k coordinate permutations of (1+x, x, ..., x), then (y, ..., y).
inline std::vector<std::vector<double>> block_vectors(const ConstructionSolution& s) {
    const auto k = static_cast<std::size_t>(s.k);
    std::vector<std::vector<double>> out;
    out.reserve(k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<double> a(k, s.x);
        a[i] = 1.0 + s.x;
        out.push_back(std::move(a));
    }
    out.emplace_back(k, s.y);
    return out;
}

/// ||a||_4^4 = k y^4 for a block built from `s`.
inline double block_norm_fourth(const ConstructionSolution& s) {
    return static_cast<double>(s.k) * pow4(s.y);
}

struct BuiltConfiguration {
    std::int64_t n = 0;
    Configuration config;
    double expected_ratio = 0.0;
    ConstructionSolution first_block;
    std::optional<ConstructionSolution> second_block;  // odd n only: the k+1 block
};

namespace detail {

inline void require_build_dimension(std::int64_t n) {
    require(n >= 2, "construction needs n >= 2");
}

// 2^(1/4) within a block; (||a||^4 + ||a'||^4)^(1/4) across blocks.
inline double two_block_ratio(const ConstructionSolution& s1, const ConstructionSolution& s2) {
    const double cross4 = block_norm_fourth(s1) + block_norm_fourth(s2);
    return std::sqrt(std::sqrt(2.0 / cross4));
}

}  // namespace detail

/// max/min distance of the n-point construction, from the solved blocks alone.
inline double construction_ratio(std::int64_t n) {
    detail::require_build_dimension(n);
    const std::int64_t k = n / 2;
    const ConstructionSolution s1 = solve_system(k);
    if (n % 2 == 0) return 1.0 / (std::sqrt(std::sqrt(static_cast<double>(k))) * s1.y);
    return detail::two_block_ratio(s1, solve_system(k + 1));
}

inline BuiltConfiguration build_configuration(std::int64_t n) {
    detail::require_build_dimension(n);
    const std::int64_t k = n / 2;
    const ConstructionSolution s1 = solve_system(k);
    std::optional<ConstructionSolution> s2;
    if (n % 2 == 1) s2 = solve_system(k + 1);

    const auto left = block_vectors(s1);
    const auto right = block_vectors(s2 ? *s2 : s1);
    const std::size_t dl = static_cast<std::size_t>(k);
    const std::size_t dim = static_cast<std::size_t>(n);

    std::vector<Point> pts;
    pts.reserve(left.size() + right.size());
    for (const auto& a : left) {
        std::vector<double> c(dim, 0.0);
        std::copy(a.begin(), a.end(), c.begin());
        pts.emplace_back(std::move(c));
    }
    for (const auto& a : right) {
        std::vector<double> c(dim, 0.0);
        std::copy(a.begin(), a.end(), c.begin() + static_cast<std::ptrdiff_t>(dl));
        pts.emplace_back(std::move(c));
    }

    const double expected = s2 ? detail::two_block_ratio(s1, *s2)
                               : 1.0 / (std::sqrt(std::sqrt(static_cast<double>(k))) * s1.y);
    return BuiltConfiguration{n, Configuration(std::move(pts), 4.0), expected, s1, s2};
}

}  // namespace lpx
