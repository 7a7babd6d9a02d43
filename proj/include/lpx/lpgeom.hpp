#pragma once

// Points, p-norms and pairwise-distance summaries in R^n.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lpx/error.hpp"
#include "lpx/summation.hpp"

namespace lpx {

/// Relative tolerance used by equality-style checks unless overridden.
inline constexpr double kDefaultRelTol = 1e-9;

class Point {
public:
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
        detail::require(!coords_.empty(), "point must have at least one coordinate");
        for (double x : coords_)
            detail::require(std::isfinite(x), "point coordinates must be finite");
    }
    Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

    [[nodiscard]] std::size_t dim() const { return coords_.size(); }
    [[nodiscard]] std::span<const double> coords() const { return coords_; }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

namespace detail {

inline void require_exponent(double p) {
    require(std::isfinite(p) && p >= 1.0, "exponent p must be finite and >= 1");
}

inline double power_term(double r, double p) {
    if (p == 2.0) return r * r;
    if (p == 4.0) return pow4(r);
    return std::pow(r, p);
}

inline double root_term(double s, double p) {
    if (p == 2.0) return std::sqrt(s);
    if (p == 4.0) return std::sqrt(std::sqrt(s));
    return std::pow(s, 1.0 / p);
}

// (sum |get(i)|^p)^(1/p) for i < n, with the largest magnitude factored out
// so that no term overflows or underflows.
template <class Get>
double scaled_p_norm(std::size_t n, Get get, double p) {
    double vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) vmax = std::max(vmax, std::abs(get(i)));
    if (vmax == 0.0) return 0.0;
    CompensatedSum sum;
    if (p == 1.0) {
        for (std::size_t i = 0; i < n; ++i) sum += std::abs(get(i));
        return sum.value();
    }
    for (std::size_t i = 0; i < n; ++i) sum += power_term(std::abs(get(i)) / vmax, p);
    return vmax * root_term(sum.value(), p);
}

}  // namespace detail

/// (sum |v_i|^p)^(1/p). Rejects p < 1, infinite p, and non-finite entries.
inline double p_norm(std::span<const double> v, double p) {
    detail::require_exponent(p);
    for (double x : v) detail::require(std::isfinite(x), "p_norm: non-finite coordinate");
    return detail::scaled_p_norm(v.size(), [&](std::size_t i) { return v[i]; }, p);
}

inline double p_norm(const Point& v, double p) { return p_norm(v.coords(), p); }

inline double distance(const Point& u, const Point& v, double p) {
    detail::require(u.dim() == v.dim(), "distance: dimension mismatch (" + std::to_string(u.dim()) +
                                            " vs " + std::to_string(v.dim()) + ")");
    detail::require_exponent(p);
    const auto a = u.coords();
    const auto b = v.coords();
    return detail::scaled_p_norm(a.size(), [&](std::size_t i) { return a[i] - b[i]; }, p);
}

/// An ordered list of at least two points of common dimension, with the
/// exponent of the norm they are measured in.
class Configuration {
public:
    Configuration(std::vector<Point> points, double p) : points_(std::move(points)), p_(p) {
        detail::require(points_.size() >= 2, "configuration needs at least two points");
        detail::require_exponent(p_);
        const std::size_t n = points_.front().dim();
        for (const auto& pt : points_)
            detail::require(pt.dim() == n, "configuration points must share one dimension");
    }

    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] std::size_t dim() const { return points_.front().dim(); }
    [[nodiscard]] double p() const { return p_; }
    [[nodiscard]] const std::vector<Point>& points() const { return points_; }
    [[nodiscard]] const Point& operator[](std::size_t i) const { return points_[i]; }

    [[nodiscard]] Configuration with_exponent(double p) const { return {points_, p}; }

private:
    std::vector<Point> points_;
    double p_;
};

struct IndexPair {
    std::size_t first = 0;
    std::size_t second = 0;
    friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

struct RatioReport {
    double max_dist = 0.0;
    double min_dist = 0.0;
    double ratio = 0.0;
    IndexPair argmax_pair;
    IndexPair argmin_pair;
};

namespace detail {

// Calls visit(i, j, d) for every unordered pair i < j. Exactly coincident
// points are a precondition failure; near-coincident ones are not.
template <class Visit>
void for_each_pair_distance(const Configuration& c, Visit visit) {
    const std::size_t m = c.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (c[i] == c[j])
                throw PreconditionError("duplicate points at indices " + std::to_string(i) + " and " +
                                        std::to_string(j));
            visit(i, j, distance(c[i], c[j], c.p()));
        }
    }
}

}  // namespace detail

inline RatioReport ratio_report(const Configuration& c) {
    RatioReport r;
    r.min_dist = std::numeric_limits<double>::infinity();
    detail::for_each_pair_distance(c, [&](std::size_t i, std::size_t j, double d) {
        if (d > r.max_dist) {
            r.max_dist = d;
            r.argmax_pair = {i, j};
        }
        if (d < r.min_dist) {
            r.min_dist = d;
            r.argmin_pair = {i, j};
        }
    });
    r.ratio = r.max_dist / r.min_dist;
    return r;
}

struct EquilateralCheck {
    bool equilateral = false;
    std::optional<double> lambda;  // mean pairwise distance, set only when equilateral
    double max_dist = 0.0;
    double min_dist = 0.0;
};

/// Equilateral when (max - min) <= tol * max over all pairwise distances.
inline EquilateralCheck is_equilateral(const Configuration& c, double tol = kDefaultRelTol) {
    detail::require(tol >= 0.0, "tolerance must be non-negative");
    EquilateralCheck out;
    out.min_dist = std::numeric_limits<double>::infinity();
    CompensatedSum total;
    std::size_t pairs = 0;
    detail::for_each_pair_distance(c, [&](std::size_t, std::size_t, double d) {
        out.max_dist = std::max(out.max_dist, d);
        out.min_dist = std::min(out.min_dist, d);
        total += d;
        ++pairs;
    });
    out.equilateral = (out.max_dist - out.min_dist) <= tol * out.max_dist;
    if (out.equilateral) out.lambda = total.value() / static_cast<double>(pairs);
    return out;
}

}  // namespace lpx
