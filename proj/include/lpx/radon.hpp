#pragma once

// Radon partitions of n+2 points in R^n and the per-instance lower bound
//
//     (M/mu)^4 >= 2 / (2 - sum alpha_i^2 - sum beta_j^2)
//
// that the weights of a partition give in l_4^n, together with a numerical
// audit of the fourth-moment inequalities the bound is assembled from.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lpx/bounds.hpp"
#include "lpx/error.hpp"
#include "lpx/linalg.hpp"
#include "lpx/lpgeom.hpp"
#include "lpx/summation.hpp"

namespace lpx {

struct RadonOptions {
    // max deviation of either weighted sum from the common point, measured
    // after centering and scaling the input to unit max coordinate
    double residual_tol = 1e-10;
};

struct RadonCertificate {
    std::vector<std::size_t> side_a;
    std::vector<std::size_t> side_b;
    std::vector<double> alphas;
    std::vector<double> betas;
    Point common_point;
    double certificate = 0.0;
    double residual = 0.0;
    std::size_t nullity = 0;
    double pivot_ratio = 1.0;
};

namespace detail {

inline double weights_sum_squares(std::span<const double> alphas, std::span<const double> betas) {
    CompensatedSum s;
    for (double a : alphas) s += a * a;
    for (double b : betas) s += b * b;
    return s.value();
}

}  // namespace detail

/// Splits m = n+2 points of R^n into two parts whose convex hulls share a
/// point. Indices with a zero dependence coefficient are put on side B with
/// weight 0, so |A| + |B| = m always holds.
inline RadonCertificate radon_partition(std::span<const Point> points, const RadonOptions& opts = {}) {
    detail::require(points.size() >= 3, "radon_partition: need at least 3 points");
    const std::size_t m = points.size();
    const std::size_t n = points.front().dim();
    for (const auto& p : points) detail::require(p.dim() == n, "radon_partition: points must share one dimension");
    detail::require(m == n + 2, "radon_partition: need exactly n+2 points in R^n (got " + std::to_string(m) +
                                    " points in R^" + std::to_string(n) + ")");

    // Center and scale; the affine dependence is invariant under both.
    std::vector<double> centroid(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        CompensatedSum s;
        for (const auto& p : points) s += p[c];
        centroid[c] = s.value() / static_cast<double>(m);
    }
    double scale = 0.0;
    for (const auto& p : points)
        for (std::size_t c = 0; c < n; ++c) scale = std::max(scale, std::abs(p[c] - centroid[c]));
    detail::require(scale > 0.0, "radon_partition: all points coincide");

    DenseMatrix sys(n + 1, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < n; ++c) sys(c, i) = (points[i][c] - centroid[c]) / scale;
        sys(n, i) = 1.0;
    }
    const NullVector nv = null_vector(std::move(sys));
    const auto& lambda = nv.values;

    std::vector<std::size_t> side_a;
    std::vector<std::size_t> side_b;
    CompensatedSum pos;
    CompensatedSum neg;
    for (std::size_t i = 0; i < m; ++i) {
        if (lambda[i] > 0.0) {
            side_a.push_back(i);
            pos += lambda[i];
        } else {
            side_b.push_back(i);
            neg -= lambda[i];
        }
    }
    if (side_a.empty() || pos.value() <= 0.0 || neg.value() <= 0.0)
        throw NumericalBreakdown("radon_partition: dependence vector has no sign change (pivot ratio " +
                                 std::to_string(nv.pivot_ratio) + ")");

    std::vector<double> alphas;
    std::vector<double> betas;
    for (std::size_t i : side_a) alphas.push_back(lambda[i] / pos.value());
    for (std::size_t j : side_b) betas.push_back(-lambda[j] / neg.value());

    std::vector<double> common(n);
    double residual = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        CompensatedSum sa;
        CompensatedSum sb;
        for (std::size_t i = 0; i < side_a.size(); ++i) sa += alphas[i] * (points[side_a[i]][c] - centroid[c]) / scale;
        for (std::size_t j = 0; j < side_b.size(); ++j) sb += betas[j] * (points[side_b[j]][c] - centroid[c]) / scale;
        const double mid = 0.5 * (sa.value() + sb.value());
        residual = std::max(residual, 0.5 * std::abs(sa.value() - sb.value()));
        common[c] = centroid[c] + scale * mid;
    }
    if (!(residual <= opts.residual_tol))
        throw NumericalBreakdown("radon_partition: weighted-sum residual " + std::to_string(residual) +
                                 " exceeds tolerance (rank " + std::to_string(nv.rank) + ", pivot ratio " +
                                 std::to_string(nv.pivot_ratio) + ")");

    const double ssq = detail::weights_sum_squares(alphas, betas);
    RadonCertificate cert{std::move(side_a), std::move(side_b), std::move(alphas), std::move(betas),
                          Point(std::move(common)), 2.0 / (2.0 - ssq), residual, nv.nullity, nv.pivot_ratio};
    return cert;
}

inline RadonCertificate radon_partition(const Configuration& c, const RadonOptions& opts = {}) {
    return radon_partition(std::span<const Point>(c.points()), opts);
}

/// 2 / (2 - sum alpha^2 - sum beta^2), after checking that the weights form
/// two convex combinations over a partition of the index set.
inline double certificate_bound(const RadonCertificate& cert) {
    detail::require(!cert.side_a.empty() && !cert.side_b.empty(), "certificate: both sides must be non-empty");
    detail::require(cert.alphas.size() == cert.side_a.size() && cert.betas.size() == cert.side_b.size(),
                    "certificate: weight count does not match side size");
    const std::size_t m = cert.side_a.size() + cert.side_b.size();
    std::vector<bool> seen(m, false);
    for (auto side : {&cert.side_a, &cert.side_b}) {
        for (std::size_t i : *side) {
            detail::require(i < m && !seen[i], "certificate: sides must partition 0..m-1");
            seen[i] = true;
        }
    }
    CompensatedSum sa;
    CompensatedSum sb;
    for (double a : cert.alphas) {
        detail::require(std::isfinite(a) && a >= 0.0, "certificate: weights must be finite and non-negative");
        sa += a;
    }
    for (double b : cert.betas) {
        detail::require(std::isfinite(b) && b >= 0.0, "certificate: weights must be finite and non-negative");
        sb += b;
    }
    detail::require(std::abs(sa.value() - 1.0) <= 1e-12 && std::abs(sb.value() - 1.0) <= 1e-12,
                    "certificate: each side's weights must sum to 1");
    const double ssq = detail::weights_sum_squares(cert.alphas, cert.betas);
    if (!(ssq < 2.0))
        throw NumericalBreakdown("certificate: sum of squared weights reached 2");
    return 2.0 / (2.0 - ssq);
}

/// Minimum of 2/(2 - 1/K - 1/L) over integer splits K + L = n + 2, K, L >= 1,
/// by enumeration. This is the weakest value certificate_bound can return
/// for n+2 points, since sum alpha^2 >= 1/K and sum beta^2 >= 1/L.
inline Fraction min_split_certificate(std::int64_t n) {
    detail::require(n >= 1 && n <= 1'000'000'000, "min_split_certificate: n out of range");
    Fraction best{std::numeric_limits<std::int64_t>::max(), 1};
    for (std::int64_t k = 1; k <= n + 1; ++k) {
        const std::int64_t l = n + 2 - k;
        // 2 / (2 - 1/K - 1/L) = 2KL / (2KL - K - L); reduced once at the end
        const Fraction v{2 * k * l, 2 * k * l - k - l};
        if (v < best) best = v;
    }
    return Fraction::make(best.num, best.den);
}

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double scale = 1.0;  // magnitude the slack tolerance is relative to
    bool holds = false;
};

struct AuditOptions {
    double slack_tol = 1e-9;
};

/// Both sides of each step of the chain, evaluated on the points translated
/// so that the common point of the partition is the origin.
struct ChainAudit {
    // (1 - sum alpha^2) M^4 >= 2 sum_m sum_i alpha_i a_im^4 + 6 sum_m (sum_i alpha_i a_im^2)^2
    InequalityCheck within_a;
    // the same for side B with the beta weights
    InequalityCheck within_b;
    // sum alpha a^4 + sum beta b^4 >= mu^4 - 6 sum_m (sum alpha a^2)(sum beta b^2)
    InequalityCheck across;
    // (2 - sum alpha^2 - sum beta^2) M^4 >= 2 mu^4 + 6 * square_slack
    InequalityCheck summed;
    // M^4 / mu^4 >= 2 / (2 - sum alpha^2 - sum beta^2)
    InequalityCheck ratio;

    double square_slack = 0.0;  // sum_m (sum alpha a_m^2 - sum beta b_m^2)^2 >= 0
    double max_fourth = 0.0;    // M^4
    double min_fourth = 0.0;    // mu^4
    double alpha_sq = 0.0;      // sum alpha^2
    double beta_sq = 0.0;       // sum beta^2
    double alpha_fourth_moment = 0.0;
    double beta_fourth_moment = 0.0;
    double alpha_second_moment_sq = 0.0;
    double beta_second_moment_sq = 0.0;
    double cross_second_moment = 0.0;

    [[nodiscard]] bool all_hold() const {
        return within_a.holds && within_b.holds && across.holds && summed.holds && ratio.holds;
    }
};

namespace detail {

inline double fourth_power_distance(const Point& u, const Point& v) {
    CompensatedSum s;
    for (std::size_t c = 0; c < u.dim(); ++c) s += pow4(u[c] - v[c]);
    return s.value();
}

inline InequalityCheck check(double lhs, double rhs, double scale, double tol) {
    return {lhs, rhs, scale, lhs >= rhs - tol * scale};
}

}  // namespace detail

/// Evaluates every inequality of the chain without throwing on violation.
inline ChainAudit evaluate_chain(const Configuration& config, const RadonCertificate& cert,
                                 const AuditOptions& opts = {}) {
    detail::require(config.p() == 4.0, "audit_chain: configuration must be in l_4 (p = 4)");
    detail::require(config.size() == config.dim() + 2, "audit_chain: need exactly n+2 points in R^n");
    detail::require(cert.side_a.size() + cert.side_b.size() == config.size(),
                    "audit_chain: certificate does not match configuration size");
    detail::require(cert.common_point.dim() == config.dim(), "audit_chain: common point dimension mismatch");
    const double bound = certificate_bound(cert);

    const std::size_t n = config.dim();
    const std::size_t m = config.size();
    ChainAudit out;

    out.max_fourth = 0.0;
    out.min_fourth = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (config[i] == config[j])
                throw PreconditionError("duplicate points at indices " + std::to_string(i) + " and " +
                                        std::to_string(j));
            const double d4 = detail::fourth_power_distance(config[i], config[j]);
            out.max_fourth = std::max(out.max_fourth, d4);
            out.min_fourth = std::min(out.min_fourth, d4);
        }
    }

    const auto& o = cert.common_point;
    auto moments = [&](const std::vector<std::size_t>& side, const std::vector<double>& w, double& fourth,
                       std::vector<double>& second) {
        CompensatedSum f;
        second.assign(n, 0.0);
        for (std::size_t c = 0; c < n; ++c) {
            CompensatedSum s2;
            for (std::size_t i = 0; i < side.size(); ++i) {
                const double x = config[side[i]][c] - o[c];
                const double x2 = x * x;
                s2 += w[i] * x2;
                f += w[i] * x2 * x2;
            }
            second[c] = s2.value();
        }
        fourth = f.value();
    };
    std::vector<double> a2;
    std::vector<double> b2;
    moments(cert.side_a, cert.alphas, out.alpha_fourth_moment, a2);
    moments(cert.side_b, cert.betas, out.beta_fourth_moment, b2);

    CompensatedSum aa;
    CompensatedSum bb;
    CompensatedSum ab;
    CompensatedSum sq;
    for (std::size_t c = 0; c < n; ++c) {
        aa += a2[c] * a2[c];
        bb += b2[c] * b2[c];
        ab += a2[c] * b2[c];
        sq += (a2[c] - b2[c]) * (a2[c] - b2[c]);
    }
    out.alpha_second_moment_sq = aa.value();
    out.beta_second_moment_sq = bb.value();
    out.cross_second_moment = ab.value();
    out.square_slack = sq.value();

    CompensatedSum alpha_sq;
    CompensatedSum beta_sq;
    for (double a : cert.alphas) alpha_sq += a * a;
    for (double b : cert.betas) beta_sq += b * b;
    out.alpha_sq = alpha_sq.value();
    out.beta_sq = beta_sq.value();

    const double scale = out.max_fourth;
    const double tol = opts.slack_tol;
    out.within_a = detail::check((1.0 - out.alpha_sq) * out.max_fourth,
                                 2.0 * out.alpha_fourth_moment + 6.0 * out.alpha_second_moment_sq, scale, tol);
    out.within_b = detail::check((1.0 - out.beta_sq) * out.max_fourth,
                                 2.0 * out.beta_fourth_moment + 6.0 * out.beta_second_moment_sq, scale, tol);
    out.across = detail::check(out.alpha_fourth_moment + out.beta_fourth_moment,
                               out.min_fourth - 6.0 * out.cross_second_moment, scale, tol);
    out.summed = detail::check((2.0 - out.alpha_sq - out.beta_sq) * out.max_fourth,
                               2.0 * out.min_fourth + 6.0 * out.square_slack, scale, tol);
    const double ratio4 = out.max_fourth / out.min_fourth;
    out.ratio = detail::check(ratio4, bound, ratio4, tol);
    return out;
}

/// As evaluate_chain, but a violated step is a NumericalBreakdown: every
/// step is a theorem, so a violation means broken numerics or a bad input.
inline ChainAudit audit_chain(const Configuration& config, const RadonCertificate& cert,
                              const AuditOptions& opts = {}) {
    ChainAudit audit = evaluate_chain(config, cert, opts);
    if (!audit.all_hold()) {
        std::string which;
        auto note = [&](const InequalityCheck& c, const char* name) {
            if (!c.holds) which += std::string(which.empty() ? "" : ", ") + name;
        };
        note(audit.within_a, "within_a");
        note(audit.within_b, "within_b");
        note(audit.across, "across");
        note(audit.summed, "summed");
        note(audit.ratio, "ratio");
        throw NumericalBreakdown("audit_chain: violated beyond tolerance: " + which);
    }
    return audit;
}

}  // namespace lpx
