#pragma once

// Derivative-free minimization of the l_4 max/min distance ratio over sets
// of n+2 points in R^n.
//
// Each restart is a random walk: one point at a time is moved by i.i.d.
// Gaussian noise in every coordinate. Moves are judged on the power-mean
// ratio (mean d^q)^(1/q) / (mean d^-q)^(-1/q), which tends to max/min as
// q grows; q is tied to the step size so the walk sees a smooth landscape
// early and the true ratio late. The step grows on improvement and decays
// geometrically otherwise; worse moves pass with a Metropolis probability
// whose temperature cools with the step. The true ratio decides the best.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "lpx/bounds.hpp"
#include "lpx/construct.hpp"
#include "lpx/error.hpp"
#include "lpx/lpgeom.hpp"

namespace lpx {

struct SearchOptions {
    std::size_t random_seeds = 3;  // uniform [-1,1]^n starts added to the construction when seeding automatically
    double initial_step = 0.1;     // times the configuration diameter
    double step_growth = 1.5;      // on an improving move
    double step_decay = 0.97;      // on any other move
    double restart_step = 1e-8;    // reheat from the restart's best below this relative step
    double exponent_scale = 1.0;   // power-mean exponent q ~ min(max_exponent, exponent_scale / step)
    double max_exponent = 256.0;
    double initial_temperature = 1e-4; // Metropolis temperature at the initial step, relative to the ratio
    unsigned threads = 1;
};

struct SearchResult {
    Configuration best_config;
    double best_ratio = 0.0;
    double bound = 0.0;
    double gap = 0.0;
    std::int64_t restarts = 0;
    std::int64_t evaluations = 0;
    std::uint64_t rng_seed = 0;
};

namespace detail {

// splitmix64; per-restart seeds are splitmix64(rng_seed + index + 1).
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

using Coords = std::vector<std::vector<double>>;

inline Coords coords_of(const Configuration& c) {
    Coords out;
    for (const auto& p : c.points()) out.emplace_back(p.coords().begin(), p.coords().end());
    return out;
}

inline Configuration l4_config(const Coords& pts) {
    std::vector<Point> v;
    v.reserve(pts.size());
    for (const auto& p : pts) v.emplace_back(p);
    return {std::move(v), 4.0};
}

struct Evaluated {
    Coords pts;
    double ratio = std::numeric_limits<double>::infinity();
    double smooth = std::numeric_limits<double>::infinity();  // power-mean ratio at the current exponent
};

inline double power_mean_ratio(const std::vector<double>& d, double dmin, double dmax, double q) {
    CompensatedSum top;
    CompensatedSum bottom;
    for (double x : d) {
        top += std::pow(x / dmax, q);
        bottom += std::pow(dmin / x, q);
    }
    const double count = static_cast<double>(d.size());
    return (dmax / dmin) * std::pow(top.value() / count, 1.0 / q) * std::pow(bottom.value() / count, 1.0 / q);
}

// Centroid to the origin, minimum distance to 1. Coincident points give an
// infinite ratio.
inline Evaluated normalize_and_evaluate(Coords pts, double q) {
    const std::size_t n = pts.front().size();
    for (std::size_t c = 0; c < n; ++c) {
        CompensatedSum s;
        for (const auto& p : pts) s += p[c];
        const double mean = s.value() / static_cast<double>(pts.size());
        for (auto& p : pts) p[c] -= mean;
    }
    std::vector<double> d;
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    try {
        const Configuration c = l4_config(pts);
        for_each_pair_distance(c, [&](std::size_t, std::size_t, double x) {
            d.push_back(x);
            dmin = std::min(dmin, x);
            dmax = std::max(dmax, x);
        });
    } catch (const PreconditionError&) {
        return {std::move(pts)};
    }
    if (!(dmin > 0.0) || !std::isfinite(dmax / dmin)) return {std::move(pts)};
    for (auto& p : pts)
        for (auto& x : p) x /= dmin;
    const double smooth = power_mean_ratio(d, dmin, dmax, q);
    return {std::move(pts), dmax / dmin, smooth};
}

struct RestartOutcome {
    Evaluated best;
    std::int64_t evaluations = 0;
};

inline RestartOutcome run_restart(const Coords& seed, std::int64_t budget, std::uint64_t seed_value,
                                  const SearchOptions& opts) {
    RestartOutcome out;
    if (budget <= 0) return out;
    std::mt19937_64 rng(seed_value);
    std::uniform_int_distribution<std::size_t> pick(0, seed.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // step is relative to the diameter, which equals the ratio once normalized
    double step = opts.initial_step;
    // rounded down to a power of two so the current point is rescored rarely
    auto exponent = [&] {
        const double q = std::min(opts.max_exponent, opts.exponent_scale / step);
        return q <= 1.0 ? 1.0 : std::exp2(std::floor(std::log2(q)));
    };
    double q = exponent();
    Evaluated cur = normalize_and_evaluate(seed, q);
    out.evaluations = 1;
    out.best = cur;

    while (out.evaluations < budget) {
        if (step < opts.restart_step) {
            step = opts.initial_step;
            cur = out.best;
        }
        if (const double nq = exponent(); nq != q || !std::isfinite(cur.smooth)) {
            q = nq;
            if (std::isfinite(cur.ratio)) cur = normalize_and_evaluate(std::move(cur.pts), q);
        }
        const double scale = std::isfinite(cur.ratio) ? cur.ratio : 1.0;
        Coords cand = cur.pts;
        for (auto& x : cand[pick(rng)]) x += step * scale * gauss(rng);
        Evaluated next = normalize_and_evaluate(std::move(cand), q);
        ++out.evaluations;

        const double delta = next.smooth - cur.smooth;
        const double temperature = opts.initial_temperature * scale * (step / opts.initial_step);
        const double u = unit(rng);
        const bool improved = std::isfinite(next.ratio) && (delta < 0.0 || !std::isfinite(cur.ratio));
        const bool accept = improved || (std::isfinite(next.ratio) && temperature > 0.0 &&
                                         u < std::exp(-delta / temperature));
        if (next.ratio < out.best.ratio) out.best = next;
        if (accept) cur = std::move(next);
        step = improved ? std::min(opts.initial_step, step * opts.step_growth) : step * opts.step_decay;
    }
    return out;
}

}  // namespace detail

/// Automatic starting configurations: the explicit construction, then
/// `count` uniform random configurations in [-1,1]^n drawn from rng_seed.
inline std::vector<Configuration> auto_seeds(std::int64_t n, std::size_t count, std::uint64_t rng_seed) {
    std::vector<Configuration> seeds;
    seeds.push_back(build_configuration(n).config);
    std::mt19937_64 rng(detail::split_seed(rng_seed, 0xA5A5A5A5ULL));
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    const auto dim = static_cast<std::size_t>(n);
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < dim + 2; ++i) {
            std::vector<double> c(dim);
            for (auto& x : c) x = coord(rng);
            pts.emplace_back(std::move(c));
        }
        seeds.emplace_back(std::move(pts), 4.0);
    }
    return seeds;
}

/// Best configuration found within `budget` ratio evaluations, split evenly
/// over one restart per seed. Deterministic for fixed inputs regardless of
/// thread count. An empty `seeds` list means auto_seeds().
inline SearchResult minimize_ratio(std::int64_t n, std::int64_t budget, std::vector<Configuration> seeds,
                                   std::uint64_t rng_seed, const SearchOptions& opts = {}) {
    detail::require(n >= 2, "minimize_ratio: n must be >= 2");
    detail::require(budget >= 1, "minimize_ratio: budget must be >= 1");
    detail::require(opts.step_decay > 0.0 && opts.step_decay < 1.0 && opts.step_growth >= 1.0 &&
                        opts.initial_step > 0.0 && opts.max_exponent >= 1.0,
                    "minimize_ratio: invalid step schedule");
    if (seeds.empty()) seeds = auto_seeds(n, opts.random_seeds, rng_seed);
    const auto dim = static_cast<std::size_t>(n);
    for (const auto& s : seeds)
        detail::require(s.dim() == dim && s.size() == dim + 2,
                        "minimize_ratio: every seed must hold n+2 points in R^n");

    const auto restarts = static_cast<std::int64_t>(seeds.size());
    std::vector<detail::RestartOutcome> outcomes(seeds.size());
    auto work = [&](std::size_t i) {
        const std::int64_t share = budget / restarts + (static_cast<std::int64_t>(i) < budget % restarts ? 1 : 0);
        outcomes[i] = detail::run_restart(detail::coords_of(seeds[i]), share, detail::split_seed(rng_seed, i), opts);
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(seeds.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) work(i);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < seeds.size(); i += threads) work(i);
            });
    }

    // reduce by (ratio, restart index)
    std::size_t best = outcomes.size();
    std::int64_t evaluations = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        evaluations += outcomes[i].evaluations;
        if (outcomes[i].evaluations == 0) continue;
        if (best == outcomes.size() || outcomes[i].best.ratio < outcomes[best].best.ratio) best = i;
    }
    if (best == outcomes.size() || !std::isfinite(outcomes[best].best.ratio))
        throw NumericalBreakdown("minimize_ratio: no finite configuration evaluated");

    const double bound = schuette_bound(n, 4.0);
    const double ratio = outcomes[best].best.ratio;
    return SearchResult{detail::l4_config(outcomes[best].best.pts), ratio, bound, ratio - bound, restarts,
                        evaluations, rng_seed};
}

}  // namespace lpx
