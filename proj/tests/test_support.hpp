#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lpx/lpgeom.hpp"

namespace lpx::testing {

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

inline Configuration random_configuration(std::mt19937_64& rng, std::size_t m, std::size_t n, double p = 4.0) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < m; ++i) pts.emplace_back(random_vector(rng, n));
    return {std::move(pts), p};
}

inline Configuration unit_square(double p) {
    return {{Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}, Point{0.0, 1.0}}, p};
}

// Direct sum-of-powers evaluation, without scaling or compensation.
inline double naive_p_norm(const std::vector<double>& v, double p) {
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return std::pow(s, 1.0 / p);
}

}  // namespace lpx::testing
