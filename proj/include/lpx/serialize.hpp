#pragma once

// JSON and CSV encodings of the library's value types. Nothing here touches
// the filesystem; readers and writers take and return json values or strings.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpx/bounds.hpp"
#include "lpx/construct.hpp"
#include "lpx/error.hpp"
#include "lpx/lpgeom.hpp"
#include "lpx/radon.hpp"
#include "lpx/search.hpp"

namespace lpx {

using json = nlohmann::json;

/// Version of every JSON document this library writes.
inline constexpr int kSchemaVersion = 1;

/// %.17g: enough significant digits to round-trip any double.
inline std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Raised when a JSON document does not have the expected shape.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

template <class T>
T get_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace detail

inline json to_json(const Point& p) { return json(std::vector<double>(p.coords().begin(), p.coords().end())); }

inline Point point_from_json(const json& j) {
    if (!j.is_array()) throw FormatError("point must be an array of numbers");
    std::vector<double> c;
    for (const auto& x : j) {
        if (!x.is_number()) throw FormatError("point coordinates must be numbers");
        c.push_back(x.get<double>());
    }
    return Point(std::move(c));
}

inline json to_json(const Configuration& c) {
    json pts = json::array();
    for (const auto& p : c.points()) pts.push_back(to_json(p));
    return {{"p", c.p()}, {"points", std::move(pts)}};
}

/// Accepts {"p": .., "points": [[..], ..]} at the top level, or nested under
/// "config" or "best_config" as written by the construct and search commands.
inline Configuration configuration_from_json(const json& j) {
    if (j.is_object() && !j.contains("points")) {
        if (j.contains("config")) return configuration_from_json(j.at("config"));
        if (j.contains("best_config")) return configuration_from_json(j.at("best_config"));
    }
    const auto raw = detail::get_field<json>(j, "points");
    if (!raw.is_array()) throw FormatError("'points' must be an array");
    std::vector<Point> pts;
    for (const auto& p : raw) pts.push_back(point_from_json(p));
    const double p = j.contains("p") ? detail::get_field<double>(j, "p") : 4.0;
    return Configuration(std::move(pts), p);
}

inline json to_json(const IndexPair& p) { return json::array({p.first, p.second}); }

inline json to_json(const RatioReport& r) {
    return {{"max_dist", r.max_dist},       {"min_dist", r.min_dist},
            {"ratio", r.ratio},             {"argmax_pair", to_json(r.argmax_pair)},
            {"argmin_pair", to_json(r.argmin_pair)}};
}

inline RatioReport ratio_report_from_json(const json& j) {
    auto pair = [&](const char* key) {
        const auto v = detail::get_field<std::vector<std::size_t>>(j, key);
        if (v.size() != 2) throw FormatError(std::string(key) + " must hold two indices");
        return IndexPair{v[0], v[1]};
    };
    return {detail::get_field<double>(j, "max_dist"), detail::get_field<double>(j, "min_dist"),
            detail::get_field<double>(j, "ratio"), pair("argmax_pair"), pair("argmin_pair")};
}

inline json to_json(const EquilateralCheck& e) {
    json j{{"equilateral", e.equilateral}, {"max_dist", e.max_dist}, {"min_dist", e.min_dist}};
    j["lambda"] = e.lambda ? json(*e.lambda) : json(nullptr);
    return j;
}

inline json to_json(const BoundTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"n", r.n}, {"p", r.p}, {"bound", r.schuette_bound}, {"epsilon", r.epsilon}});
    return {{"rows", std::move(rows)}};
}

inline BoundTable bound_table_from_json(const json& j) {
    BoundTable t;
    for (const auto& r : detail::get_field<json>(j, "rows"))
        t.rows.push_back({detail::get_field<std::int64_t>(r, "n"), detail::get_field<double>(r, "p"),
                          detail::get_field<double>(r, "bound"), detail::get_field<double>(r, "epsilon")});
    return t;
}

/// CSV with header `n,p,bound,epsilon`.
inline std::string to_csv(const BoundTable& t) {
    std::ostringstream out;
    out << "n,p,bound,epsilon\n";
    for (const auto& r : t.rows)
        out << r.n << ',' << format_real(r.p) << ',' << format_real(r.schuette_bound) << ','
            << format_real(r.epsilon) << '\n';
    return out.str();
}

inline json to_json(const RadonCertificate& c) {
    return {{"side_a", c.side_a},
            {"side_b", c.side_b},
            {"alphas", c.alphas},
            {"betas", c.betas},
            {"common_point", to_json(c.common_point)},
            {"certificate", c.certificate},
            {"residual", c.residual},
            {"nullity", c.nullity},
            {"pivot_ratio", c.pivot_ratio}};
}

inline RadonCertificate radon_certificate_from_json(const json& j) {
    return RadonCertificate{detail::get_field<std::vector<std::size_t>>(j, "side_a"),
                            detail::get_field<std::vector<std::size_t>>(j, "side_b"),
                            detail::get_field<std::vector<double>>(j, "alphas"),
                            detail::get_field<std::vector<double>>(j, "betas"),
                            point_from_json(detail::get_field<json>(j, "common_point")),
                            detail::get_field<double>(j, "certificate"),
                            detail::get_field<double>(j, "residual"),
                            j.contains("nullity") ? detail::get_field<std::size_t>(j, "nullity") : 1,
                            j.contains("pivot_ratio") ? detail::get_field<double>(j, "pivot_ratio") : 1.0};
}

inline json to_json(const InequalityCheck& c) {
    return {{"lhs", c.lhs}, {"rhs", c.rhs}, {"scale", c.scale}, {"holds", c.holds}};
}

inline InequalityCheck inequality_from_json(const json& j) {
    return {detail::get_field<double>(j, "lhs"), detail::get_field<double>(j, "rhs"),
            detail::get_field<double>(j, "scale"), detail::get_field<bool>(j, "holds")};
}

inline json to_json(const ChainAudit& a) {
    return {{"within_a", to_json(a.within_a)},
            {"within_b", to_json(a.within_b)},
            {"across", to_json(a.across)},
            {"summed", to_json(a.summed)},
            {"ratio", to_json(a.ratio)},
            {"square_slack", a.square_slack},
            {"max_fourth", a.max_fourth},
            {"min_fourth", a.min_fourth},
            {"alpha_sq", a.alpha_sq},
            {"beta_sq", a.beta_sq},
            {"alpha_fourth_moment", a.alpha_fourth_moment},
            {"beta_fourth_moment", a.beta_fourth_moment},
            {"alpha_second_moment_sq", a.alpha_second_moment_sq},
            {"beta_second_moment_sq", a.beta_second_moment_sq},
            {"cross_second_moment", a.cross_second_moment},
            {"all_hold", a.all_hold()}};
}

inline ChainAudit chain_audit_from_json(const json& j) {
    ChainAudit a;
    a.within_a = inequality_from_json(detail::get_field<json>(j, "within_a"));
    a.within_b = inequality_from_json(detail::get_field<json>(j, "within_b"));
    a.across = inequality_from_json(detail::get_field<json>(j, "across"));
    a.summed = inequality_from_json(detail::get_field<json>(j, "summed"));
    a.ratio = inequality_from_json(detail::get_field<json>(j, "ratio"));
    a.square_slack = detail::get_field<double>(j, "square_slack");
    a.max_fourth = detail::get_field<double>(j, "max_fourth");
    a.min_fourth = detail::get_field<double>(j, "min_fourth");
    a.alpha_sq = detail::get_field<double>(j, "alpha_sq");
    a.beta_sq = detail::get_field<double>(j, "beta_sq");
    a.alpha_fourth_moment = detail::get_field<double>(j, "alpha_fourth_moment");
    a.beta_fourth_moment = detail::get_field<double>(j, "beta_fourth_moment");
    a.alpha_second_moment_sq = detail::get_field<double>(j, "alpha_second_moment_sq");
    a.beta_second_moment_sq = detail::get_field<double>(j, "beta_second_moment_sq");
    a.cross_second_moment = detail::get_field<double>(j, "cross_second_moment");
    return a;
}

inline json to_json(const ConstructionSolution& s) {
    return {{"k", s.k},
            {"x", s.x},
            {"y", s.y},
            {"alpha", s.alpha_root},
            {"residual1", s.residual1},
            {"residual2", s.residual2},
            {"f_at_alpha_residual", s.f_at_alpha_residual}};
}

inline ConstructionSolution construction_solution_from_json(const json& j) {
    ConstructionSolution s;
    s.k = detail::get_field<std::int64_t>(j, "k");
    s.x = detail::get_field<double>(j, "x");
    s.y = detail::get_field<double>(j, "y");
    s.alpha_root = detail::get_field<double>(j, "alpha");
    s.residual1 = detail::get_field<double>(j, "residual1");
    s.residual2 = detail::get_field<double>(j, "residual2");
    s.f_at_alpha_residual = detail::get_field<double>(j, "f_at_alpha_residual");
    return s;
}

inline json to_json(const NegativeBranch& b) {
    return {{"k", b.k},   {"beta", b.beta_root},        {"x", b.x},
            {"y", b.y},   {"residual1", b.residual1},   {"residual2", b.residual2}};
}

inline json to_json(const SearchResult& r) {
    return {{"best_config", to_json(r.best_config)},
            {"best_ratio", r.best_ratio},
            {"bound", r.bound},
            {"gap", r.gap},
            {"restarts", r.restarts},
            {"evaluations", r.evaluations},
            {"rng_seed", r.rng_seed}};
}

inline SearchResult search_result_from_json(const json& j) {
    return SearchResult{configuration_from_json(detail::get_field<json>(j, "best_config")),
                        detail::get_field<double>(j, "best_ratio"),
                        detail::get_field<double>(j, "bound"),
                        detail::get_field<double>(j, "gap"),
                        detail::get_field<std::int64_t>(j, "restarts"),
                        detail::get_field<std::int64_t>(j, "evaluations"),
                        detail::get_field<std::uint64_t>(j, "rng_seed")};
}

}  // namespace lpx
