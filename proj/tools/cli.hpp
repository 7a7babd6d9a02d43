#pragma once

// Subcommand front end for the lpx library. All file I/O of the project
// lives here. run() is kept separate from main() so the tests can drive it.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpx/bounds.hpp"
#include "lpx/construct.hpp"
#include "lpx/lpgeom.hpp"
#include "lpx/radon.hpp"
#include "lpx/search.hpp"
#include "lpx/serialize.hpp"

#ifndef LPX_VERSION
#define LPX_VERSION "0.0.0"
#endif

namespace lpx::cli {

enum ExitCode : int { kOk = 0, kPrecondition = 1, kIo = 2 };

/// Unreadable or unwritable files, and malformed input documents.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Csv };

struct Tolerances {
    double equal_rel = kDefaultRelTol;
    double residual = RadonOptions{}.residual_tol;
    double slack = AuditOptions{}.slack_tol;
};

struct RunManifest {
    std::string command;
    std::vector<std::string> args;
    Tolerances tolerances;
    std::optional<std::uint64_t> rng_seed;
    std::string version = LPX_VERSION;
    std::string timestamp;
};

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline json to_json(const RunManifest& m) {
    json j{{"command", m.command},
           {"args", m.args},
           {"tolerances", {{"equal_rel", m.tolerances.equal_rel},
                           {"residual", m.tolerances.residual},
                           {"slack", m.tolerances.slack}}},
           {"version", m.version},
           {"timestamp", m.timestamp}};
    j["rng_seed"] = m.rng_seed ? json(*m.rng_seed) : json(nullptr);
    return j;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw IoError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline Configuration read_configuration(const std::string& path) {
    const json j = read_json_file(path);
    try {
        return configuration_from_json(j);
    } catch (const FormatError& e) {
        throw IoError("'" + path + "': " + e.what());
    }
}

/// Seeds file: one configuration document, or {"seeds": [config, ...]}.
inline std::vector<Configuration> read_seeds(const std::string& path) {
    const json j = read_json_file(path);
    try {
        std::vector<Configuration> out;
        if (j.is_object() && j.contains("seeds")) {
            for (const auto& s : j.at("seeds")) out.push_back(configuration_from_json(s));
        } else {
            out.push_back(configuration_from_json(j));
        }
        return out;
    } catch (const FormatError& e) {
        throw IoError("'" + path + "': " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << body;
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline json error_object(const std::string& kind, const std::string& message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

// Flat single-row CSV of the scalar members of a JSON object.
inline std::string flat_csv(const json& j) {
    std::string header;
    std::string row;
    for (const auto& [key, value] : j.items()) {
        if (value.is_structured()) continue;
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += key;
        if (value.is_number_float())
            row += format_real(value.get<double>());
        else if (value.is_string())
            row += value.get<std::string>();
        else
            row += value.dump();
    }
    return header + "\n" + row + "\n";
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args) {
        CLI::App app{"Distance-ratio bounds, Radon certificates and constructions in l_p^n", "lpx"};
        app.require_subcommand(1);
        app.set_version_flag("--version", LPX_VERSION);

        std::int64_t n = 0;
        double p = 4.0;
        std::optional<double> p_override;
        std::string sweep;
        std::string file;
        std::string from;
        std::string best_out;
        std::int64_t budget = 10000;
        std::uint64_t seed = 1;
        bool both_branches = false;

        auto add_common = [&](CLI::App* sub) {
            sub->add_flag("--json", json_, "JSON output");
            sub->add_flag("--csv", csv_, "CSV output");
            sub->add_option("--tol", tol_, "Tolerance applied to every check");
            sub->add_option("--residual-tol", residual_tol_, "Radon weight-system residual tolerance");
            sub->add_option("--slack-tol", slack_tol_, "Inequality slack tolerance (relative)");
            sub->add_option("--out", out_path_, "Write the result to this file instead of stdout");
        };

        auto* bound = app.add_subcommand("bound", "Lower bound on max/min distance and exponent window");
        bound->add_option("--n", n, "Dimension");
        bound->add_option("--p", p, "Exponent, 2 or 4")->capture_default_str();
        bound->add_option("--sweep", sweep, "Dimension range N1..N2");
        add_common(bound);

        auto* construct = app.add_subcommand("construct", "Explicit n+2 point set in l_4^n");
        construct->add_option("--n", n, "Dimension (>= 2)")->required();
        construct->add_flag("--both-branches", both_branches, "Also solve the y < 0 branch (diagnostic)");
        add_common(construct);

        auto* certify = app.add_subcommand("certify", "Radon partition and certificate for n+2 points in R^n");
        certify->add_option("file", file, "Configuration JSON")->required();
        add_common(certify);

        auto* audit = app.add_subcommand("audit", "Certificate plus evaluation of every inequality step");
        audit->add_option("file", file, "Configuration JSON")->required();
        add_common(audit);

        auto* search = app.add_subcommand("search", "Minimize the l_4 distance ratio of n+2 points");
        search->add_option("--n", n, "Dimension (>= 2)")->required();
        search->add_option("--budget", budget, "Ratio evaluations")->capture_default_str();
        search->add_option("--seed", seed, "RNG seed")->capture_default_str();
        search->add_option("--from", from, "Seed configuration(s) JSON");
        search->add_option("--best-out", best_out, "Also write the best configuration here");
        add_common(search);

        auto* check = app.add_subcommand("check-equilateral", "Equilateral test with the cardinality window");
        check->add_option("file", file, "Configuration JSON")->required();
        check->add_option("--p", p_override, "Exponent (defaults to the file's p)");
        add_common(check);

        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(std::move(reversed));
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e, out_, err_);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e, out_, err_);
        } catch (const CLI::ParseError& e) {
            return fail(kIo, "usage", e.what());
        }

        manifest_.args = args;
        manifest_.timestamp = utc_timestamp();
        try {
            apply_tolerances();
            if (json_ && csv_) throw PreconditionError("choose at most one of --json and --csv");
            format_ = json_ ? Format::Json : csv_ ? Format::Csv : Format::Text;

            if (bound->parsed()) return cmd_bound(n, p, sweep, bound->count("--n") > 0);
            if (construct->parsed()) return cmd_construct(n, both_branches);
            if (certify->parsed()) return cmd_certify(file, false);
            if (audit->parsed()) return cmd_certify(file, true);
            if (search->parsed()) return cmd_search(n, budget, seed, from, best_out);
            if (check->parsed()) return cmd_check(file, p_override);
        } catch (const IoError& e) {
            return fail(kIo, "io", e.what());
        } catch (const FormatError& e) {
            return fail(kIo, "format", e.what());
        } catch (const PreconditionError& e) {
            return fail(kPrecondition, "precondition", e.what());
        } catch (const NumericalBreakdown& e) {
            return fail(kPrecondition, "numerical_breakdown", e.what());
        }
        return fail(kIo, "usage", "no subcommand");
    }

private:
    void apply_tolerances() {
        auto& t = manifest_.tolerances;
        if (tol_) {
            detail::require(*tol_ >= 0.0, "--tol must be non-negative");
            t.equal_rel = t.residual = t.slack = *tol_;
        }
        if (residual_tol_) t.residual = *residual_tol_;
        if (slack_tol_) t.slack = *slack_tol_;
    }

    int fail(int code, const std::string& kind, const std::string& message) {
        err_ << error_object(kind, message).dump() << '\n';
        return code;
    }

    // Writes `payload` (JSON), `csv` or `text` depending on the output format.
    // Files always carry the manifest; JSON carries it everywhere.
    void emit(json payload, const std::string& csv, const std::string& text) {
        const json manifest = to_json(manifest_);
        std::string body;
        switch (format_) {
            case Format::Json:
                payload["schema"] = kSchemaVersion;
                payload["manifest"] = manifest;
                body = payload.dump(2) + "\n";
                break;
            case Format::Csv:
                body = "# manifest: " + manifest.dump() + "\n" + csv;
                break;
            case Format::Text:
                body = (out_path_ ? "# manifest: " + manifest.dump() + "\n" : std::string()) + text;
                break;
        }
        if (out_path_)
            write_text_file(*out_path_, body);
        else
            out_ << body;
    }

    int cmd_bound(std::int64_t n, double p, const std::string& sweep, bool have_n) {
        manifest_.command = "bound";
        if (!sweep.empty()) {
            const auto dots = sweep.find("..");
            if (dots == std::string::npos) throw PreconditionError("--sweep expects N1..N2");
            std::int64_t lo = 0;
            std::int64_t hi = 0;
            try {
                lo = std::stoll(sweep.substr(0, dots));
                hi = std::stoll(sweep.substr(dots + 2));
            } catch (const std::exception&) {
                throw PreconditionError("--sweep expects integers N1..N2");
            }
            const BoundTable table = bound_table(lo, hi, p);
            const std::string csv = to_csv(table);
            emit(to_json(table), csv, csv);
            return kOk;
        }
        detail::require(have_n, "bound needs --n or --sweep");
        const double b = schuette_bound(n, p);
        const double eps = epsilon_threshold(n, p);
        json j{{"n", n}, {"p", p}, {"bound", b}, {"epsilon", eps}};
        emit(j, flat_csv(j), format_real(b) + "\n");
        return kOk;
    }

    int cmd_construct(std::int64_t n, bool both_branches) {
        manifest_.command = "construct";
        const BuiltConfiguration built = build_configuration(n);
        const RatioReport rep = ratio_report(built.config);
        json diag{{"n", built.n},
                  {"expected_ratio", built.expected_ratio},
                  {"achieved_ratio", rep.ratio},
                  {"ratio_report", to_json(rep)},
                  {"schuette_bound", schuette_bound(n, 4.0)},
                  {"first_block", to_json(built.first_block)}};
        diag["second_block"] = built.second_block ? to_json(*built.second_block) : json(nullptr);
        if (both_branches) {
            json branches = json::array();
            branches.push_back(to_json(solve_negative_branch(built.first_block.k)));
            if (built.second_block) branches.push_back(to_json(solve_negative_branch(built.second_block->k)));
            diag["negative_branch"] = std::move(branches);
        }
        json j = to_json(built.config);
        j["diagnostics"] = diag;

        json flat{{"n", built.n},
                  {"k", built.first_block.k},
                  {"x", built.first_block.x},
                  {"y", built.first_block.y},
                  {"alpha", built.first_block.alpha_root},
                  {"expected_ratio", built.expected_ratio},
                  {"achieved_ratio", rep.ratio}};
        std::ostringstream text;
        text << "n = " << n << ", " << built.config.size() << " points in l_4^" << n << "\n"
             << "x = " << format_real(built.first_block.x) << ", y = " << format_real(built.first_block.y)
             << ", alpha = " << format_real(built.first_block.alpha_root) << "\n"
             << "expected ratio = " << format_real(built.expected_ratio)
             << ", achieved ratio = " << format_real(rep.ratio) << "\n";
        emit(j, flat_csv(flat), text.str());
        return kOk;
    }

    int cmd_certify(const std::string& path, bool with_audit) {
        manifest_.command = with_audit ? "audit" : "certify";
        const Configuration config = read_configuration(path);
        detail::require(config.p() == 4.0, "certificates are defined for p = 4 only");
        const auto& t = manifest_.tolerances;
        const RadonCertificate cert = radon_partition(config, RadonOptions{t.residual});
        const double value = certificate_bound(cert);
        const RatioReport rep = ratio_report(config);
        const std::int64_t n = static_cast<std::int64_t>(config.dim());
        const double ratio4 = pow4(rep.ratio);
        const double floor4 = pow4(schuette_bound(n, 4.0));
        const bool sound = ratio4 >= value - t.slack * ratio4 && value >= floor4 - t.slack * value;

        json j{{"certificate", to_json(cert)},
               {"certificate_bound", value},
               {"ratio_report", to_json(rep)},
               {"ratio_fourth", ratio4},
               {"schuette_bound_fourth", floor4},
               {"sound", sound}};
        std::ostringstream text;
        text << "side A = " << json(cert.side_a).dump() << ", alphas = " << json(cert.alphas).dump() << "\n"
             << "side B = " << json(cert.side_b).dump() << ", betas = " << json(cert.betas).dump() << "\n"
             << "certificate = " << format_real(value) << ", ratio^4 = " << format_real(ratio4)
             << ", bound^4 = " << format_real(floor4) << "\n";

        json flat{{"certificate_bound", value}, {"ratio_fourth", ratio4}, {"schuette_bound_fourth", floor4},
                  {"residual", cert.residual}, {"sound", sound}};
        bool holds = sound;
        if (with_audit) {
            const ChainAudit a = evaluate_chain(config, cert, AuditOptions{t.slack});
            j["audit"] = to_json(a);
            flat["square_slack"] = a.square_slack;
            flat["all_hold"] = a.all_hold();
            holds = holds && a.all_hold();
            auto line = [&](const char* name, const InequalityCheck& c) {
                text << name << ": " << format_real(c.lhs) << " >= " << format_real(c.rhs)
                     << (c.holds ? "  ok" : "  VIOLATED") << "\n";
            };
            line("within_a", a.within_a);
            line("within_b", a.within_b);
            line("across  ", a.across);
            line("summed  ", a.summed);
            line("ratio   ", a.ratio);
            text << "square slack = " << format_real(a.square_slack) << "\n";
        }
        emit(j, flat_csv(flat), text.str());
        if (!holds) return fail(kPrecondition, "inequality_violated", "a certified inequality failed beyond tolerance");
        return kOk;
    }

    int cmd_search(std::int64_t n, std::int64_t budget, std::uint64_t seed, const std::string& from,
                   const std::string& best_out) {
        manifest_.command = "search";
        manifest_.rng_seed = seed;
        std::vector<Configuration> seeds;
        if (!from.empty()) seeds = read_seeds(from);
        SearchOptions opts;
        opts.threads = thread_cap();
        const SearchResult r = minimize_ratio(n, budget, std::move(seeds), seed, opts);

        json j = to_json(r);
        json flat{{"n", n}, {"best_ratio", r.best_ratio}, {"bound", r.bound}, {"gap", r.gap},
                  {"restarts", r.restarts}, {"evaluations", r.evaluations}, {"rng_seed", r.rng_seed}};
        std::ostringstream text;
        text << "best ratio = " << format_real(r.best_ratio) << ", bound = " << format_real(r.bound)
             << ", gap = " << format_real(r.gap) << " (" << r.evaluations << " evaluations, " << r.restarts
             << " restarts)\n";
        emit(j, flat_csv(flat), text.str());
        if (!best_out.empty()) {
            json cfg = to_json(r.best_config);
            cfg["schema"] = kSchemaVersion;
            cfg["manifest"] = to_json(manifest_);
            write_text_file(best_out, cfg.dump(2) + "\n");
        }
        return kOk;
    }

    int cmd_check(const std::string& path, std::optional<double> p_override) {
        manifest_.command = "check-equilateral";
        Configuration config = read_configuration(path);
        if (p_override) config = config.with_exponent(*p_override);
        const EquilateralCheck eq = is_equilateral(config, manifest_.tolerances.equal_rel);
        const auto n = static_cast<std::int64_t>(config.dim());
        const auto m = static_cast<std::int64_t>(config.size());
        const double p = config.p();

        json j = to_json(eq);
        j["p"] = p;
        j["n"] = n;
        j["points"] = m;
        std::optional<double> window_center;
        double window = 0.0;
        for (double center : {4.0, 2.0}) {
            const double eps = epsilon_threshold(n, center);
            if (std::abs(p - center) < eps) {
                window_center = center;
                window = eps;
                break;
            }
        }
        std::string note;
        if (m > n + 1 && window_center) {
            std::ostringstream s;
            s << "|p - " << *window_center << "| < " << format_real(window) << ": an equilateral set in l_p^" << n
              << " has at most " << n + 1 << " points, so these " << m << " points cannot be equilateral";
            note = s.str();
            j["cardinality_window"] = {{"center", *window_center}, {"epsilon", window}, {"max_size", n + 1}};
            j["contradiction"] = eq.equilateral;
        } else {
            j["cardinality_window"] = nullptr;
            j["contradiction"] = false;
        }
        j["note"] = note;

        std::ostringstream text;
        text << (eq.equilateral ? "equilateral" : "not equilateral");
        if (eq.lambda) text << ", lambda = " << format_real(*eq.lambda);
        text << "\n";
        if (!note.empty()) text << note << "\n";
        json flat{{"equilateral", eq.equilateral}, {"p", p}, {"n", n}, {"points", m},
                  {"max_dist", eq.max_dist}, {"min_dist", eq.min_dist}};
        emit(j, flat_csv(flat), text.str());
        return kOk;
    }

    static unsigned thread_cap() {
        unsigned cap = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("LP_EXTREMAL_THREADS")) {
            try {
                const long v = std::stol(env);
                if (v >= 1) cap = std::min<unsigned>(cap, static_cast<unsigned>(v));
            } catch (const std::exception&) {
                // unparsable: keep the hardware default
            }
        }
        return cap;
    }

    std::ostream& out_;
    std::ostream& err_;
    bool json_ = false;
    bool csv_ = false;
    std::optional<double> tol_;
    std::optional<double> residual_tol_;
    std::optional<double> slack_tol_;
    std::optional<std::string> out_path_;
    Format format_ = Format::Text;
    RunManifest manifest_;
};

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 failed precondition or numerical breakdown, 2 usage, I/O or parse error.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return Runner(out, err).run(args);
}

}  // namespace lpx::cli
