#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace lpx::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() / ("lpx_cli_test_" + std::to_string(::getpid()) + "_" +
                                             std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

const std::string kSquare = std::string(LPX_SAMPLES_DIR) + "/square.json";

TEST(Cli, BoundText) {
    const auto r = invoke({"bound", "--n", "2", "--p", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1.189207115002721\n");
}

TEST(Cli, BoundJsonCarriesManifest) {
    const auto r = invoke({"bound", "--n", "3", "--json", "--tol", "1e-7"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["schema"], kSchemaVersion);
    EXPECT_EQ(j["manifest"]["command"], "bound");
    EXPECT_EQ(j["manifest"]["tolerances"]["slack"].get<double>(), 1e-7);
    EXPECT_EQ(j["manifest"]["tolerances"]["residual"].get<double>(), 1e-7);
    EXPECT_NEAR(j["bound"].get<double>(), std::pow(12.0 / 7.0, 0.25), 1e-15);
}

TEST(Cli, SweepCsv) {
    const auto r = invoke({"bound", "--sweep", "2..5", "--csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line.rfind("# manifest: ", 0), 0u);
    std::getline(lines, line);
    EXPECT_EQ(line, "n,p,bound,epsilon");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 4);
}

TEST(Cli, BadExponentIsPrecondition) {
    const auto r = invoke({"bound", "--n", "3", "--p", "3"});
    EXPECT_EQ(r.code, kPrecondition);
    const auto e = json::parse(r.err);
    EXPECT_EQ(e["error"]["kind"], "precondition");
}

TEST(Cli, MissingFileIsIoError) {
    const auto r = invoke({"certify", "/nonexistent/config.json"});
    EXPECT_EQ(r.code, kIo);
    EXPECT_EQ(json::parse(r.err)["error"]["kind"], "io");
}

TEST(Cli, UnknownOptionIsUsageError) {
    const auto r = invoke({"bound", "--frobnicate"});
    EXPECT_EQ(r.code, kIo);
}

TEST(Cli, SquareAuditIsTight) {
    const auto r = invoke({"audit", kSquare, "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["certificate_bound"].get<double>(), 2.0, 1e-12);
    EXPECT_EQ(j["audit"]["square_slack"].get<double>(), 0.0);
    EXPECT_TRUE(j["sound"].get<bool>());
}

TEST(Cli, ConstructThenCertifyPipeline) {
    TempDir dir;
    const std::string path = dir.file("n5.json");
    ASSERT_EQ(invoke({"construct", "--n", "5", "--json", "--out", path}).code, 0);
    const auto built = json::parse(slurp(path));
    const double expected = built["diagnostics"]["expected_ratio"].get<double>();
    EXPECT_NEAR(built["diagnostics"]["achieved_ratio"].get<double>(), expected, 1e-12);

    const auto r = invoke({"audit", path, "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_TRUE(j["sound"].get<bool>());
    EXPECT_NEAR(j["ratio_fourth"].get<double>(), std::pow(expected, 4), 1e-10);
}

TEST(Cli, OutFileCarriesManifestForText) {
    TempDir dir;
    const std::string path = dir.file("bound.txt");
    ASSERT_EQ(invoke({"bound", "--n", "2", "--out", path}).code, 0);
    const std::string body = slurp(path);
    EXPECT_EQ(body.rfind("# manifest: ", 0), 0u);
    EXPECT_NE(body.find("1.189207115002721"), std::string::npos);
}

TEST(Cli, SearchReproducibleAndWritesBest) {
    TempDir dir;
    const std::string best = dir.file("best.json");
    const auto a = invoke({"search", "--n", "2", "--budget", "500", "--seed", "4", "--json", "--best-out", best});
    const auto b = invoke({"search", "--n", "2", "--budget", "500", "--seed", "4", "--json"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto ja = json::parse(a.out);
    const auto jb = json::parse(b.out);
    EXPECT_EQ(ja["best_ratio"], jb["best_ratio"]);
    EXPECT_EQ(ja["manifest"]["rng_seed"], 4);

    // the written best configuration feeds straight back into certify and search
    const auto cert = invoke({"certify", best, "--json"});
    ASSERT_EQ(cert.code, 0) << cert.err;
    EXPECT_TRUE(json::parse(cert.out)["sound"].get<bool>());
    const auto again = invoke({"search", "--n", "2", "--budget", "50", "--from", best, "--json"});
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_LE(json::parse(again.out)["best_ratio"].get<double>(), ja["best_ratio"].get<double>());
}

TEST(Cli, CheckEquilateralReportsWindow) {
    const auto r = invoke({"check-equilateral", kSquare, "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_FALSE(j["equilateral"].get<bool>());
    EXPECT_EQ(j["cardinality_window"]["max_size"], 3);
    EXPECT_FALSE(j["contradiction"].get<bool>());
    EXPECT_FALSE(j["note"].get<std::string>().empty());
}

TEST(Cli, CheckEquilateralToleranceControlsVerdict) {
    TempDir dir;
    const std::string path = dir.file("tri.json");
    {
        std::ofstream f(path);
        f << R"({"p": 2, "points": [[0, 0], [1, 0], [0.5, 0.8660254]]})";
    }
    EXPECT_FALSE(json::parse(invoke({"check-equilateral", path, "--json", "--tol", "1e-12"}).out)["equilateral"]);
    EXPECT_TRUE(json::parse(invoke({"check-equilateral", path, "--json", "--tol", "1e-6"}).out)["equilateral"]);
}

TEST(Cli, CertifyRejectsOtherExponents) {
    TempDir dir;
    const std::string path = dir.file("p2.json");
    {
        std::ofstream f(path);
        f << R"({"p": 2, "points": [[0, 0], [1, 0], [1, 1], [0, 1]]})";
    }
    EXPECT_EQ(invoke({"certify", path}).code, kPrecondition);
}

}  // namespace
}  // namespace lpx::cli
