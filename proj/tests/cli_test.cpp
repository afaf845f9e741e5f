#include "peelkit/cli.hpp"
#include "peelkit/generators.hpp"
#include "peelkit/io.hpp"
#include "peelkit/peeling.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace peelkit {
namespace {

namespace fs = std::filesystem;

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("peelkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    fs::path dir_;
};

std::string last_line(const std::string& text) {
    auto end = text.find_last_not_of('\n');
    auto start = text.rfind('\n', end);
    return text.substr(start + 1, end - start);
}

TEST_F(CliTest, GenerateThenPeelCollinear) {
    const CliRun g = cli({"generate", "--family", "collinear", "--n", "7", "-o", path("c7.txt")});
    ASSERT_EQ(g.code, 0) << g.err;
    const CliRun p = cli({"peel", "-i", path("c7.txt")});
    ASSERT_EQ(p.code, 0) << p.err;
    EXPECT_EQ(last_line(p.out), "# L=4");
    EXPECT_EQ(p.out.rfind("# format=1\nindex,layer\n", 0), 0u);
}

TEST_F(CliTest, FileRoundTripPreservesLayerNumber) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--family", "uniform_ball", "--n", "3000", "--seed", "7"},
             {"--family", "grid", "--d", "3", "--n", "125"},
             {"--family", "onion", "--n", "65536"}}) {
        std::vector<std::string> gen{"generate"};
        gen.insert(gen.end(), args.begin(), args.end());
        gen.insert(gen.end(), {"-o", path("x.txt")});
        ASSERT_EQ(cli(gen).code, 0);
        const PointSet from_file = read_point_set_file(path("x.txt"));
        const CliRun p = cli({"peel", "-i", path("x.txt")});
        ASSERT_EQ(p.code, 0);
        EXPECT_EQ(last_line(p.out), "# L=" + std::to_string(layer_number(from_file)));
        PointSet direct = args[1] == "uniform_ball" ? gen_uniform_ball(2, 3000, 7)
                          : args[1] == "grid"       ? gen_grid(3, 125)
                                                    : gen_onion(65536, 4.0).points;
        EXPECT_TRUE(std::equal(direct.coords().begin(), direct.coords().end(), from_file.coords().begin()));
    }
    EXPECT_TRUE(fs::exists(path("x.txt.params.json")));
}

TEST_F(CliTest, OnionSidecar) {
    ASSERT_EQ(cli({"generate", "--family", "onion", "--n", "65536", "--alpha", "4", "-o", path("o.txt"),
                   "--params-output", path("o.json")}).code, 0);
    std::ifstream in(path("o.json"));
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["M"], 6);
    EXPECT_EQ(j["k"], 16);
    EXPECT_EQ(j["ring_count"].size(), 6u);
    EXPECT_EQ(j["ring_edge_length"].size(), 6u);
}

TEST_F(CliTest, ValidationErrorsExitOne) {
    write("empty.txt", "");
    CliRun r = cli({"peel", "-i", path("empty.txt")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("line 1"), std::string::npos);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);

    write("bad.txt", "# dim=2 label=a\n0.1,0.2\n0.1,x\n");
    r = cli({"peel", "-i", path("bad.txt")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("line 3"), std::string::npos);

    write("headeronly.txt", "# dim=2 label=a\n# format=1\n");
    EXPECT_EQ(cli({"peel", "-i", path("headeronly.txt")}).code, 1);

    r = cli({"generate", "--family", "onion", "--n", "1000"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find(std::to_string(onion_min_n(4.0))), std::string::npos);

    EXPECT_EQ(cli({"generate", "--family", "spiral", "--n", "10"}).code, 1);
    EXPECT_EQ(cli({"generate", "--family", "grid"}).code, 1);
    EXPECT_EQ(cli({"generate", "--family", "grid", "--n", "9", "--bogus"}).code, 1);
    EXPECT_EQ(cli({"frobnicate"}).code, 1);
    EXPECT_EQ(cli({}).code, 1);
    EXPECT_EQ(cli({"peel", "-i", path("missing.txt")}).code, 1);
}

TEST_F(CliTest, HelpAndVersion) {
    CliRun r = cli({"--version"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, std::string(PEELKIT_VERSION) + "\n");
    r = cli({"--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* sub : {"generate", "peel", "check-even", "experiment", "oracle-verify"}) {
        EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
    }
    r = cli({"check-even", "--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* flag : {"--alpha", "--probes", "[1000]", "--seed", "[0]"}) {
        EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
    }
    r = cli({"experiment", "--help"});
    EXPECT_NE(r.out.find("--threads"), std::string::npos);
    EXPECT_NE(r.out.find("[1]"), std::string::npos);
}

TEST_F(CliTest, CheckEvenRefutesCluster) {
    std::ostringstream text;
    text << "# dim=2 label=cluster\n";
    for (int i = 0; i < 50; ++i) text << 0.2 + i * 1e-5 << ",0.1\n";
    for (int i = 0; i < 50; ++i) text << -0.5 + i * 0.02 << ",-0.6\n";
    write("cluster.txt", text.str());
    const CliRun r = cli({"check-even", "-i", path("cluster.txt"), "--alpha", "2", "--probes", "1000", "--seed", "1"});
    EXPECT_EQ(r.code, 2) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "refuted");
    const auto& w = j["witness"];
    const PointSet x = read_point_set_file(path("cluster.txt"));
    const std::vector<double> center = w["center"];
    EXPECT_EQ(count_in_ball(x, center, w.at("radius").template get<double>()), w.at("count").template get<std::size_t>());
    EXPECT_GT(w.at("count").template get<std::size_t>(), w.at("bound").template get<std::size_t>());
}

TEST_F(CliTest, CheckEvenCertifiesSparseSet) {
    ASSERT_EQ(cli({"generate", "--family", "convex", "--n", "6", "-o", path("hex.txt")}).code, 0);
    const CliRun r = cli({"check-even", "-i", path("hex.txt"), "--alpha", "100"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "certified");
    EXPECT_EQ(cli({"check-even", "-i", path("hex.txt"), "--alpha", "1"}).code, 1);
}

TEST_F(CliTest, ExperimentOutputs) {
    const CliRun r = cli({"experiment", "--family", "collinear", "--n-list", "10,20,40", "-o", path("rec.csv"),
                       "--fit-output", path("fit.json"), "--loglog-output", path("ll.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream rec(path("rec.csv"));
    std::string header, head2, row;
    std::getline(rec, header);
    std::getline(rec, head2);
    std::getline(rec, row);
    EXPECT_EQ(header, "# format=1");
    EXPECT_EQ(head2, "family,d,n_param,actual_size,layer_number,seed,wall_time_ms");
    EXPECT_EQ(row, "collinear,2,10,10,5,0,0");
    std::ifstream fit(path("fit.json"));
    EXPECT_NEAR(nlohmann::json::parse(fit)["slope"].get<double>(), 1.0, 1e-12);
    EXPECT_TRUE(fs::exists(path("ll.csv")));
}

TEST_F(CliTest, ExperimentClaimExitCodes) {
    EXPECT_EQ(cli({"experiment", "--family", "convex", "--n-list", "10,100", "--target-slope", "0",
                   "--tolerance", "0.01"}).code, 0);
    EXPECT_EQ(cli({"experiment", "--family", "convex", "--n-list", "10,100", "--target-slope", "0.5"}).code, 2);
    EXPECT_EQ(cli({"experiment", "--family", "grid", "--n-list", "16,9"}).code, 1);
    EXPECT_EQ(cli({"experiment", "--family", "grid", "--n-list", "9,16", "--threads", "0"}).code, 1);
}

TEST_F(CliTest, ExperimentThreadsAreReproducible) {
    const std::vector<std::string> base{"experiment", "--family", "uniform_ball", "--n-list", "100,200,400",
                                        "--seeds", "1,2,3"};
    auto one = base;
    one.insert(one.end(), {"--threads", "1"});
    auto four = base;
    four.insert(four.end(), {"--threads", "4"});
    EXPECT_EQ(cli(one).out, cli(four).out);
}

TEST_F(CliTest, OracleVerify) {
    CliRun r = cli({"oracle-verify", "--family", "grid", "--d", "3", "--n", "27"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["agrees"], true);
    EXPECT_EQ(nlohmann::json::parse(r.out)["steps_checked"], 4);
    ASSERT_EQ(cli({"generate", "--family", "collinear", "--n", "9", "-o", path("c.txt")}).code, 0);
    EXPECT_EQ(cli({"oracle-verify", "-i", path("c.txt"), "--engine", "lp"}).code, 0);
    EXPECT_EQ(cli({"oracle-verify", "--family", "grid", "--n", "100"}).code, 1);
    EXPECT_EQ(cli({"oracle-verify"}).code, 1);
}

TEST_F(CliTest, PeelCapDiagnostic) {
    ASSERT_EQ(cli({"generate", "--family", "uniform_ball", "--n", "300", "--seed", "2", "-o", path("u.txt")}).code, 0);
    const CliRun r = cli({"peel", "-i", path("u.txt"), "--inner-radius", "0.5", "--cap-output", path("cap.json")});
    EXPECT_EQ(r.code, 0);
    std::ifstream in(path("cap.json"));
    EXPECT_EQ(nlohmann::json::parse(in)["bound_holds"], true);
}

} // namespace
} // namespace peelkit
