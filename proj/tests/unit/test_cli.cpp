#include "commands.hpp"
#include "latnet/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

namespace fs = std::filesystem;
using latnet::io::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = latnet::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("latnet_cli_" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string read(const std::string& name) const { return latnet::io::read_text_file(dir_ / name); }
    void write(const std::string& name, const std::string& text) const {
        latnet::io::write_text_file(dir_ / name, text);
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateRingExample) {
    const auto r = run({"generate", "ring", "--n", "40", "--w", "0.25", "--self", "0.25",
                        "--manifest", "5,23,33,34,36", "--out", path("ring.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json net = json::parse(read("ring.json"));
    EXPECT_EQ(net["n_m"], 5);
    EXPECT_EQ(net["n_l"], 35);
    const json stab = json::parse(r.out);
    EXPECT_EQ(stab["stable"], true);
    EXPECT_NEAR(stab["rho_full"].get<double>(), 0.5, 1e-10);
}

TEST_F(Cli, GenerateErIsDeterministic) {
    const std::vector<std::string> base{"generate", "er", "--n", "10", "--p", "0.35", "--wmin", "0.1",
                                        "--wmax", "0.35", "--nm", "5", "--seed", "7", "--out"};
    auto a = base, b = base;
    a.push_back(path("a.json"));
    b.push_back(path("b.json"));
    ASSERT_EQ(run(a).code, 0);
    ASSERT_EQ(run(b).code, 0);
    EXPECT_EQ(read("a.json"), read("b.json"));

    // generate -> read -> write reproduces the bytes.
    const auto net = latnet::io::network_from_json(json::parse(read("a.json")));
    EXPECT_EQ(latnet::io::dump(latnet::io::network_to_json(net)), read("a.json"));
}

TEST_F(Cli, GenerateFromHigherOrder) {
    write("ho.json", R"({"nu": 2, "n_m": 1, "coeffs": [[[0.5, 0.1], [0.2, 0.0]], [[0.1, 0.0], [0.0, 0.3]]]})");
    const auto r = run({"generate", "from-higher-order", "--in", path("ho.json"), "--out", path("net.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json net = json::parse(read("net.json"));
    EXPECT_EQ(net["n_m"], 1);
    EXPECT_EQ(net["n_l"], 3);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"generate", "ring", "--n", "4"}).code, 2);
    EXPECT_EQ(run({"generate", "ring", "--n", "4", "--manifest", "1,9"}).code, 2);
    EXPECT_EQ(run({"generate", "ring", "--n", "four", "--manifest", "1"}).code, 2);
    EXPECT_EQ(run({"fit", "--data", path("x.csv")}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, SimulateFitClassifyPipeline) {
    ASSERT_EQ(run({"generate", "ring", "--n", "4", "--w", "0.5", "--self", "0", "--manifest", "1,3",
                   "--out", path("ring.json")}).code, 0);
    ASSERT_EQ(run({"simulate", "--net", path("ring.json"), "--N", "100000", "--seed", "5", "--out",
                   path("data.csv")}).code, 0);
    ASSERT_EQ(run({"fit", "--data", path("data.csv"), "--tau", "3", "--out", path("model.json"),
                   "--report", path("report.json")}).code, 0);
    const auto r = run({"classify", "--model", path("model.json"), "--alpha", "0.1", "--acyclic",
                        "--net", path("ring.json"), "--out", path("graph.json"), "--edges", path("edges.csv")});
    ASSERT_EQ(r.code, 0) << r.err;

    const json g = json::parse(read("graph.json"));
    EXPECT_TRUE(g["direct"].empty());
    ASSERT_EQ(g["indirect"].size(), 2u);
    for (const auto& e : g["indirect"]) {
        EXPECT_EQ(e["min_order"], 1);
        EXPECT_TRUE((e["src"] == 1 && e["dst"] == 3) || (e["src"] == 3 && e["dst"] == 1));
    }
    EXPECT_EQ(g["comparison"]["indirect"]["f1"], 1.0);
    EXPECT_EQ(read("edges.csv"), "src,dst,kind,weight_or_order\n3,1,indirect,1\n1,3,indirect,1\n");
}

TEST_F(Cli, RegularizedFitReport) {
    ASSERT_EQ(run({"generate", "ring", "--n", "10", "--manifest", "1,4,7", "--out", path("ring.json")}).code, 0);
    ASSERT_EQ(run({"simulate", "--net", path("ring.json"), "--N", "20000", "--out", path("d.csv")}).code, 0);
    const auto r = run({"fit", "--data", path("d.csv"), "--gamma", "10", "--rho0", "0.9", "--tau", "15",
                        "--out", path("m.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    EXPECT_EQ(report["objective_kind"], "residual_energy+exponential_penalty");
    EXPECT_EQ(report["reg"]["gamma"], 10.0);
    EXPECT_EQ(report["reg"]["rho0"], 0.9);
    EXPECT_EQ(json::parse(read("m.json"))["provenance"], "lsar-regularized");
    EXPECT_EQ(run({"fit", "--data", path("d.csv"), "--tau", "2", "--rho0", "0.9"}).code, 2);
    EXPECT_EQ(run({"fit", "--data", path("d.csv"), "--tau", "2", "--gamma", "-1"}).code, 2);
}

TEST_F(Cli, ValidateReportsRSquared) {
    ASSERT_EQ(run({"generate", "ring", "--n", "10", "--manifest", "1,4,7", "--out", path("ring.json")}).code, 0);
    ASSERT_EQ(run({"simulate", "--net", path("ring.json"), "--N", "20000", "--seed", "3", "--out", path("d.csv")}).code, 0);
    const auto r = run({"validate", "--data", path("d.csv"), "--tau", "5", "--split", "0.8", "--out", path("v.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json v = json::parse(read("v.json"));
    const double r2 = v["r_squared"];
    EXPECT_GT(r2, 0.0);
    EXPECT_LE(r2, 1.0);
    EXPECT_EQ(v["n_train"], 16000);
    EXPECT_NE(r.out.find("R^2 = "), std::string::npos);
    EXPECT_EQ(run({"validate", "--data", path("d.csv"), "--tau", "5", "--split", "1.5"}).code, 2);
}

TEST_F(Cli, DataFormatAndNumericErrors) {
    write("bad.csv", "t,y1\n1,0.5\n2,zzz\n");
    const auto r = run({"fit", "--data", path("bad.csv"), "--tau", "1"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("line 3"), std::string::npos);

    write("bad.json", "{\"n_m\": 1,");
    EXPECT_EQ(run({"simulate", "--net", path("bad.json"), "--N", "10"}).code, 3);
    EXPECT_EQ(run({"simulate", "--net", path("missing.json"), "--N", "10"}).code, 3);

    write("zeros.csv", "y1\n0\n0\n0\n0\n0\n0\n0\n0\n0\n0\n");
    EXPECT_EQ(run({"validate", "--data", path("zeros.csv"), "--tau", "1", "--split", "0.5"}).code, 4);

    write("blowup.json", R"({"n_m":1,"n_l":0,"a11":[[3.0]],"a12":[[]],"a21":[],"a22":[],
                            "manifest_labels":[1],"latent_labels":[]})");
    const auto s = run({"simulate", "--net", path("blowup.json"), "--N", "1000"});
    EXPECT_EQ(s.code, 4);
    EXPECT_NE(s.err.find("warning"), std::string::npos);
}

TEST_F(Cli, ErrorSurfaceConfigAndDeterminism) {
    ASSERT_EQ(run({"generate", "ring", "--n", "4", "--w", "0.5", "--self", "0", "--manifest", "1,3",
                   "--out", path("ring.json")}).code, 0);
    write("cfg.json", R"({"net": "ring.json", "N-list": [1000, 2000], "tau-list": [2], "seeds": [1, 2],
                          "grid": 128, "alpha": 0.2, "out": "run"})");

    // Flags override the file: a single N value.
    ASSERT_EQ(run({"error-surface", "--config", path("cfg.json"), "--N-list", "1500"}).code, 0);
    const std::string csv = read("run/error_surface.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    EXPECT_EQ(csv.rfind("N,tau,seed,hinf_error,coeff_error,error\n1500,2,1,", 0), 0u);
    const json echoed = json::parse(read("run/config.json"));
    EXPECT_EQ(echoed["N-list"], json::array({1500}));
    EXPECT_EQ(echoed["alpha"], 0.2);
    EXPECT_EQ(echoed["net"]["n_m"], 2);

    ASSERT_EQ(run({"error-surface", "--config", path("cfg.json"), "--N-list", "1500"}).code, 0);
    EXPECT_EQ(read("run/error_surface.csv"), csv);

    // Single cell straight to stdout.
    const auto one = run({"error-surface", "--net", path("ring.json"), "--N-list", "800", "--tau-list", "1",
                          "--seed", "4", "--grid", "64"});
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 2);

    EXPECT_EQ(run({"error-surface", "--net", path("ring.json"), "--N-list", "5", "--tau-list", "5"}).code, 2);
}

TEST_F(Cli, BoundTable) {
    ASSERT_EQ(run({"generate", "ring", "--n", "10", "--manifest", "1,4,7", "--out", path("ring.json")}).code, 0);
    const auto r = run({"bound-table", "--net", path("ring.json"), "--tau-max", "8", "--grid", "512"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "tau,optimal_error,gamma,bound");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        std::stringstream ss(line);
        std::string tau, err, gamma, bound;
        std::getline(ss, tau, ',');
        std::getline(ss, err, ',');
        std::getline(ss, gamma, ',');
        std::getline(ss, bound, ',');
        EXPECT_GE(std::stod(bound), std::stod(err)) << line;
    }
    EXPECT_EQ(rows, 8);
    EXPECT_EQ(run({"bound-table", "--net", path("ring.json"), "--rho-bar", "0.1"}).code, 2);
}
