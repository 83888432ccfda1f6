#include "invreg/cli.hpp"
#include "invreg/io.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

using namespace invreg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("invreg_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) { return io::read_file(p); }

std::size_t line_count(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("sample: shape, sidecar and determinism") {
    const auto dir = scratch("sample");
    auto r = invoke({"sample", "--function", "quad1", "--N", "3", "--seed", "7", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    const std::string first = slurp(dir / "samples.csv");
    CHECK(line_count(first) == 4);
    CHECK(first.rfind("x1,x2,x3,x4,x5,x6,x7,x8,x9,x10,y\n", 0) == 0);
    CHECK(first.find('\r') == std::string::npos);
    const json side = json::parse(slurp(dir / "samples.json"));
    CHECK(side["seed"] == 7);
    CHECK(side["standardized"] == false);
    CHECK(side["measure"]["kind"] == "standard_gaussian");

    r = invoke({"sample", "--function", "quad1", "--N", "3", "--seed", "7", "--out", dir.string()});
    CHECK(slurp(dir / "samples.csv") == first);

    r = invoke({"sample", "--function", "hartmann", "--N", "2", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const SampleSet h = io::read_samples_csv(dir / "samples.csv");
    CHECK(h.size() == 2);
    CHECK(h.dim() == 5);

    r = invoke({"sample", "--function", "nosuch", "--N", "3", "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    fs::remove_all(dir);
}

TEST_CASE("sample: unwritable output path is a runtime error") {
    const auto dir = scratch("unwritable");
    io::write_file_atomic(dir / "blocker", "x");
    const auto r = invoke({"sample", "--function", "quad1", "--N", "3", "--out", (dir / "blocker" / "sub").string()});
    CHECK(r.code == 1);
    fs::remove_all(dir);
}

TEST_CASE("estimate: quad1 SAVE writes all artifacts") {
    const auto dir = scratch("estimate");
    const auto r = invoke({"save", "--function", "quad1", "--N", "10000", "--n", "1", "--slices", "20", "--seed", "3",
                           "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out.empty());
    const json j = json::parse(slurp(dir / "estimate.json"));
    CHECK(j["method"] == "save");
    CHECK(j["eigenvalues"].size() == 10);
    CHECK(j["slices"] == 20);
    CHECK(j["slice_counts"].size() == 20);
    CHECK(j["slice_weights"].size() == 20);
    CHECK(j["true_subspace_distance"].get<double>() < 0.1);
    const std::string vecs = slurp(dir / "eigvecs.csv");
    CHECK(vecs.rfind("w1,w2,", 0) == 0);
    CHECK(line_count(vecs) == 11);
    const std::string plot = slurp(dir / "summary_plot.csv");
    CHECK(plot.rfind("p1,y\n", 0) == 0);
    CHECK(line_count(plot) == 10001);
    fs::remove_all(dir);
}

TEST_CASE("estimate: ingested four-row set gives eigenvalues (4.5, 2)") {
    const auto dir = scratch("ingest");
    io::write_file_atomic(dir / "hand.csv", "x1,x2,y\n1,0,0.1\n3,0,0.2\n0,2,0.9\n0,4,1.0\n");
    auto r = invoke({"sir", "--input", (dir / "hand.csv").string(), "--standardized", "--slices", "2", "--out",
                     (dir / "o").string()});
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(dir / "o" / "estimate.json"));
    CHECK(j["eigenvalues"][0].get<double>() == doctest::Approx(4.5));
    CHECK(j["eigenvalues"][1].get<double>() == doctest::Approx(2.0));
    CHECK(j["slice_weights"] == json::array({0.5, 0.5}));

    // without a measure or declaration the data cannot be standardized
    r = invoke({"sir", "--input", (dir / "hand.csv").string(), "--out", (dir / "o").string()});
    CHECK(r.code == 2);

    // a measure from the config file standardizes the data
    io::write_file_atomic(dir / "cfg.json",
                          R"({"measure": {"kind": "gaussian", "mean": [1, 1], "cov": [[4, 0], [0, 4]]}, "slices": 2})");
    r = invoke({"sir", "--input", (dir / "hand.csv").string(), "--config", (dir / "cfg.json").string(), "--out",
                (dir / "m").string()});
    REQUIRE(r.code == 0);
    const json m = json::parse(slurp(dir / "m" / "estimate.json"));
    CHECK(m["slices"] == 2);
    CHECK(m.contains("directions_original_coordinates"));

    io::write_file_atomic(dir / "bad.csv", "x1,x2,y\n1,nan,0.1\n3,0,0.2\n");
    r = invoke({"sir", "--input", (dir / "bad.csv").string(), "--standardized", "--out", (dir / "o").string()});
    CHECK(r.code == 2);
    fs::remove_all(dir);
}

TEST_CASE("estimate: sidecar from sample is honoured") {
    const auto dir = scratch("sidecar");
    REQUIRE(invoke({"sample", "--function", "hartmann", "--N", "2000", "--out", dir.string()}).code == 0);
    const auto r = invoke({"sir", "--input", (dir / "samples.csv").string(), "--n", "2", "--out", (dir / "e").string()});
    REQUIRE(r.code == 0);
    const json j = json::parse(slurp(dir / "e" / "estimate.json"));
    CHECK(j["directions_original_coordinates"].size() == 2);
    fs::remove_all(dir);
}

TEST_CASE("estimate: n exceeding m exits 2 with message") {
    const auto dir = scratch("nbig");
    const auto r = invoke({"estimate", "--function", "quad1", "--N", "100", "--n", "11", "--out", dir.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("n exceeds input dimension") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("estimate: bootstrap and determinism") {
    const auto dir = scratch("boot");
    std::vector<std::string> args{"sir", "--function", "hartmann", "--N", "2000", "--n", "2", "--bootstrap", "5",
                                  "--out", dir.string()};
    REQUIRE(invoke(args).code == 0);
    const std::string a = slurp(dir / "estimate.json");
    REQUIRE(invoke(args).code == 0);
    CHECK(slurp(dir / "estimate.json") == a);
    const json j = json::parse(a);
    CHECK(j["bootstrap"]["lower"].size() == 5);
    CHECK(line_count(slurp(dir / "summary_plot.csv")) == 2001);
    CHECK(slurp(dir / "summary_plot.csv").rfind("p1,p2,y\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("converge: schema, determinism and two-size warning") {
    const auto dir = scratch("converge");
    std::vector<std::string> args{"converge", "--function", "quad3", "--method", "sir", "--n", "3", "--slices", "5",
                                  "--sizes", "200,400,800", "--trials", "2", "--truth-samples", "10000",
                                  "--threads", "2", "--out", dir.string()};
    auto r = invoke(args);
    REQUIRE(r.code == 0);
    std::istringstream lines(r.err);
    for (std::string line; std::getline(lines, line);) CHECK(line.rfind("warning: ", 0) == 0);
    const std::string csv = slurp(dir / "study.csv");
    const std::string js = slurp(dir / "study.json");
    CHECK(csv.rfind("N,trial,N_r_min,eig_mse_norm,subspace_dist\n", 0) == 0);
    CHECK(line_count(csv) == 7);
    const json j = json::parse(js);
    CHECK(j.contains("subspace_slope"));
    CHECK(j.contains("eig_slope"));
    CHECK(j.contains("truth_eigenvalues"));

    args[args.size() - 3] = "1";  // threads
    REQUIRE(invoke(args).code == 0);
    CHECK(slurp(dir / "study.csv") == csv);
    CHECK(slurp(dir / "study.json") == js);

    r = invoke({"converge", "--function", "quad3", "--slices", "5", "--sizes", "200,400", "--trials", "2",
                "--truth-samples", "10000", "--out", dir.string()});
    REQUIRE(r.code == 0);
    const json two = json::parse(slurp(dir / "study.json"));
    CHECK_FALSE(two.contains("subspace_slope"));
    CHECK_FALSE(two["warnings"].empty());
    CHECK(r.err.find("warning") != std::string::npos);

    r = invoke({"converge", "--function", "quad3", "--sizes", "400,200", "--out", dir.string()});
    CHECK(r.code == 2);
    fs::remove_all(dir);
}

TEST_CASE("usage errors") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"estimate", "--N", "10"}).code == 2);
    CHECK(invoke({"estimate", "--function", "quad1", "--method", "pca"}).code == 2);
    CHECK(invoke({"estimate", "--function", "quad1", "--config", "/nonexistent/cfg.json"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("binary exit codes") {
    const auto dir = scratch("binary");
    const std::string bin = INVREG_CLI_PATH;
    auto status = [](const std::string& cmd) {
        const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status(bin + " sample --function quad1 --N 5 --out " + dir.string()) == 0);
    CHECK(status(bin + " estimate --function quad1 --N 100 --n 11 --out " + dir.string()) == 2);
    CHECK(status(bin + " sample --function quad1 --N 5 --out /proc/invreg_denied") == 1);
    fs::remove_all(dir);
}

TEST_CASE("measure json round trip") {
    const auto m = InputMeasure::gaussian(Vector{{1.0, 2.0}}, Matrix{{2.0, 0.5}, {0.5, 1.0}}, true);
    const auto back = cli::measure_from_json(cli::measure_to_json(m));
    CHECK(back.kind() == MeasureKind::Gaussian);
    CHECK(back.mean() == m.mean());
    CHECK(back.covariance() == m.covariance());
    CHECK(back.log_transform());
    CHECK(cli::measure_from_json(json{{"kind", "uniform"}, {"lower", {0.0}}, {"upper", {1.0}}}).kind() ==
          MeasureKind::UniformBox);
    CHECK_THROWS_AS(cli::measure_from_json(json{{"kind", "cauchy"}}), InvalidArgument);
    CHECK_THROWS_AS(cli::measure_from_json(json{{"kind", "gaussian"}, {"mean", {0.0}}}), InvalidArgument);
}
