#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fmt/format.h>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "levy_spectra/campaign_io.hpp"
#include "levy_spectra/cli.hpp"

using namespace levy_spectra;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "levy_spectra");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("levy_spectra_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& dir) {
    std::vector<std::pair<std::string, std::string>> files;
    for (const auto& e : fs::directory_iterator(dir)) files.emplace_back(e.path().filename().string(), read_text(e.path()));
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

TEST_CASE("simulate example1 writes parity-respecting pmfs and a manifest") {
    const auto dir = scratch("simulate");
    const auto r = cli({"simulate", "--preset", "example1", "--out", dir.string(), "--realizations", "300"});
    REQUIRE(r.code == 0);
    for (const char* len : {"0.25", "0.5", "1", "2"}) {
        const auto name = fmt::format("xi_500_{}", len);
        REQUIRE(fs::exists(dir / (name + ".csv")));
        const auto doc = Json::parse(read_text(dir / (name + ".json")));
        for (const char* key : {"model", "window", "R", "seed", "pmf", "moments"}) CHECK(doc.contains(key));
        CHECK(doc["R"] == 300);
        CHECK(doc["seed"] == 20161);
        const auto pmf = pmf_from_json(doc);
        for (const auto& [j, c] : pmf.counts()) CHECK(j % 2 == 0);
        CHECK(pmf == pmf_from_csv(read_text(dir / (name + ".csv"))));
    }
    const auto manifest = Json::parse(read_text(dir / "manifest_simulate.json"));
    CHECK(manifest["seed"] == 20161);
    CHECK(manifest["files"].size() == 8u);
    CHECK(manifest["config_hash"].get<std::string>().size() == 16u);
}

TEST_CASE("reruns are byte-identical across worker counts") {
    const auto a = scratch("rerun_a"), b = scratch("rerun_b");
    REQUIRE(cli({"simulate", "--preset", "rank1-poisson", "--out", a.string(), "--realizations", "200", "--workers", "1"}).code == 0);
    REQUIRE(cli({"simulate", "--preset", "rank1-poisson", "--out", b.string(), "--realizations", "200", "--workers", "3"}).code == 0);
    CHECK(snapshot(a) == snapshot(b));
}

TEST_CASE("seed precedence: config < environment < flag") {
    const auto dir = scratch("seed");
    const auto seed_of = [&] { return Json::parse(read_text(dir / "manifest_simulate.json"))["seed"].get<std::uint64_t>(); };
    setenv(kSeedEnv, "77", 1);
    REQUIRE(cli({"simulate", "--preset", "example1", "--out", dir.string(), "--realizations", "10"}).code == 0);
    CHECK(seed_of() == 77u);
    REQUIRE(cli({"simulate", "--preset", "example1", "--out", dir.string(), "--realizations", "10", "--seed", "9"}).code == 0);
    CHECK(seed_of() == 9u);
    setenv(kSeedEnv, "not-a-number", 1);
    const auto bad = cli({"simulate", "--preset", "example1", "--out", dir.string(), "--realizations", "10"});
    CHECK(bad.code == kExitConfig);
    CHECK(bad.err.find(kSeedEnv) != std::string::npos);
    unsetenv(kSeedEnv);
    REQUIRE(cli({"simulate", "--preset", "example1", "--out", dir.string(), "--realizations", "10"}).code == 0);
    CHECK(seed_of() == 20161u);
}

TEST_CASE("config errors exit with code 2 and name the field") {
    const auto dir = scratch("config");
    fs::create_directories(dir);
    const auto path = dir / "bad.toml";
    write_text(path, "dim = 1\nhalf_side = 10\nvariant = \"rank_one_site\"\nhopping = 1\n"
                     "[disorder]\nkind = \"uniform\"\na = 0\n[window]\ncenter = 0.5\n");
    const auto r = cli({"simulate", "--config", path.string(), "--out", (dir / "out").string()});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("disorder.b") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out"));

    CHECK(cli({"simulate"}).code == kExitConfig);
    CHECK(cli({"simulate", "--preset", "nope"}).code == kExitConfig);
    CHECK(cli({"bogus"}).code == kExitConfig);
    const auto w = cli({"wegner", "--preset", "example2", "--out", (dir / "w").string()});
    CHECK(w.code == kExitConfig);
    CHECK(w.err.find("wegner.lengths") != std::string::npos);
}

TEST_CASE("config file layered over a preset") {
    const auto dir = scratch("layered");
    fs::create_directories(dir);
    write_text(dir / "over.toml", "[window]\nlengths = [0.5]\n[output]\nformat = \"csv\"\n");
    const auto out = dir / "out";
    REQUIRE(cli({"simulate", "--preset", "example1", "--config", (dir / "over.toml").string(), "--out", out.string(),
                 "--realizations", "50"})
                .code == 0);
    const auto files = snapshot(out);
    REQUIRE(files.size() == 2u);
    CHECK(files[0].first == "manifest_simulate.json");
    CHECK(files[1].first == "xi_500_0.5.csv");
}

TEST_CASE("report on a directory without artifacts exits 3") {
    const auto dir = scratch("empty");
    fs::create_directories(dir);
    const auto r = cli({"report", dir.string()});
    CHECK(r.code == kExitNoArtifacts);
    CHECK(r.err.find("no campaign artifacts") != std::string::npos);
    CHECK(cli({"report", (dir / "missing").string()}).code == kExitNoArtifacts);
}

TEST_CASE("fit on example1 recovers p2 = |I| and the report passes") {
    const auto dir = scratch("fit");
    // fit runs simulate itself when the xi artifacts are missing
    const auto r = cli({"fit", "--preset", "example1", "--out", dir.string(), "--realizations", "5000"});
    REQUIRE(r.code == 0);
    const auto doc = Json::parse(read_text(dir / "fit_500_1.json"));
    for (const char* key : {"weights", "intensity", "poisson_index", "char_fn_distance", "tail_mass"})
        CHECK(doc.contains(key));
    const auto w = doc["weights"].get<std::vector<double>>();
    REQUIRE(w.size() == 2u);
    CHECK(std::abs(w[1] - 1.0) <= 0.06);
    CHECK(w[0] <= 0.02);
    CHECK(doc["tail_mass"].is_null());
    REQUIRE(cli({"wegner", "--preset", "example1", "--out", dir.string(), "--realizations", "2000"}).code == 0);
    const auto report = cli({"report", dir.string()});
    CHECK(report.code == 0);
    CHECK(report.out.find("FAIL") == std::string::npos);
    CHECK(fs::exists(dir / "report.md"));
}

TEST_CASE("block statistics for the dimer preset") {
    const auto dir = scratch("dimer");
    REQUIRE(cli({"simulate", "--preset", "dimer-1d", "--out", dir.string(), "--realizations", "1000"}).code == 0);
    const auto eta = Json::parse(read_text(dir / "eta_209_1.json"));
    CHECK(eta["block_half_side"] == 10);
    CHECK(eta["blocks"] == 20);
    CHECK(fs::exists(dir / "zeta_209_1.json"));
    REQUIRE(cli({"fit", "--preset", "dimer-1d", "--out", dir.string(), "--realizations", "1000"}).code == 0);
    // fewer than 1000 realizations cannot be fitted
    REQUIRE(cli({"simulate", "--preset", "dimer-1d", "--out", dir.string(), "--realizations", "100"}).code == 0);
    CHECK(cli({"fit", "--preset", "dimer-1d", "--out", dir.string(), "--realizations", "100"}).code == kExitFailure);
    CHECK(Json::parse(read_text(dir / "fit_209_1.json"))["tail_mass"].is_number());
}

TEST_CASE("dos and minami commands") {
    const auto dir = scratch("dos");
    REQUIRE(cli({"dos", "--preset", "example1", "--out", dir.string(), "--realizations", "20"}).code == 0);
    const auto dos = curve_from_csv(read_text(dir / "dos_500.csv"));
    CHECK(dos.size() == 61u);
    // h = 0: density of states is m * 1 on (0, 1)
    double mid = 0.0;
    for (const auto& p : dos)
        if (p.energy == 0.5) mid = p.value;
    CHECK(std::abs(mid - 2.0) <= 0.1);
    REQUIRE(cli({"minami", "--preset", "rank1-poisson", "--out", dir.string(), "--realizations", "200"}).code == 0);
    const auto table = scaling_from_csv(read_text(dir / "minami_250.csv"), "prob_xi_gt_rank");
    CHECK(table.rows.size() == 4u);
    CHECK(cli({"presets"}).out.find("polymer-2d") != std::string::npos);
    CHECK(cli({"presets", "--show", "example2"}).out.find("matrix_valued") != std::string::npos);
}
