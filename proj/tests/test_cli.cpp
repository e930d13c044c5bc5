#include "fockzero/cli.hpp"
#include "fockzero/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fockzero;
namespace fs = std::filesystem;

namespace
{

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = cli_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir()
{
    const auto dir = fs::temp_directory_path() / "fockzero_test_cli";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("gen writes the lattice window with n(50) close to pi 2500")
{
    const auto r = run({"gen", "--family", "gamma-nu", "--nu", "0.5", "--radius", "50"});
    REQUIRE(r.code == exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == schema_version);
    const double count = j["count"].get<double>();
    CHECK(std::abs(count - pi * 2500.0) < 200.0);
    CHECK(j["entries"].size() == j["count"].get<std::size_t>());
}

TEST_CASE("verify exit codes follow the verdict")
{
    CHECK(run({"verify", "--theorem", "1", "--nu", "0.5", "--p", "2", "--delta", "zero"}).code == exit_ok);
    const auto fail = run({"verify", "--theorem", "3", "--set", "zeros-of-s"});
    CHECK(fail.code == exit_verdict_failed);
    const auto j = nlohmann::json::parse(fail.out);
    CHECK(j["verdict"] == "fail");
    CHECK(fail.err.find("verdict: fail") != std::string::npos);
}

TEST_CASE("usage and domain errors")
{
    CHECK(run({"frobnicate"}).code == exit_usage);
    CHECK(run({}).code == exit_usage);
    CHECK(run({"gen", "--family", "nope"}).code == exit_usage);
    CHECK(run({"gen", "--delta", "inverse-square"}).code == exit_usage);

    const auto manifest = scratch_dir() / "bad.manifest.json";
    std::ofstream(manifest) << R"({"schema_version": 1, "command": "gen", "family": "als", "colour": "red"})";
    CHECK(run({"gen", "--manifest", manifest.string()}).code == exit_usage);

    // Evaluation outside the disk of the truncated product.
    CHECK(run({"eval", "--function", "lattice", "--nu", "0", "--truncation", "16", "--grid-radius", "10"}).code ==
          exit_domain);
}

TEST_CASE("gen output round-trips byte for byte and the manifest reproduces the run")
{
    const auto dir = scratch_dir();
    const auto first = dir / "a.points.json";
    REQUIRE(run({"gen", "--family", "gamma-nu", "--nu", "0.25", "--radius", "12", "--delta", "inverse-square:0.3",
                 "--out", first.string()})
                .code == exit_ok);
    const auto manifest = dir / "a.manifest.json";
    REQUIRE(fs::exists(manifest));

    const auto second = dir / "b.points.json";
    REQUIRE(run({"gen", "--points", first.string(), "--out", second.string()}).code == exit_ok);
    CHECK(slurp(first) == slurp(second));

    const auto third = dir / "c.points.json";
    REQUIRE(run({"gen", "--manifest", manifest.string(), "--out", third.string()}).code == exit_ok);
    CHECK(slurp(first) == slurp(third));

    const auto set = perturbed_set_from_json(read_json_file(first));
    CHECK(!set.unperturbed());
}

TEST_CASE("check, norm and report")
{
    const auto dir = scratch_dir();
    const auto lindelof = dir / "l.report.json";
    const auto r = run({"check", "--what", "lindelof", "--family", "zeros-of-s", "--radius", "200", "--rho", "2",
                        "--out", lindelof.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("verdict: pass") != std::string::npos);

    const auto n = run({"norm", "--function", "one", "--p", "2", "--r-max", "8"});
    REQUIRE(n.code == exit_ok);
    const auto j = nlohmann::json::parse(n.out);
    CHECK(j["verdict"] == "converged");
    CHECK(j["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));

    const auto bundle = run({"report", "--inputs", lindelof.string()});
    CHECK(bundle.code == exit_ok);
    CHECK(nlohmann::json::parse(bundle.out)["reports"].size() == 1);
}

TEST_CASE("installed binary agrees with the in-process dispatcher")
{
    const char *cli = std::getenv("FOCKZERO_CLI");
    if (cli == nullptr) return;
    const auto out = scratch_dir() / "bin.json";
    const std::string cmd = std::string(cli) + " gen --family integers --count 5 > " + out.string();
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(slurp(out) == run({"gen", "--family", "integers", "--count", "5"}).out);
    const std::string bad = std::string(cli) + " nonsense > /dev/null 2>&1";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == exit_usage);
}
