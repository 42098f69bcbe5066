#include <doctest.h>

#include "cli/config.hpp"
#include "hwzak/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace hwzak;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("hwzak_cli_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string cli_path()
{
    const char* p = std::getenv("HWZAK_CLI");
    return p != nullptr ? p : "hwzak";
}

int run(const std::string& args)
{
    const std::string cmd = "\"" + cli_path() + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const TempDir& dir, const std::string& name, const json& j)
{
    const std::string path = dir / name;
    std::ofstream(path) << j.dump();
    return path;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("config parsing")
{
    const cli::RunConfig c = cli::parse_config(cli::Command::Sample, json::object(), "out", 7, std::nullopt);
    CHECK(c.seed == 7);
    CHECK(c.tol == cli::default_tolerance(cli::Command::Sample));
    REQUIRE(c.band.has_value());
    CHECK(c.band->p0 == doctest::Approx(c.grid.p_cell() / 2));
    CHECK(c.resolved["command"] == "sample");
    CHECK(c.resolved.contains("grid"));

    CHECK_THROWS_AS(cli::parse_config(cli::Command::Zak, json{{"grid", {{"L", 7}, {"M", 8}}}}, ".", 0, std::nullopt), Error);
    CHECK_THROWS_AS(cli::parse_config(cli::Command::Zak, json{{"signal", {{"kind", "nonsense"}}}}, ".", 0, std::nullopt),
                    cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_config(cli::Command::Lattice, json{{"lattice", {{"p0_fraction", 1.5}}}}, ".", 0, std::nullopt),
                    cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_config(cli::Command::Sample, json{{"sample", {{"q_offset", 0.01}}}}, ".", 0, std::nullopt),
                    cli::ConfigError);
    CHECK_THROWS_AS(cli::parse_config(cli::Command::Sample, json{{"band", {{"p0_fraction", 0.5}, {"m", 1}}}}, ".", 0, std::nullopt),
                    cli::ConfigError);
    CHECK_THROWS_AS(cli::load_config(cli::Command::Zak, "x.toml", ".", 0, std::nullopt), cli::ConfigError);
}

TEST_CASE("zak command: demo, bad config, zero tolerance")
{
    TempDir dir;
    CHECK(run("zak --seed 1 --out " + dir / "a") == 0);
    const json rep = read_json(dir / "a/zak_report.json");
    CHECK(rep["command"] == "zak");
    CHECK(rep["version"] == HWZAK_VERSION);
    CHECK(rep["config"]["seed"] == 1);
    CHECK(rep["verification"]["passed"] == true);
    CHECK(std::abs(rep["results"]["zero"]["winding"].get<int>()) == 1);
    CHECK(fs::exists(dir / "a/zak_angular.json"));
    CHECK(fs::exists(dir / "a/zak_round.json"));
    CHECK(fs::exists(dir / "a/zak_angular.csv"));

    std::ofstream(dir / "bad.json") << "{ grid: ";
    CHECK(run("zak --seed 1 --config " + dir / "bad.json" + " --out " + dir / "b") == 1);
    CHECK(run("zak --seed 1 --tol 0 --out " + dir / "c") == 2);
    CHECK(run("zak --out " + dir / "d") == 1);           // --seed is required
    CHECK(run("zak --seed 1 --config " + dir / "missing.json") == 1);
    CHECK(run("frobnicate --seed 1") == 1);
}

TEST_CASE("reports are deterministic for a fixed seed")
{
    TempDir dir;
    const std::string cfg = config(dir, "p.json", {{"poisson", {{"points", 50}}}});
    REQUIRE(run("poisson --seed 9 --config " + cfg + " --out " + dir / "a") == 0);
    REQUIRE(run("poisson --seed 9 --config " + cfg + " --out " + dir / "b") == 0);
    CHECK(slurp(dir / "a/poisson_report.json") == slurp(dir / "b/poisson_report.json"));
    CHECK(slurp(dir / "a/poisson_points.csv") == slurp(dir / "b/poisson_points.csv"));
    REQUIRE(run("poisson --seed 10 --config " + cfg + " --out " + dir / "c") == 0);
    CHECK(slurp(dir / "a/poisson_points.csv") != slurp(dir / "c/poisson_points.csv"));
    CHECK(read_json(dir / "a/poisson_report.json")["results"]["points"] == 50);
}

TEST_CASE("sample command")
{
    TempDir dir;
    CHECK(run("sample --seed 2 --out " + dir / "a") == 0);
    const json rep = read_json(dir / "a/sample_report.json");
    CHECK(rep["results"]["cauchy_sinc_agreement"].get<double>() < 1e-8);
    CHECK(rep["results"]["sinc"]["l2_error"].get<double>() < 1e-8);
    CHECK(rep["results"]["cauchy"]["l2_error"].get<double>() < 1e-8);
    const json rs = read_json(dir / "a/reconstruction_sinc.json");
    for (const char* key : {"formula", "p0", "q0", "q_offset", "max_error", "l2_error"}) CHECK(rs.contains(key));
    CHECK(fs::exists(dir / "a/samples.csv"));

    // reconstruct from the file the first run wrote
    const std::string from_file = config(dir, "f.json", {{"sample", {{"file", dir / "a/samples.csv"}}}});
    CHECK(run("sample --seed 2 --config " + from_file + " --out " + dir / "b") == 0);

    const std::string wide = config(dir, "w.json", {{"band", {{"p0_fraction", 1.5}}}});
    CHECK(run("sample --seed 2 --config " + wide + " --out " + dir / "c") == 2);
    CHECK(read_json(dir / "c/sample_report.json")["results"]["error"]["type"] == "BandwidthTooLarge");

    std::ofstream(dir / "empty.csv") << "";
    const std::string empty = config(dir, "e.json", {{"sample", {{"file", dir / "empty.csv"}}}});
    CHECK(run("sample --seed 2 --config " + empty + " --out " + dir / "d") == 1);
}

TEST_CASE("lattice command")
{
    TempDir dir;
    const json vn = {{"grid", {{"L", 16}, {"M", 16}}}, {"lattice", {{"n_min", -4}, {"n_max", 3}, {"m_min", -4}, {"m_max", 3}}}};
    CHECK(run("lattice --seed 3 --config " + config(dir, "vn.json", vn) + " --out " + dir / "a") == 0);
    const json rep = read_json(dir / "a/lattice_report.json");
    CHECK(rep["results"]["states"] == 64);
    CHECK(rep["results"]["zak_factorization_residual"].get<double>() < 1e-10);
    CHECK(fs::exists(dir / "a/gram_report.json"));
    CHECK(fs::exists(dir / "a/singular_values.csv"));

    const json pp = {{"lattice", {{"fiducial", {{"kind", "pure_phase"}}}}}};
    CHECK(run("lattice --seed 3 --config " + config(dir, "pp.json", pp) + " --out " + dir / "b") == 0);
    CHECK(read_json(dir / "b/lattice_report.json")["results"]["orthonormality"]["orthonormal"] == true);

    const json coarse = {{"lattice", {{"p0_fraction", 2.0}}}};
    CHECK(run("lattice --seed 3 --config " + config(dir, "c.json", coarse) + " --out " + dir / "c") == 1);

    const json rec = {{"grid", {{"L", 8}, {"M", 16}}},
                      {"signal", {{"kind", "random_mixture"}}},
                      {"lattice", {{"n_min", -8}, {"n_max", 7}, {"m_min", -1}, {"m_max", 1}, {"reconstruct", true}}}};
    CHECK(run("lattice --seed 3 --config " + config(dir, "r.json", rec) + " --out " + dir / "d") == 0);
    CHECK(read_json(dir / "d/lattice_report.json")["results"]["reconstruction"]["relative_error"].get<double>() < 1e-6);
}

TEST_CASE("wigner command")
{
    TempDir dir;
    CHECK(run("wigner --seed 4 --out " + dir / "a") == 0);
    CHECK(fs::exists(dir / "a/wigner.csv"));

    const json bin = {{"wigner", {{"format", "binary"}}}};
    CHECK(run("wigner --seed 4 --config " + config(dir, "b.json", bin) + " --out " + dir / "b") == 0);
    CHECK(fs::exists(dir / "b/wigner.bin"));
    CHECK(read_json(dir / "b/wigner.json")["shape"].size() == 2);

    const json comb = {{"wigner", {{"comb_epsilon", std::sqrt(2.0 * 3.141592653589793) / 20}}}};
    CHECK(run("wigner --seed 4 --config " + config(dir, "c.json", comb) + " --out " + dir / "c") == 0);
    CHECK(read_json(dir / "c/wigner_report.json")["results"]["comb"]["signs_ok"] == true);

    const json fmt = {{"wigner", {{"format", "npy"}}}};
    CHECK(run("wigner --seed 4 --config " + config(dir, "d.json", fmt) + " --out " + dir / "d") == 1);
}

TEST_CASE("poisson command")
{
    TempDir dir;
    CHECK(run("poisson --seed 5 --out " + dir / "a") == 0);
    std::ifstream in(dir / "a/poisson_points.csv");
    std::size_t lines = 0;
    for (std::string l; std::getline(in, l);) ++lines;
    CHECK(lines == 101);
    CHECK(run("poisson --seed 5 --tol 0 --out " + dir / "b") == 2);
}
