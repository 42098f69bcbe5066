#pragma once

#include "hwzak/coherent.hpp"
#include "hwzak/errors.hpp"
#include "hwzak/lattice.hpp"
#include "hwzak/sampling.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hwzak::cli {

enum class Command { Zak, Sample, Lattice, Wigner, Poisson };

const char* to_string(Command c);

/// Rejected configuration; maps to exit code 1.
class ConfigError : public Error { using Error::Error; };

/// Built-in factory {kind, params} or a file.
struct Source {
    std::string kind;
    nlohmann::json params = nlohmann::json::object();
    std::string file;
};

struct SampleOptions {
    double q_offset = 0.0;
    std::string file;                       ///< reconstruct from this sample CSV instead of a signal
    bool project = true;                    ///< project the signal into the band first
    std::vector<std::vector<double>> polys; ///< dependence-relation polynomials
};

struct LatticeOptions {
    LatticeSpec spec;
    Source fiducial;
    bool reconstruct = false; ///< projected reconstruction of the configured signal
};

struct WignerOptions {
    std::string format = "csv"; ///< csv | binary
    std::optional<double> comb_epsilon;
};

struct RunConfig {
    Command command = Command::Zak;
    GridSpec grid = GridSpec::from_cells(32, 32, 2.5066282746310002);
    Source signal;
    std::optional<BandSpec> band;
    SampleOptions sample;
    std::optional<LatticeOptions> lattice;
    WignerOptions wigner;
    std::size_t poisson_points = 100;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    double tol = 0.0;
    nlohmann::json resolved; ///< every setting after defaults, echoed into reports
};

double default_tolerance(Command c);

/// Parses and validates; throws ConfigError (or a library error) before any computation.
RunConfig parse_config(Command c, const nlohmann::json& j, const std::string& out_dir, std::uint64_t seed,
                       std::optional<double> tol);

/// Reads JSON from disk (empty path: all defaults). TOML is rejected.
RunConfig load_config(Command c, const std::string& path, const std::string& out_dir, std::uint64_t seed,
                      std::optional<double> tol);

Signal make_signal(const RunConfig& cfg, std::mt19937_64& rng);
FiducialVector make_fiducial(const GridSpec& g, const Source& src);

} // namespace hwzak::cli
