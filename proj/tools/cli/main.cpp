#include "commands.hpp"
#include "config.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace hwzak::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Zak transform, sampling and coherent-state lattice toolkit"};
    app.set_version_flag("--version", HWZAK_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    double tol = -1.0;

    struct Entry {
        Command command;
        const char* name;
        const char* help;
    };
    const Entry entries[] = {
        {Command::Zak, "zak", "Zak transform in both conventions, zero location, quasi-periodicity checks"},
        {Command::Sample, "sample", "band projection, sampling and sinc/Cauchy reconstruction"},
        {Command::Lattice, "lattice", "coherent-state lattice: totality, orthonormality, Gram spectrum"},
        {Command::Wigner, "wigner", "doubled-grid Wigner distribution and comb lattice check"},
        {Command::Poisson, "poisson", "Poisson summation residual at random rectangle points"},
    };
    std::vector<std::pair<CLI::App*, Command>> subs;
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--seed", seed, "seed for every random choice")->required();
        sub->add_option("--tol", tol, "verification tolerance (residual must be strictly below)");
        subs.emplace_back(sub, e.command);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    Command command = Command::Zak;
    for (const auto& [sub, c] : subs)
        if (sub->parsed()) command = c;

    try {
        const std::optional<double> tol_override = tol >= 0.0 ? std::optional<double>(tol) : std::nullopt;
        const RunConfig cfg = load_config(command, config_path, out_dir, seed, tol_override);
        return run_command(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
