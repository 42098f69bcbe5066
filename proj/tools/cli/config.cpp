#include "config.hpp"

#include "hwzak/io.hpp"

#include <cmath>
#include <fstream>

namespace hwzak::cli {
namespace {

using nlohmann::json;

const double kSqrtTwoPi = std::sqrt(kTwoPi);

template <class T>
T opt(const json& j, const char* key, T fallback)
{
    if (!j.is_object() || !j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: field '") + key + "' has the wrong type");
    }
}

void require_object(const json& j, const char* where)
{
    if (!j.is_object()) throw ConfigError(std::string("config: '") + where + "' must be an object");
}

GridSpec default_grid(Command c)
{
    switch (c) {
    case Command::Sample: return GridSpec::from_cells(16, 256, 1.0);
    case Command::Lattice:
    case Command::Wigner: return GridSpec::from_cells(32, 16, kSqrtTwoPi);
    default: return GridSpec::from_cells(32, 32, kSqrtTwoPi);
    }
}

GridSpec parse_grid(const json& j, Command c)
{
    if (j.is_null()) return default_grid(c);
    require_object(j, "grid");
    try {
        if (j.contains("N")) {
            if (!j.contains("L") || !j.contains("dq")) throw ConfigError("config: grid {N, L, dq} needs all three fields");
            return GridSpec::from_spacing(j.at("N").get<std::size_t>(), j.at("L").get<std::size_t>(), j.at("dq").get<double>());
        }
        if (!j.contains("L") || !j.contains("M")) throw ConfigError("config: grid needs {L, M, q0} or {N, L, dq}");
        return GridSpec::from_cells(j.at("L").get<std::size_t>(), j.at("M").get<std::size_t>(), opt(j, "q0", kSqrtTwoPi));
    } catch (const json::exception&) {
        throw ConfigError("config: grid fields must be numbers (L, M, N non-negative integers)");
    } catch (const GridMismatch& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

Source parse_source(const json& j, const char* where, const char* default_kind)
{
    Source s;
    if (j.is_null()) {
        s.kind = default_kind;
        return s;
    }
    require_object(j, where);
    s.file = opt<std::string>(j, "file", "");
    s.kind = opt<std::string>(j, "kind", s.file.empty() ? default_kind : "file");
    if (j.contains("params")) {
        require_object(j.at("params"), "params");
        s.params = j.at("params");
    }
    return s;
}

// p0 directly or as a fraction of 2 pi / q0.
double parse_p0(const json& j, double p_cell, const char* where)
{
    if (j.contains("p0")) return opt(j, "p0", 0.0);
    if (j.contains("p0_fraction")) return opt(j, "p0_fraction", 0.0) * p_cell;
    throw ConfigError(std::string("config: ") + where + " needs p0 or p0_fraction");
}

json source_json(const Source& s)
{
    if (!s.file.empty()) return {{"kind", "file"}, {"file", s.file}};
    return {{"kind", s.kind}, {"params", s.params}};
}

const std::vector<std::string> kSignalKinds = {"gaussian", "coherent", "mixture", "random_mixture",
                                               "two_tone", "comb", "smoothed_comb", "file"};
const std::vector<std::string> kFiducialKinds = {"gaussian", "comb", "smoothed_comb", "sech",
                                                 "bandlimited", "pure_phase", "inband_zero", "file"};

void check_kind(const std::string& kind, const std::vector<std::string>& allowed, const char* where)
{
    for (const auto& k : allowed)
        if (k == kind) return;
    std::string list;
    for (const auto& k : allowed) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError(std::string("config: unknown ") + where + " kind '" + kind + "' (expected one of " + list + ")");
}

Signal read_signal_file(const std::string& path, const GridSpec& g)
{
    const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    Signal s = csv ? read_signal_csv(path, g.L()) : read_signal_json(path);
    if (!s.grid.same_as(g, 1e-9))
        throw ConfigError("signal file " + path + " was written on a different grid than the configured one");
    return Signal(g, s.values);
}

} // namespace

const char* to_string(Command c)
{
    switch (c) {
    case Command::Zak: return "zak";
    case Command::Sample: return "sample";
    case Command::Lattice: return "lattice";
    case Command::Wigner: return "wigner";
    case Command::Poisson: return "poisson";
    }
    return "?";
}

double default_tolerance(Command c)
{
    switch (c) {
    case Command::Zak: return 1e-10;
    case Command::Sample: return 1e-8;
    case Command::Lattice: return 1e-8;
    case Command::Wigner: return 1e-10;
    case Command::Poisson: return 1e-10;
    }
    return 1e-10;
}

RunConfig parse_config(Command c, const json& j, const std::string& out_dir, std::uint64_t seed, std::optional<double> tol)
{
    require_object(j, "top level");
    RunConfig cfg;
    cfg.command = c;
    cfg.out_dir = out_dir;
    cfg.seed = seed;
    cfg.tol = tol.value_or(opt(j, "tol", default_tolerance(c)));
    if (!(cfg.tol >= 0.0)) throw ConfigError("config: tolerance must be non-negative");

    cfg.grid = parse_grid(j.value("grid", json()), c);
    const GridSpec& g = cfg.grid;

    const char* default_signal = c == Command::Wigner ? "coherent" : (c == Command::Poisson ? "random_mixture" : "gaussian");
    cfg.signal = parse_source(j.value("signal", json()), "signal", default_signal);
    if (c == Command::Sample && !j.contains("signal")) cfg.signal.params = {{"width", 10.0}};
    check_kind(cfg.signal.kind, kSignalKinds, "signal");

    if (j.contains("band") || c == Command::Sample) {
        const json b = j.value("band", json{{"p0_fraction", 0.5}});
        require_object(b, "band");
        cfg.band = BandSpec{parse_p0(b, g.p_cell(), "band"), opt<long long>(b, "m", 0)};
        band_range(g, *cfg.band); // commensurability and range
    }

    if (c == Command::Sample) {
        if (cfg.band->m != 0) throw ConfigError("config: sampling needs the centred band, m = 0");
        const json s = j.value("sample", json::object());
        require_object(s, "sample");
        cfg.sample.q_offset = opt(s, "q_offset", 0.0);
        cfg.sample.file = opt<std::string>(s, "file", "");
        cfg.sample.project = opt(s, "project", true);
        cfg.sample.polys = opt<std::vector<std::vector<double>>>(s, "polynomials", {{1.0}, {0.0, 1.0}, {0.0, 0.0, 1.0}});
        for (const auto& p : cfg.sample.polys)
            if (p.empty() || p.size() > 5) throw ConfigError("config: dependence polynomials need 1 to 5 coefficients");
        const double steps = cfg.sample.q_offset / g.dq();
        if (std::abs(steps - std::round(steps)) > 1e-9)
            throw ConfigError("config: sample.q_offset " + std::to_string(cfg.sample.q_offset) +
                              " is not a multiple of dq = " + std::to_string(g.dq()));
        if (std::abs(cfg.sample.q_offset) > g.q0() / 2.0 + 1e-12)
            throw ConfigError("config: sample.q_offset must lie in [-q0/2, q0/2]");
    }

    if (c == Command::Lattice) {
        const json l = j.value("lattice", json::object());
        require_object(l, "lattice");
        LatticeOptions lo;
        lo.spec.q0 = opt(l, "q0", g.q0());
        lo.spec.p0 = (l.contains("p0") || l.contains("p0_fraction")) ? parse_p0(l, kTwoPi / lo.spec.q0, "lattice")
                                                                     : kTwoPi / lo.spec.q0;
        lo.spec.n_min = opt<long long>(l, "n_min", -4);
        lo.spec.n_max = opt<long long>(l, "n_max", 3);
        lo.spec.m_min = opt<long long>(l, "m_min", -4);
        lo.spec.m_max = opt<long long>(l, "m_max", 3);
        lo.fiducial = parse_source(l.value("fiducial", json()), "fiducial", "gaussian");
        check_kind(lo.fiducial.kind, kFiducialKinds, "fiducial");
        lo.reconstruct = opt(l, "reconstruct", false);
        if (lo.spec.n_max < lo.spec.n_min || lo.spec.m_max < lo.spec.m_min)
            throw ConfigError("config: lattice index ranges are empty");
        if (lo.spec.q0 * lo.spec.p0 > kTwoPi * (1.0 + 1e-12))
            throw ConfigError("config: lattice q0 p0 = " + std::to_string(lo.spec.q0 * lo.spec.p0) +
                              " exceeds 2 pi; such a lattice is not total");
        if (lo.spec.n_count() * lo.spec.m_count() > 4096) throw ConfigError("config: lattice larger than 64 x 64");
        to_grid_steps(g, PhasePoint{lo.spec.q0, lo.spec.p0});
        cfg.lattice = lo;
    }

    if (c == Command::Wigner) {
        const json w = j.value("wigner", json::object());
        require_object(w, "wigner");
        cfg.wigner.format = opt<std::string>(w, "format", "csv");
        if (cfg.wigner.format != "csv" && cfg.wigner.format != "binary")
            throw ConfigError("config: wigner.format must be 'csv' or 'binary'");
        if (w.contains("comb_epsilon")) cfg.wigner.comb_epsilon = opt(w, "comb_epsilon", 0.0);
        if (g.N() > 2048) throw ConfigError("config: wigner needs N <= 2048");
    }

    if (c == Command::Poisson) {
        const json p = j.value("poisson", json::object());
        require_object(p, "poisson");
        cfg.poisson_points = opt<std::size_t>(p, "points", 100);
    }

    json resolved = {{"command", to_string(c)},
                     {"grid", {{"N", g.N()}, {"L", g.L()}, {"M", g.M()}, {"dq", g.dq()}, {"q0", g.q0()}}},
                     {"signal", source_json(cfg.signal)},
                     {"seed", cfg.seed},
                     {"tol", cfg.tol}};
    if (cfg.band) resolved["band"] = {{"p0", cfg.band->p0}, {"m", cfg.band->m}};
    if (c == Command::Sample)
        resolved["sample"] = {{"q_offset", cfg.sample.q_offset}, {"file", cfg.sample.file},
                              {"project", cfg.sample.project}, {"polynomials", cfg.sample.polys}};
    if (cfg.lattice)
        resolved["lattice"] = {{"q0", cfg.lattice->spec.q0}, {"p0", cfg.lattice->spec.p0},
                               {"n_min", cfg.lattice->spec.n_min}, {"n_max", cfg.lattice->spec.n_max},
                               {"m_min", cfg.lattice->spec.m_min}, {"m_max", cfg.lattice->spec.m_max},
                               {"fiducial", source_json(cfg.lattice->fiducial)},
                               {"reconstruct", cfg.lattice->reconstruct}};
    if (c == Command::Wigner) {
        resolved["wigner"] = {{"format", cfg.wigner.format}};
        if (cfg.wigner.comb_epsilon) resolved["wigner"]["comb_epsilon"] = *cfg.wigner.comb_epsilon;
    }
    if (c == Command::Poisson) resolved["poisson"] = {{"points", cfg.poisson_points}};
    cfg.resolved = resolved;
    return cfg;
}

RunConfig load_config(Command c, const std::string& path, const std::string& out_dir, std::uint64_t seed,
                      std::optional<double> tol)
{
    if (path.empty()) return parse_config(c, json::object(), out_dir, seed, tol);
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0)
        throw ConfigError("config: TOML is not supported, please supply the configuration as JSON");
    json j;
    try {
        j = read_json(path);
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
    return parse_config(c, j, out_dir, seed, tol);
}

Signal make_signal(const RunConfig& cfg, std::mt19937_64& rng)
{
    const GridSpec& g = cfg.grid;
    const Source& s = cfg.signal;
    const json& p = s.params;
    if (s.kind == "file") return read_signal_file(s.file, g);
    if (s.kind == "gaussian")
        return gaussian_mixture(g, {{opt(p, "center", 0.0), opt(p, "width", 1.0), opt(p, "momentum", 0.0), {1.0, 0.0}}});
    if (s.kind == "coherent") return standard_cs(g, opt(p, "q", 0.0), opt(p, "p", 0.0));
    if (s.kind == "mixture") {
        std::vector<GaussianComponent> parts;
        for (const auto& c : opt<json>(p, "components", json::array()))
            parts.push_back({opt(c, "center", 0.0), opt(c, "width", 1.0), opt(c, "momentum", 0.0),
                             {opt(c, "re", 1.0), opt(c, "im", 0.0)}});
        if (parts.empty()) throw ConfigError("config: mixture signal needs at least one component");
        return gaussian_mixture(g, parts);
    }
    if (s.kind == "random_mixture") {
        const auto count = opt<std::size_t>(p, "count", 3);
        const double spread = opt(p, "spread", g.Q() / 16.0);
        const double wmin = opt(p, "width_min", 0.8), wmax = opt(p, "width_max", 2.0);
        const double kmax = opt(p, "momentum_max", 1.0);
        std::uniform_real_distribution<double> u(-1.0, 1.0), w(wmin, wmax);
        std::vector<GaussianComponent> parts;
        for (std::size_t i = 0; i < count; ++i) {
            const double c = u(rng) * spread, width = w(rng), k = u(rng) * kmax;
            parts.push_back({c, width, k, {u(rng), u(rng)}});
        }
        return gaussian_mixture(g, parts);
    }
    if (s.kind == "two_tone") {
        // Two plane waves at fractions of 2 pi / q0 under a broad envelope.
        const double f1 = opt(p, "f1", 0.1) * g.p_cell(), f2 = opt(p, "f2", 0.7) * g.p_cell();
        const double width = opt(p, "width", g.Q() / 16.0);
        return gaussian_mixture(g, {{0.0, width, f1, {1.0, 0.0}}, {0.0, width, f2, {1.0, 0.0}}});
    }
    if (s.kind == "comb") return fiducial_comb(g).signal;
    if (s.kind == "smoothed_comb") return fiducial_smoothed_comb(g, opt(p, "epsilon", g.q0() / 20.0)).signal;
    throw ConfigError("config: unknown signal kind '" + s.kind + "'");
}

FiducialVector make_fiducial(const GridSpec& g, const Source& src)
{
    const json& p = src.params;
    if (src.kind == "file") return FiducialVector::from_signal(read_signal_file(src.file, g), "file");
    if (src.kind == "gaussian") return fiducial_gaussian(g);
    if (src.kind == "comb") return fiducial_comb(g);
    if (src.kind == "smoothed_comb") return fiducial_smoothed_comb(g, opt(p, "epsilon", g.q0() / 20.0));
    if (src.kind == "sech") return fiducial_sech(g);
    if (src.kind == "bandlimited") return fiducial_bandlimited(g, opt(p, "width_fraction", 0.75));
    if (src.kind == "pure_phase") return fiducial_pure_phase(g, opt(p, "amplitude", 1.0));
    if (src.kind == "inband_zero") return fiducial_inband_zero(g, opt(p, "p_star", 0.5));
    throw ConfigError("config: unknown fiducial kind '" + src.kind + "'");
}

} // namespace hwzak::cli
