#include "commands.hpp"

#include "hwzak/displacement.hpp"
#include "hwzak/fourier.hpp"
#include "hwzak/io.hpp"
#include "hwzak/wigner.hpp"
#include "hwzak/zak.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

namespace hwzak::cli {
namespace {

using nlohmann::json;

std::string out_path(const RunConfig& cfg, const std::string& name)
{
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.out_dir + ": " + ec.message());
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

json finite_or_string(double v) { return std::isfinite(v) ? json(v) : json(std::isnan(v) ? "nan" : "inf"); }

// Writes <command>_report.json and returns the exit code for the residual.
int finish(const RunConfig& cfg, json results, double residual, std::ostream& log, const WarningSink& warnings = {})
{
    json warn_list = json::array();
    for (const auto& w : warnings) warn_list.push_back({{"code", w.code}, {"message", w.message}});
    const bool passed = residual < cfg.tol; // NaN fails
    json report = {{"command", to_string(cfg.command)},
                   {"version", HWZAK_VERSION},
                   {"config", cfg.resolved},
                   {"results", std::move(results)},
                   {"verification", {{"residual", finite_or_string(residual)}, {"tol", cfg.tol}, {"passed", passed}}},
                   {"warnings", warn_list}};
    write_json(out_path(cfg, std::string(to_string(cfg.command)) + "_report.json"), report);
    char line[160];
    std::snprintf(line, sizeof line, "%s: residual %.3e %s tol %.3e: %s\n", to_string(cfg.command), residual,
                  passed ? "<" : ">=", cfg.tol, passed ? "ok" : "FAILED");
    log << line;
    return passed ? kOk : kVerificationFailed;
}

double rel_l2(const CVec& a, const CVec& b)
{
    double d = 0.0, n = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += std::norm(a[i] - b[i]);
        n += std::norm(b[i]);
    }
    return n > 0.0 ? std::sqrt(d / n) : std::sqrt(d);
}

double rel_max(const CVec& a, const CVec& b)
{
    double d = 0.0, n = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
        n = std::max(n, std::abs(b[i]));
    }
    return n > 0.0 ? d / n : d;
}

void write_zak_csv(const std::string& path, const ZakArray& z)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "j,k,q,p,abs,arg\n";
    char buf[160];
    for (std::size_t j = 0; j < z.L(); ++j) {
        for (std::size_t k = 0; k < z.M(); ++k) {
            const cplx v = z.at(j, k);
            std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", j, k, z.q(static_cast<long long>(j)),
                          z.p(static_cast<long long>(k)), std::abs(v), std::arg(v));
            out << buf;
        }
    }
    if (!out) throw IoError("write to " + path + " failed");
}

json recon_report(const char* formula, double p0, const GridSpec& g, double q_offset, double max_err, double l2_err)
{
    return {{"formula", formula}, {"p0", p0}, {"q0", g.q0()}, {"q_offset", q_offset},
            {"max_error", finite_or_string(max_err)}, {"l2_error", finite_or_string(l2_err)}};
}

} // namespace

int cmd_zak(const RunConfig& cfg, std::ostream& log)
{
    std::mt19937_64 rng(cfg.seed);
    const Signal s = make_signal(cfg, rng);
    const ZakArray z = zak_forward(s);
    const ZakArray zr = zak_forward_round(s);

    const double norm_error = std::abs(z.norm2() - norm2(s.values));
    const double roundtrip = max_abs_diff(zak_to_signal(z).values, s.values);
    const double momentum_roundtrip = max_abs_diff(zak_inverse_momentum(z).values, fourier_forward(s).values);
    const double geometric = max_abs_diff(zr.values(), to_convention(z, ZakConvention::Round).values());
    const double qp_angular = quasiperiodicity_residual(z);
    const double qp_round = quasiperiodicity_residual(zr);
    const ZeroReport zero = locate_zero(z);
    const auto ops = zak_operator_check(s);

    write_zak_json(out_path(cfg, "zak_angular.json"), z);
    write_zak_json(out_path(cfg, "zak_round.json"), zr);
    write_zak_csv(out_path(cfg, "zak_angular.csv"), z);

    json results = {{"norm_error", norm_error},
                    {"roundtrip_error", roundtrip},
                    {"momentum_roundtrip_error", momentum_roundtrip},
                    {"geometric_phase_residual", geometric},
                    {"quasiperiodicity_residual", {{"angular", qp_angular}, {"round", qp_round}}},
                    {"zero", {{"q", zero.location.q}, {"p", zero.location.p}, {"min_abs", zero.min_abs},
                              {"max_abs", zero.max_abs}, {"winding", zero.winding}, {"discontinuous", zero.discontinuous}}},
                    {"operator_residual", {{"position", ops.first}, {"momentum", ops.second}}}};
    const double residual = std::max({norm_error, roundtrip, momentum_roundtrip, geometric, qp_angular, qp_round});
    return finish(cfg, results, residual, log);
}

int cmd_sample(const RunConfig& cfg, std::ostream& log)
{
    const GridSpec& g = cfg.grid;
    const BandSpec band = *cfg.band;
    std::mt19937_64 rng(cfg.seed);

    std::optional<Signal> truth;
    SampleSet samples{g, 0.0, 0, {}};
    if (!cfg.sample.file.empty()) {
        samples = read_samples_csv(cfg.sample.file, g);
    } else {
        Signal s = make_signal(cfg, rng);
        if (cfg.sample.project) s = bandlimit_project(s, band);
        truth = s;
        samples = extract_samples(s, cfg.sample.q_offset);
        write_samples_csv(out_path(cfg, "samples.csv"), samples);
    }

    json results = {{"p0", band.p0}, {"p0_limit", g.p_cell()}, {"q_offset", samples.q_offset}};
    Signal sinc = Signal::zeros(g);
    double consistency = 0.0;
    try {
        sinc = reconstruct_sinc(samples, band, g);
        consistency = consistency_residual(samples, band);
    } catch (const BandwidthTooLarge& e) {
        results["error"] = {{"type", "BandwidthTooLarge"}, {"message", e.what()}};
        log << "sample: " << e.what() << '\n';
        return finish(cfg, results, std::numeric_limits<double>::infinity(), log);
    }
    const Signal cauchy = reconstruct_cauchy(samples, g);
    write_signal_csv(out_path(cfg, "reconstruction_sinc.csv"), sinc);
    write_signal_csv(out_path(cfg, "reconstruction_cauchy.csv"), cauchy);

    const double agreement = rel_max(cauchy.values, sinc.values);
    double residual = consistency;
    results["consistency_residual"] = consistency;
    results["cauchy_sinc_agreement"] = agreement;
    json deps = json::array();
    for (const auto& p : cfg.sample.polys) deps.push_back({{"coefficients", p}, {"residual", dependence_residual(samples, p)}});
    results["dependence_residuals"] = deps;

    if (truth) {
        const double smax = rel_max(sinc.values, truth->values), sl2 = rel_l2(sinc.values, truth->values);
        const double cmax = rel_max(cauchy.values, truth->values), cl2 = rel_l2(cauchy.values, truth->values);
        write_json(out_path(cfg, "reconstruction_sinc.json"), recon_report("sinc", band.p0, g, samples.q_offset, smax, sl2));
        write_json(out_path(cfg, "reconstruction_cauchy.json"), recon_report("cauchy", band.p0, g, samples.q_offset, cmax, cl2));
        results["sinc"] = recon_report("sinc", band.p0, g, samples.q_offset, smax, sl2);
        results["cauchy"] = recon_report("cauchy", band.p0, g, samples.q_offset, cmax, cl2);
        residual = std::max({residual, sl2, cl2});
    }
    return finish(cfg, results, residual, log);
}

int cmd_lattice(const RunConfig& cfg, std::ostream& log)
{
    const GridSpec& g = cfg.grid;
    const LatticeOptions& lo = *cfg.lattice;
    const FiducialVector f = make_fiducial(g, lo.fiducial);
    const GCSLattice lat = build_lattice(f, lo.spec);

    const auto total = totality_test(f);
    const auto ortho = orthonormality_test(f);
    const GramReport gram = gram_analysis(lat);

    double norm_dev = 0.0;
    for (const auto& st : lat.states) norm_dev = std::max(norm_dev, std::abs(st.norm() - 1.0));

    json results = {{"fiducial", f.name},
                    {"states", lat.states.size()},
                    {"totality", {{"total", total.first}, {"min_abs_chi", total.second}}},
                    {"orthonormality", {{"orthonormal", ortho.first}, {"deviation", ortho.second}}},
                    {"gram", gram_to_json(gram)},
                    {"max_norm_deviation", norm_dev}};
    double residual = norm_dev;
    const bool implication_ok = !ortho.first || total.first;
    results["orthonormal_implies_total"] = implication_ok;
    if (!implication_ok) residual = std::numeric_limits<double>::infinity();

    // Zak factorisation (-1)^{mn} e^{-i n q0 p + 2 pi i m q / q0} chi0 on von Neumann lattices of the grid cell.
    const bool von_neumann = lat.step.a == static_cast<long long>(g.L()) && lat.step.b == static_cast<long long>(g.M());
    if (von_neumann) {
        double worst = 0.0;
        for (long long n = lo.spec.n_min; n <= lo.spec.n_max; ++n) {
            for (long long m = lo.spec.m_min; m <= lo.spec.m_max; ++m) {
                const ZakArray z = zak_forward(lat.state(n, m));
                for (std::size_t j = 0; j < g.L(); ++j) {
                    for (std::size_t k = 0; k < g.M(); ++k) {
                        const double q = z.q(static_cast<long long>(j)), p = z.p(static_cast<long long>(k));
                        const double sign = ((m * n) % 2 == 0) ? 1.0 : -1.0;
                        const cplx pred = sign * std::polar(1.0, -static_cast<double>(n) * g.q0() * p +
                                                                     kTwoPi * static_cast<double>(m) * q / g.q0()) *
                                          f.chi.at(j, k);
                        worst = std::max(worst, std::abs(pred - z.at(j, k)));
                    }
                }
            }
        }
        results["zak_factorization_residual"] = worst;
        residual = std::max(residual, worst);
    }

    WarningSink warnings;
    if (lo.reconstruct) {
        std::mt19937_64 rng(cfg.seed);
        const Signal raw = make_signal(cfg, rng);
        Signal psi = Signal::zeros(g);
        for (long long m = lo.spec.m_min; m <= lo.spec.m_max; ++m) {
            const Signal b = bandlimit_project(raw, BandSpec{lo.spec.p0, m});
            for (std::size_t j = 0; j < g.N(); ++j) psi.values[j] += b.values[j];
        }
        const ProjectedReconstruction rec = projected_reconstruct(lat, lattice_inner_products(lat, psi), &warnings);
        const double err = rel_l2(rec.signal.values, psi.values);
        json bands = json::array();
        for (const auto& b : rec.bands)
            bands.push_back({{"m", b.m}, {"condition", finite_or_string(b.condition)}, {"rank", b.rank},
                             {"ill_conditioned", b.ill_conditioned}});
        results["reconstruction"] = {{"relative_error", err}, {"ill_conditioned", rec.ill_conditioned}, {"bands", bands}};
        write_signal_csv(out_path(cfg, "reconstruction.csv"), rec.signal);
        residual = std::max(residual, err);
    }

    write_json(out_path(cfg, "gram_report.json"), gram_to_json(gram));
    write_singular_values_csv(out_path(cfg, "singular_values.csv"), gram);
    return finish(cfg, results, residual, log, warnings);
}

int cmd_wigner(const RunConfig& cfg, std::ostream& log)
{
    std::mt19937_64 rng(cfg.seed);
    const Signal s = make_signal(cfg, rng);
    const WignerArray w = wigner_transform(s);
    const MomentumSignal m = fourier_forward(s);

    // Marginals on the doubled grid: 2|psi|^2 at even a, 0 at odd a (ghost cancellation); same in p.
    const auto mq = wigner_marginal_q(w);
    const auto mp = wigner_marginal_p(w);
    double marginal_err = 0.0, total = 0.0;
    for (std::size_t a = 0; a < w.size(); ++a) {
        const double eq = (a % 2 == 0) ? 2.0 * std::norm(s.wavefunction(a / 2)) : 0.0;
        const double ep = (a % 2 == 0) ? 2.0 * std::norm(m.wavefunction(a / 2)) : 0.0;
        marginal_err = std::max({marginal_err, std::abs(mq[a] - eq), std::abs(mp[a] - ep)});
        total += mq[a] * s.grid.dq() / 2.0;
    }
    const double total_err = std::abs(total - norm2(s.values));

    if (cfg.wigner.format == "csv") write_wigner_csv(out_path(cfg, "wigner.csv"), w);
    else write_wigner_binary(out_path(cfg, "wigner"), w);

    json results = {{"imag_residue", w.imag_residue}, {"marginal_error", marginal_err}, {"total_error", total_err},
                    {"size", w.size()}};
    double residual = std::max({w.imag_residue, marginal_err, total_err});
    if (cfg.wigner.comb_epsilon) {
        const CombWignerReport rep = comb_wigner_check(cfg.grid, *cfg.wigner.comb_epsilon);
        json peaks = json::array();
        for (const auto& p : rep.peaks)
            peaks.push_back({{"m", p.m}, {"n", p.n}, {"value", p.value}, {"offset_a", p.offset_a},
                             {"offset_b", p.offset_b}, {"sign_ok", p.sign_ok}});
        results["comb"] = {{"epsilon", rep.epsilon}, {"signs_ok", rep.signs_ok}, {"extrema_located", rep.extrema_located},
                           {"q_periodicity", rep.q_periodicity}, {"p_periodicity_smoothed", rep.p_periodicity_smoothed},
                           {"q_periodicity_exact", rep.q_periodicity_exact}, {"p_periodicity_exact", rep.p_periodicity_exact},
                           {"peak_ratio", rep.peak_ratio}, {"peaks", peaks}};
        if (!rep.signs_ok || !rep.extrema_located) residual = std::numeric_limits<double>::infinity();
        residual = std::max({residual, rep.q_periodicity, rep.q_periodicity_exact, rep.p_periodicity_exact});
    }
    return finish(cfg, results, residual, log);
}

int cmd_poisson(const RunConfig& cfg, std::ostream& log)
{
    const GridSpec& g = cfg.grid;
    std::mt19937_64 rng(cfg.seed);
    const Signal s = make_signal(cfg, rng);
    std::uniform_int_distribution<long long> uj(0, static_cast<long long>(g.L())), uk(0, static_cast<long long>(g.M()));

    std::ofstream csv(out_path(cfg, "poisson_points.csv"));
    if (!csv) throw IoError("cannot write poisson_points.csv");
    csv << "q,p,residual\n";
    double worst = 0.0;
    char buf[100];
    for (std::size_t i = 0; i < cfg.poisson_points; ++i) {
        const double q = static_cast<double>(uj(rng) - static_cast<long long>(g.L() / 2)) * g.dq();
        const double p = static_cast<double>(uk(rng) - static_cast<long long>(g.M() / 2)) * g.dp();
        const double r = poisson_residual(s, q, p);
        worst = std::max(worst, r);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", q, p, r);
        csv << buf;
    }
    if (!csv) throw IoError("write to poisson_points.csv failed");
    json results = {{"points", cfg.poisson_points}, {"max_residual", worst}};
    return finish(cfg, results, worst, log);
}

int run_command(const RunConfig& cfg, std::ostream& log)
{
    switch (cfg.command) {
    case Command::Zak: return cmd_zak(cfg, log);
    case Command::Sample: return cmd_sample(cfg, log);
    case Command::Lattice: return cmd_lattice(cfg, log);
    case Command::Wigner: return cmd_wigner(cfg, log);
    case Command::Poisson: return cmd_poisson(cfg, log);
    }
    return kConfigError;
}

} // namespace hwzak::cli
