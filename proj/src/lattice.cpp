#include "hwzak/lattice.hpp"

#include "hwzak/displacement.hpp"
#include "hwzak/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hwzak {
namespace {

constexpr double kRankTol = 1e-8;
constexpr double kIllConditioned = 1e10;

} // namespace

const Signal& GCSLattice::state(long long n, long long m) const
{
    if (n < spec.n_min || n > spec.n_max || m < spec.m_min || m > spec.m_max)
        throw InvalidLattice("lattice: label (" + std::to_string(n) + ", " + std::to_string(m) + ") out of range");
    return states[static_cast<std::size_t>(n - spec.n_min) * spec.m_count() + static_cast<std::size_t>(m - spec.m_min)];
}

GCSLattice build_lattice(const FiducialVector& f, const LatticeSpec& spec, LatticeCheck check)
{
    if (spec.n_max < spec.n_min || spec.m_max < spec.m_min) throw InvalidLattice("lattice: empty index range");
    if (!(spec.q0 > 0.0) || !(spec.p0 > 0.0)) throw InvalidLattice("lattice: q0 and p0 must be positive");
    if (check == LatticeCheck::Enforce && spec.q0 * spec.p0 > kTwoPi * (1.0 + 1e-12))
        throw InvalidLattice("lattice: q0 p0 = " + std::to_string(spec.q0 * spec.p0) + " exceeds 2 pi");
    const GridSteps step = to_grid_steps(f.signal.grid, PhasePoint{spec.q0, spec.p0});

    GCSLattice lat{spec, f, step, {}};
    lat.states.reserve(spec.n_count() * spec.m_count());
    for (long long n = spec.n_min; n <= spec.n_max; ++n)
        for (long long m = spec.m_min; m <= spec.m_max; ++m)
            lat.states.push_back(displace(f.signal, GridSteps{n * step.a, m * step.b}));
    return lat;
}

std::pair<bool, double> totality_test(const FiducialVector& f)
{
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& v : f.chi.values()) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    return {lo > 1e-6 * hi, lo};
}

std::pair<bool, double> orthonormality_test(const FiducialVector& f)
{
    const double c = std::sqrt(kTwoPi);
    double dev = 0.0;
    for (const auto& v : f.chi.values()) dev = std::max(dev, std::abs(std::abs(v) * c - 1.0));
    return {dev < 1e-8, dev};
}

GramReport gram_analysis(const GCSLattice& lat)
{
    const std::size_t n_rows = lat.fiducial.signal.grid.N();
    const std::size_t n_cols = lat.states.size();
    Eigen::MatrixXcd synth(n_rows, n_cols);
    for (std::size_t c = 0; c < n_cols; ++c)
        for (std::size_t r = 0; r < n_rows; ++r) synth(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = lat.states[c].values[r];

    GramReport rep;
    rep.gram = synth.adjoint() * synth;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(synth);
    rep.singular_values = svd.singularValues();
    const double smax = rep.singular_values.size() > 0 ? rep.singular_values(0) : 0.0;
    double smin = smax;
    for (Eigen::Index i = 0; i < rep.singular_values.size(); ++i) {
        if (rep.singular_values(i) > kRankTol * smax) {
            ++rep.numerical_rank;
            smin = rep.singular_values(i);
        }
    }
    rep.frame_upper = smax * smax;
    rep.frame_lower = smin * smin;
    rep.condition = rep.frame_lower > 0.0 ? rep.frame_upper / rep.frame_lower : std::numeric_limits<double>::infinity();
    rep.exploratory = lat.spec.q0 * lat.spec.p0 < kTwoPi * (1.0 - 1e-12);
    return rep;
}

Eigen::MatrixXcd lattice_inner_products(const GCSLattice& lat, const Signal& psi)
{
    Eigen::MatrixXcd out(lat.spec.n_count(), lat.spec.m_count());
    for (long long m = lat.spec.m_min; m <= lat.spec.m_max; ++m) {
        const Signal band = bandlimit_project(psi, BandSpec{lat.spec.p0, m});
        for (long long n = lat.spec.n_min; n <= lat.spec.n_max; ++n)
            out(n - lat.spec.n_min, m - lat.spec.m_min) = inner(lat.state(n, m).values, band.values);
    }
    return out;
}

ProjectedReconstruction projected_reconstruct(const GCSLattice& lat, const Eigen::MatrixXcd& inner_products,
                                              WarningSink* warnings)
{
    const GridSpec& g = lat.fiducial.signal.grid;
    if (inner_products.rows() != static_cast<Eigen::Index>(lat.spec.n_count()) ||
        inner_products.cols() != static_cast<Eigen::Index>(lat.spec.m_count()))
        throw GridMismatch("projected_reconstruct: inner product matrix does not match the lattice ranges");

    ProjectedReconstruction out{Signal::zeros(g), {}, false};
    CVec spectrum(g.N());
    const auto rows = static_cast<Eigen::Index>(lat.spec.n_count());
    for (long long m = lat.spec.m_min; m <= lat.spec.m_max; ++m) {
        const BandRange r = band_range(g, BandSpec{lat.spec.p0, m});
        const auto cols = static_cast<Eigen::Index>(r.hi - r.lo);
        // Row n: conjugated spectrum of state (n, m) on the band.
        Eigen::MatrixXcd A(rows, cols);
        for (long long n = lat.spec.n_min; n <= lat.spec.n_max; ++n) {
            const MomentumSignal phi = fourier_forward(lat.state(n, m));
            for (long long kc = r.lo; kc < r.hi; ++kc)
                A(n - lat.spec.n_min, kc - r.lo) = std::conj(phi.values[g.wrap(kc)]);
        }
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv(0) : 0.0;
        const double smin = (sv.size() == cols && sv.size() > 0) ? sv(sv.size() - 1) : 0.0;

        BandSolve diag;
        diag.m = m;
        diag.condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
        diag.ill_conditioned = !(diag.condition <= kIllConditioned);

        const Eigen::VectorXcd b = inner_products.col(m - lat.spec.m_min);
        const Eigen::VectorXcd ub = svd.matrixU().adjoint() * b;
        Eigen::VectorXcd coeff = Eigen::VectorXcd::Zero(sv.size());
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > kRankTol * smax) {
                coeff(i) = ub(i) / sv(i);
                ++diag.rank;
            }
        }
        const Eigen::VectorXcd x = svd.matrixV() * coeff;
        for (long long kc = r.lo; kc < r.hi; ++kc) spectrum[g.wrap(kc)] += x(kc - r.lo);

        if (diag.ill_conditioned) {
            out.ill_conditioned = true;
            warn(warnings, "ill_conditioned",
                 "band m=" + std::to_string(m) + " condition " + std::to_string(diag.condition) + " above 1e10");
        }
        out.bands.push_back(diag);
    }
    out.signal = fourier_inverse(MomentumSignal(g, std::move(spectrum)));
    return out;
}

STEquivalenceReport st_equivalence_check(const FiducialVector& f, const Signal& s, double p0)
{
    const GridSpec& g = f.signal.grid;
    if (!s.grid.same_as(g)) throw GridMismatch("st_equivalence_check: signal and fiducial grids differ");
    const auto L = static_cast<long long>(g.L()), M = static_cast<long long>(g.M());

    // Samples of G(q) = (2 pi)^{-1/2} int dp e^{iqp} conj(phi0(p)) phi_s(p) at q = n q0.
    SampleSet samples{g, 0.0, 0, CVec(g.M())};
    const double inv_root = 1.0 / std::sqrt(kTwoPi);
    for (long long n = -M / 2; n < M / 2; ++n)
        samples.values[static_cast<std::size_t>(n + M / 2)] =
            inv_root * inner(displace(f.signal, GridSteps{n * L, 0}).values, s.values);
    const MomentumSignal gamma = fourier_forward(reconstruct_sinc(samples, BandSpec{p0, 0}, g));

    const BandRange r = band_range(g, BandSpec{p0, 0});
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (long long kc = r.lo; kc < r.hi; ++kc) {
        const double a = std::abs(f.phi.wavefunction(g.wrap(kc)));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    STEquivalenceReport rep;
    rep.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    rep.ill_conditioned = !(rep.condition <= kIllConditioned);

    CVec spectrum(g.N());
    for (long long kc = r.lo; kc < r.hi; ++kc) {
        const std::size_t k = g.wrap(kc);
        const cplx phi0 = f.phi.wavefunction(k);
        if (std::abs(phi0) > 1e-13 * hi) spectrum[k] = gamma.values[k] / std::conj(phi0);
    }
    const Signal rec = fourier_inverse(MomentumSignal(g, std::move(spectrum)));
    double diff2 = 0.0;
    for (std::size_t j = 0; j < rec.values.size(); ++j) diff2 += std::norm(rec.values[j] - s.values[j]);
    const double nrm = s.norm();
    rep.relative_error = nrm > 0.0 ? std::sqrt(diff2) / nrm : 0.0;
    return rep;
}

} // namespace hwzak
