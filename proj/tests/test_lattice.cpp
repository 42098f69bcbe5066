#include <doctest.h>

#include "hwzak/lattice.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace hwzak;

namespace {

const double kQ0 = std::sqrt(2.0 * kPi);
const GridSpec kGrid = GridSpec::from_cells(16, 16, kQ0);

LatticeSpec von_neumann(const GridSpec& g, long long n_lo, long long n_hi, long long m_lo, long long m_hi)
{
    return {g.q0(), g.p_cell(), n_lo, n_hi, m_lo, m_hi};
}

/// Every cell in n, every momentum cell of width p0 in m.
LatticeSpec full_torus(const GridSpec& g, double p0)
{
    const auto M = static_cast<long long>(g.M());
    const auto bands = static_cast<long long>(std::llround(static_cast<double>(g.N()) * g.dp() / p0));
    return {g.q0(), p0, -M / 2, M / 2 - 1, -bands / 2, bands / 2 - 1};
}

Signal random_in_bands(const GridSpec& g, double p0, long long m_lo, long long m_hi, std::mt19937_64& rng)
{
    const Signal raw(g, oracle::random_values(g.N(), rng));
    Signal out = Signal::zeros(g);
    for (long long m = m_lo; m <= m_hi; ++m) {
        const Signal b = bandlimit_project(raw, BandSpec{p0, m});
        for (std::size_t j = 0; j < g.N(); ++j) out.values[j] += b.values[j];
    }
    return out;
}

} // namespace

TEST_CASE("von Neumann lattice states")
{
    const FiducialVector f = fiducial_gaussian(kGrid);
    const GCSLattice lat = build_lattice(f, von_neumann(kGrid, -4, 3, -4, 3));
    CHECK(lat.states.size() == 64);
    for (const auto& s : lat.states) CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    CHECK(oracle::max_diff(lat.state(0, 0).values, f.signal.values) == 0.0);
    CHECK_THROWS_AS(lat.state(4, 0), InvalidLattice);
}

TEST_CASE("lattice states from repeated unit translations")
{
    // U(p0)^m V(q0)^n psi0 = e^{i m n q0 p0 / 2} D(n q0, m p0) psi0
    const FiducialVector f = fiducial_sech(kGrid);
    for (double p0 : {kGrid.p_cell(), kGrid.p_cell() / 2}) {
        const GCSLattice lat = build_lattice(f, {kQ0, p0, -2, 2, -3, 2});
        for (long long n = -2; n <= 2; ++n) {
            for (long long m = -3; m <= 2; ++m) {
                Signal x = f.signal;
                for (long long i = 0; i < std::abs(n); ++i) x = apply_V(x, n > 0 ? kQ0 : -kQ0);
                for (long long i = 0; i < std::abs(m); ++i) x = apply_U(x, m > 0 ? p0 : -p0);
                const cplx phase = std::polar(1.0, -static_cast<double>(m * n) * kQ0 * p0 / 2.0);
                double err = 0.0;
                for (std::size_t j = 0; j < kGrid.N(); ++j)
                    err = std::max(err, std::abs(lat.state(n, m).values[j] - phase * x.values[j]));
                CHECK(err < 1e-12);
                if (p0 == kGrid.p_cell()) CHECK(std::abs(phase - ((m * n) % 2 == 0 ? 1.0 : -1.0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("Zak arrays of lattice states factorise")
{
    for (const FiducialVector& f : {fiducial_gaussian(kGrid), fiducial_pure_phase(kGrid)}) {
        const GCSLattice lat = build_lattice(f, von_neumann(kGrid, -3, 2, -3, 2));
        double worst = 0.0;
        for (long long n = -3; n <= 2; ++n)
            for (long long m = -3; m <= 2; ++m) {
                const ZakArray z = zak_forward(lat.state(n, m));
                for (std::size_t j = 0; j < kGrid.L(); ++j)
                    for (std::size_t k = 0; k < kGrid.M(); ++k) {
                        const double q = z.q(static_cast<long long>(j)), p = z.p(static_cast<long long>(k));
                        const double sign = (m * n) % 2 == 0 ? 1.0 : -1.0;
                        const cplx pred = sign * std::polar(1.0, -static_cast<double>(n) * kQ0 * p + kTwoPi * static_cast<double>(m) * q / kQ0) * f.chi.at(j, k);
                        worst = std::max(worst, std::abs(pred - z.at(j, k)));
                    }
            }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("lattice validation")
{
    const FiducialVector f = fiducial_gaussian(kGrid);
    CHECK_THROWS_AS(build_lattice(f, {kQ0, 2 * kGrid.p_cell(), 0, 1, 0, 1}), InvalidLattice);
    CHECK_NOTHROW(build_lattice(f, {kQ0, 2 * kGrid.p_cell(), 0, 1, 0, 1}, LatticeCheck::Skip));
    CHECK_THROWS_AS(build_lattice(f, {kQ0, kGrid.p_cell(), 2, 1, 0, 1}), InvalidLattice);
    CHECK_THROWS_AS(build_lattice(f, {kQ0 * 1.01, kGrid.p_cell() / 2, 0, 1, 0, 1}), Error);
}

TEST_CASE("totality and orthonormality criteria")
{
    const auto [pp_total, pp_min] = totality_test(fiducial_pure_phase(kGrid));
    const auto [pp_ortho, pp_dev] = orthonormality_test(fiducial_pure_phase(kGrid));
    CHECK(pp_total);
    CHECK(pp_ortho);
    CHECK(pp_dev < 1e-12);
    CHECK(pp_min == doctest::Approx(1.0 / std::sqrt(kTwoPi)).epsilon(1e-12));

    CHECK_FALSE(totality_test(fiducial_gaussian(GridSpec::from_cells(64, 64, kQ0))).first);
    CHECK_FALSE(orthonormality_test(fiducial_gaussian(kGrid)).first);
    CHECK_FALSE(totality_test(fiducial_bandlimited(kGrid)).first);
    // the discrete comb's Zak array is a single node, zero elsewhere
    CHECK_FALSE(totality_test(fiducial_comb(kGrid)).first);
}

TEST_CASE("orthonormal implies total across the fiducial library")
{
    for (std::size_t L : {8u, 16u, 32u}) {
        const GridSpec g = GridSpec::from_cells(L, 16, kQ0);
        for (const FiducialVector& f :
             {fiducial_gaussian(g), fiducial_comb(g), fiducial_smoothed_comb(g, kQ0 / 20), fiducial_sech(g),
              fiducial_bandlimited(g), fiducial_pure_phase(g), fiducial_pure_phase(g, 0.3), fiducial_inband_zero(g, 0.5)}) {
            INFO(f.name);
            if (orthonormality_test(f).first) CHECK(totality_test(f).first);
        }
    }
}

TEST_CASE("pure-phase fiducial gives an orthonormal Gram matrix")
{
    const GCSLattice lat = build_lattice(fiducial_pure_phase(kGrid), von_neumann(kGrid, -3, 2, -3, 2));
    const GramReport r = gram_analysis(lat);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(36, 36);
    CHECK((r.gram - id).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(r.numerical_rank == 36);
    CHECK(r.condition == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(r.exploratory);
}

TEST_CASE("Gaussian Gram entries match coherent-state overlaps")
{
    const GCSLattice lat = build_lattice(fiducial_gaussian(kGrid), von_neumann(kGrid, -3, 2, -3, 2));
    const GramReport r = gram_analysis(lat);
    CHECK((r.gram - r.gram.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    double err = 0.0, off = 0.0;
    for (long long a = 0; a < 36; ++a)
        for (long long b = 0; b < 36; ++b) {
            const double qa = static_cast<double>(a / 6 - 3) * kQ0, pa = static_cast<double>(a % 6 - 3) * kGrid.p_cell();
            const double qb = static_cast<double>(b / 6 - 3) * kQ0, pb = static_cast<double>(b % 6 - 3) * kGrid.p_cell();
            err = std::max(err, std::abs(std::abs(r.gram(a, b)) - oracle::cs_overlap_abs(qa, pa, qb, pb)));
            if (a != b) off = std::max(off, std::abs(r.gram(a, b)));
        }
    CHECK(err < 1e-10);
    CHECK(off == doctest::Approx(std::exp(-kPi / 2)).epsilon(1e-8));
    CHECK(r.frame_lower <= r.frame_upper);
}

TEST_CASE("truncated von Neumann Gaussian lattice")
{
    const GCSLattice lat = build_lattice(fiducial_gaussian(kGrid), von_neumann(kGrid, -5, 4, -5, 4));
    const GramReport r = gram_analysis(lat);
    const double smallest = r.singular_values(r.singular_values.size() - 1);
    CHECK(smallest > 0.0);
    CHECK(smallest < 0.2 * r.singular_values(0));

    // drop the (0, 0) state
    GCSLattice less = lat;
    less.states.erase(less.states.begin() + 5 * 10 + 5);
    const GramReport r2 = gram_analysis(less);
    CHECK(r.numerical_rank - r2.numerical_rank <= 1);
}

TEST_CASE("full-torus lattices: overcomplete by one, finer is better conditioned")
{
    const GridSpec g = GridSpec::from_cells(8, 16, kQ0);
    const GramReport vn = gram_analysis(build_lattice(fiducial_gaussian(g), full_torus(g, g.p_cell())));
    CHECK(vn.numerical_rank == g.N() - 1);

    const GramReport fine = gram_analysis(build_lattice(fiducial_gaussian(g), full_torus(g, g.p_cell() / 2)));
    CHECK(fine.exploratory);
    CHECK(fine.numerical_rank == g.N());
    CHECK(std::isfinite(fine.condition));
    CHECK(fine.condition < 0.2 * vn.condition);

    // too coarse: half the dimension is missing
    const GCSLattice coarse = build_lattice(fiducial_gaussian(g), full_torus(g, 2 * g.p_cell()), LatticeCheck::Skip);
    CHECK(gram_analysis(coarse).numerical_rank <= g.N() / 2);
}

TEST_CASE("projected reconstruction")
{
    std::mt19937_64 rng(51);
    const GridSpec g = GridSpec::from_cells(8, 16, kQ0);
    const auto M = static_cast<long long>(g.M());

    for (const FiducialVector& f : {fiducial_gaussian(g), fiducial_sech(g)}) {
        INFO(f.name);
        // one band, von Neumann spacing
        const LatticeSpec vn{kQ0, g.p_cell(), -M / 2, M / 2 - 1, 0, 0};
        const GCSLattice lat = build_lattice(f, vn);
        const Signal psi = random_in_bands(g, g.p_cell(), 0, 0, rng);
        const ProjectedReconstruction rec = projected_reconstruct(lat, lattice_inner_products(lat, psi));
        CHECK_FALSE(rec.ill_conditioned);
        CHECK(oracle::rel_l2(rec.signal.values, psi.values) < 1e-6);

        // three bands, half spacing
        const LatticeSpec fine{kQ0, g.p_cell() / 2, -M / 2, M / 2 - 1, -1, 1};
        const GCSLattice lf = build_lattice(f, fine);
        const Signal chi = random_in_bands(g, g.p_cell() / 2, -1, 1, rng);
        const ProjectedReconstruction rf = projected_reconstruct(lf, lattice_inner_products(lf, chi));
        CHECK(rf.bands.size() == 3);
        CHECK(oracle::rel_l2(rf.signal.values, chi.values) < 1e-6);

        // the fiducial's own band piece
        const Signal own = bandlimit_project(f.signal, BandSpec{g.p_cell(), 0});
        CHECK(oracle::rel_l2(projected_reconstruct(lat, lattice_inner_products(lat, own)).signal.values, own.values) < 1e-6);
    }
}

TEST_CASE("inner products of the fiducial itself")
{
    // Without projection the coefficients would be a Gram column; with P_m they
    // are the Gram column of the band-projected fiducial.
    const GridSpec g = GridSpec::from_cells(8, 16, kQ0);
    const FiducialVector f = fiducial_gaussian(g);
    const GCSLattice lat = build_lattice(f, {kQ0, g.p_cell(), -2, 2, 0, 0});
    const Signal own = bandlimit_project(f.signal, BandSpec{g.p_cell(), 0});
    const Eigen::MatrixXcd ip = lattice_inner_products(lat, f.signal);
    for (long long n = -2; n <= 2; ++n)
        CHECK(std::abs(ip(n + 2, 0) - inner(lat.state(n, 0).values, own.values)) < 1e-14);
}

TEST_CASE("in-band zero of the fiducial spectrum is reported as ill-conditioned")
{
    std::mt19937_64 rng(52);
    const GridSpec g = GridSpec::from_cells(8, 16, kQ0);
    const auto M = static_cast<long long>(g.M());
    const FiducialVector f = fiducial_inband_zero(g, 0.5);
    const GCSLattice lat = build_lattice(f, {kQ0, g.p_cell(), -M / 2, M / 2 - 1, 0, 0});
    const Signal psi = random_in_bands(g, g.p_cell(), 0, 0, rng);
    WarningSink w;
    const ProjectedReconstruction rec = projected_reconstruct(lat, lattice_inner_products(lat, psi), &w);
    CHECK(rec.ill_conditioned);
    REQUIRE_FALSE(w.empty());
    CHECK(w[0].code == "ill_conditioned");
}

TEST_CASE("single-row recovery through the twisted sampling map")
{
    const GridSpec g = GridSpec::from_cells(16, 64, kQ0);
    const double p0 = g.p_cell();
    const Signal s = bandlimit_project(gaussian_mixture(g, {{0.0, 8.0, 0.0, 1.0}}), BandSpec{p0, 0});
    for (const FiducialVector& f : {fiducial_gaussian(g), fiducial_sech(g)}) {
        INFO(f.name);
        const STEquivalenceReport r = st_equivalence_check(f, s, p0);
        CHECK_FALSE(r.ill_conditioned);
        CHECK(r.relative_error < 1e-6);
    }
    // zero placed where the test signal carries weight
    const STEquivalenceReport bad = st_equivalence_check(fiducial_inband_zero(g, 0.1), s, p0);
    CHECK(bad.ill_conditioned);
    CHECK(bad.relative_error > 1e-3);
}
