#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dimerfl/errors.hpp"
#include "dimerfl/spectrum.hpp"

using namespace dimerfl;

namespace {

SystemParams two_photon_point(double beta, double omega_over_r, double gamma_over_r,
                              double r = 1.0) {
    auto p = SystemParams::from_beta(r, beta);
    p.with_rates(gamma_over_r * r, 0.999 * gamma_over_r * r).with_drive(omega_over_r * r, 0.0);
    return p;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return acc;
}

Eigen::Vector4cd aligned(Eigen::Vector4cd v) {
    v.normalize();
    int imax = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    return v / (v(imax) / std::abs(v(imax)));
}

}  // namespace

TEST_CASE("identity operators give an identically zero spectral function") {
    auto p = two_photon_point(0.6, 0.3, 0.05);
    const auto liou = build_liouvillian(p);
    const auto rho = steady_state(liou);
    const auto s = spectral_function(liou, rho, Matrix4cd::Identity(), Matrix4cd::Identity(),
                                     linear_grid(-2.0, 2.0, 101), 0.0);
    for (double v : s) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("sum rule: integrated spectrum equals the connected equal-time correlator") {
    auto p = SystemParams::from_j_delta(15.0, 12.0);
    p.with_rates(1.0, 0.6).with_drive(6.0, 2.0);
    const auto liou = build_liouvillian(p);
    const auto rho = steady_state(liou);
    const double r = p.big_r;
    const auto grid = linear_grid(-4.0 * r, 4.0 * r, 16001);
    const Matrix4cd ep = sigma1() + sigma2();
    const auto s = spectral_function(liou, rho, ep.adjoint(), ep, grid, 0.0);
    const double integral = trapezoid(grid, s);
    const double mean_i = std::real((rho.m * ep.adjoint() * ep).trace());
    const double coherent = std::norm((rho.m * ep).trace());
    CHECK(std::abs(integral - (mean_i - coherent)) / (mean_i - coherent) < 0.02);
}

TEST_CASE("two-level limit: driven emitter shows Mollow sidebands at the dressed splitting") {
    // decoupled emitters (J = 0, gamma12 = 0), emitter 2 detuned far away
    const double de = 500.0, om = 20.0;
    for (double d1 : {0.0, 30.0}) {  // emitter-1 detuning
        auto p = SystemParams::from_j_delta(0.0, de);
        p.with_rates(1.0, 0.0).with_drive(om, de + d1);
        const auto liou = build_liouvillian(p);
        const auto rho = steady_state(liou);
        const double split = std::sqrt(d1 * d1 + 4.0 * om * om);
        const auto grid = linear_grid(-2.5 * split, 2.5 * split, 24001);
        const auto s1 = spectral_function(liou, rho, sigma1().adjoint(), sigma1(), grid, 0.0);
        const auto found = detect_peaks(grid, s1, 1e-3);
        REQUIRE(found.peaks.size() >= 3);
        // the outermost detected peaks sit at +- the generalized Rabi splitting
        double lo = 0.0, hi = 0.0;
        for (const auto& pk : found.peaks) {
            lo = std::min(lo, pk.omega);
            hi = std::max(hi, pk.omega);
        }
        const double tol = std::max(1.0, 2.0 * (grid[1] - grid[0]));
        CHECK(std::abs(hi - split) < tol);
        CHECK(std::abs(lo + split) < tol);
    }
}

TEST_CASE("spectrum components sum to the total pointwise") {
    auto p = two_photon_point(M_PI / 4, 0.5, 0.02);
    p.delta_laser = 0.3;
    const auto grid = linear_grid(-3.0, 3.0, 501);
    const auto s = rf_spectrum(p, grid);
    double scale = *std::max_element(s.total.begin(), s.total.end());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double sum = s.s1[i] + s.s2[i] + s.s12[i] + s.s21[i];
        CHECK(std::abs(s.total[i] - sum) < 1e-10 * std::max(1.0, scale));
    }
}

TEST_CASE("emitter exchange: flipping delta_emit swaps the single-emitter spectra") {
    auto make = [](double sign) {
        auto p = SystemParams::from_j_delta(10.0, sign * 7.0);
        p.with_rates(1.0, 0.5).with_drive(3.0, 1.0);
        return p;
    };
    const auto grid = linear_grid(-40.0, 40.0, 801);
    const auto a = rf_spectrum(make(+1.0), grid);
    const auto b = rf_spectrum(make(-1.0), grid);
    double scale = *std::max_element(a.total.begin(), a.total.end());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(a.total[i] - b.total[i]) < 1e-10 * scale);
        CHECK(std::abs(a.s1[i] - b.s2[i]) < 1e-10 * scale);
        CHECK(std::abs(a.s2[i] - b.s1[i]) < 1e-10 * scale);
    }
}

TEST_CASE("finite detector linewidth smooths the spectrum") {
    auto p = two_photon_point(0.9, 0.2, 0.01);
    p.det_linewidth = 0.05;
    const auto grid = linear_grid(-2.0, 2.0, 2001);
    const auto broad = rf_spectrum(p, grid);
    p.det_linewidth = 0.0;
    const auto sharp = rf_spectrum(p, grid);
    CHECK(*std::max_element(broad.total.begin(), broad.total.end()) <
          *std::max_element(sharp.total.begin(), sharp.total.end()));
}

TEST_CASE("eigendecomposition route agrees with the direct linear-solve fallback") {
    auto p = two_photon_point(0.7, 0.4, 0.05);
    const auto liou = build_liouvillian(p);
    const auto rho = steady_state(liou);
    const SpectralSolver fast(liou, rho);
    const SpectralSolver slow(liou, rho, /*force_direct=*/true);
    CHECK(!fast.uses_direct_solve());
    CHECK(slow.uses_direct_solve());
    const auto grid = linear_grid(-2.5, 2.5, 301);
    const Matrix4cd ep = sigma1() + sigma2();
    const auto a = fast.series(ep.adjoint(), ep, grid, 0.01);
    const auto b = slow.series(ep.adjoint(), ep, grid, 0.01);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-8));
}

TEST_CASE("strong-drive census at beta = 0: seven peaks at the closed-form positions") {
    auto p = two_photon_point(0.0, 1.0, 1e-3);
    const auto grid = linear_grid(-4.8, 4.8, 60001);
    const auto s = rf_spectrum(p, grid);
    const auto found = detect_peaks(s, 1e-3);
    REQUIRE(found.peaks.size() == 7);
    const double s17 = std::sqrt(17.0);
    const std::vector<double> expect = {-s17,        -(1.0 + s17) / 2, -(s17 - 1.0) / 2, 0.0,
                                        (s17 - 1.0) / 2, (1.0 + s17) / 2, s17};
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(std::abs(found.peaks[i].omega - expect[i]) < 2.0 * (grid[1] - grid[0]));
    // the single-emitter spectrum shows the interference-suppressed lines too
    const auto found1 = detect_peaks(grid, s.s1, 1e-3);
    CHECK(found1.peaks.size() > 7);
}

TEST_CASE("perturbative interference: |A>-transitions are suppressed in the total spectrum") {
    const double om = 0.1, gamma = 1e-3;
    auto p = two_photon_point(0.0, om, gamma);
    const auto grid = linear_grid(0.5, 2.5, 40001);
    const auto s = rf_spectrum(p, grid);
    // in the weak-drive ordering |A> is the lowest state; the lines that reach
    // it are S -> A (2R + 4 Om^2/R), A2 -> A (R) and S2 -> A (R - 4 Om^2/R)
    for (double w : {2.0 + 4.0 * om * om, 1.0, 1.0 - 4.0 * om * om}) {
        const auto at = [&](const std::vector<double>& v) {
            const auto it = std::min_element(grid.begin(), grid.end(), [&](double a, double b) {
                return std::abs(a - w) < std::abs(b - w);
            });
            // height near the line: max over a +-gamma window
            const std::size_t c = std::size_t(it - grid.begin());
            const std::size_t halfwin = std::size_t(gamma / (grid[1] - grid[0]));
            double best = 0.0;
            for (std::size_t k = c - halfwin; k <= c + halfwin; ++k) best = std::max(best, v[k]);
            return best;
        };
        const double in_s1 = at(s.s1);
        const double in_total = at(s.total);
        CHECK(in_total < 0.01 * in_s1);
    }
}

TEST_CASE("perturbative ladder: transition frequencies and saturation amplitude") {
    auto p = two_photon_point(0.0, 0.05, 1e-3);
    const auto lad = dressed_ladder(p);
    CHECK(lad.transitions[6].omega == doctest::Approx(0.01).epsilon(1e-12));  // omega_6
    CHECK(lad.omega_2ps == doctest::Approx(0.015811388300841897).epsilon(1e-12));

    // omega_1 = 2R + 4 Omega^2 / R for every beta
    for (double beta : {0.0, 0.5, 1.0, 1.4}) {
        auto q = two_photon_point(beta, 0.05, 1e-3);
        const auto l = dressed_ladder(q);
        CHECK(l.transitions[1].omega == doctest::Approx(2.0 + 4.0 * 0.0025).epsilon(1e-12));
        // energies are sorted and omega_1 is the largest transition
        for (int i = 0; i < 3; ++i) CHECK(l.energies[i] >= l.energies[i + 1]);
        for (const auto& t : l.transitions) CHECK(l.transitions[1].omega >= t.omega);
    }

    auto q = two_photon_point(M_PI / 2, 0.05, 1e-3);
    const auto l = dressed_ladder(q);
    CHECK(std::isinf(l.omega_2ps));
    CHECK(!l.warnings.empty());

    auto off_resonance = two_photon_point(0.4, 0.05, 1e-3);
    off_resonance.delta_laser = 0.1;
    CHECK_THROWS_AS(dressed_ladder(off_resonance), DomainError);
}

TEST_CASE("detected sidebands match the perturbative ladder") {
    auto p = two_photon_point(M_PI / 4, 0.05, 1e-3);
    const auto lad = dressed_ladder(p);
    const auto grid = linear_grid(-2.2, 2.2, 88001);
    const auto s = rf_spectrum(p, grid);
    const auto found = detect_peaks(s, 1e-3, p.gamma);
    CHECK(found.warnings.empty());
    REQUIRE(found.peaks.size() >= 9);
    const double tol = std::max(p.gamma, grid[1] - grid[0]);
    for (const auto& pk : found.peaks) {
        double best = 1e300;
        for (const auto& t : lad.transitions) {
            best = std::min(best, std::abs(pk.omega - t.omega));
            best = std::min(best, std::abs(pk.omega + t.omega));
        }
        CHECK(best < tol);
    }
    // the omega_2 / omega_3 doublet splitting equals 2 Omega_2p
    auto nearest = [&](double target) {
        double best = 1e300;
        for (const auto& pk : found.peaks)
            if (std::abs(pk.omega - target) < std::abs(best - target)) best = pk.omega;
        return best;
    };
    const double w2 = nearest(lad.transitions[2].omega);
    const double w3 = nearest(lad.transitions[3].omega);
    const double split = w2 - w3;
    const double two_o2p = 4.0 * 0.05 * 0.05 * std::cos(M_PI / 4);
    CHECK(std::abs(split - two_o2p) / two_o2p < 0.10);
}

TEST_CASE("two-photon doublet resolves above the saturation amplitude") {
    const double gamma = 1e-3;
    const double o2ps = 0.5 * std::sqrt(gamma / std::cos(M_PI / 4));
    auto resolved = [&](double om) {
        auto p = two_photon_point(M_PI / 4, om, gamma);
        const double c = std::cos(M_PI / 4);
        const double w2 = 1.0 + 2.0 * om * om * (3.0 * c + 1.0);
        const double w3 = 1.0 + 2.0 * om * om * (c + 1.0);
        const double span = 6.0 * (w2 - w3);
        const auto grid = linear_grid((w2 + w3) / 2 - span, (w2 + w3) / 2 + span, 4001);
        const auto liou = build_liouvillian(p);
        const auto rho = steady_state(liou);
        const Matrix4cd ep = sigma1() + sigma2();
        const auto tot = spectral_function(liou, rho, ep.adjoint(), ep, grid, 0.0);
        std::size_t count = 0;
        for (const auto& pk : detect_peaks(grid, tot, 1e-6).peaks)
            if (pk.omega > w3 - 3 * gamma && pk.omega < w2 + 3 * gamma) ++count;
        return count >= 2;
    };
    CHECK(!resolved(o2ps / 1.5));
    CHECK(resolved(1.5 * o2ps));
}

TEST_CASE("strong driving at beta = 0 matches the closed forms") {
    const double r = 1.0, om = 1.0;
    auto p = two_photon_point(0.0, om, 1e-3);
    const auto sys = strong_driving_eigensystem(p);
    const double s = std::sqrt(r * r + 16.0 * om * om);
    CHECK(sys.energies[0] == doctest::Approx((r + s) / 2).epsilon(1e-12));
    CHECK(sys.energies[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sys.energies[2] == doctest::Approx(-r).epsilon(1e-12));
    CHECK(sys.energies[3] == doctest::Approx((r - s) / 2).epsilon(1e-12));

    Eigen::Vector4cd u1;  // proportional to ((R + s)/(4 Om)) |S> + |S2>
    u1 << (r + s) / (4.0 * om), 0.0, 1.0, 0.0;
    CHECK((aligned(sys.states.col(0)) - aligned(u1)).cwiseAbs().maxCoeff() < 1e-9);
    Eigen::Vector4cd u4;
    u4 << (r - s) / (4.0 * om), 0.0, 1.0, 0.0;
    CHECK((aligned(sys.states.col(3)) - aligned(u4)).cwiseAbs().maxCoeff() < 1e-9);
    // U2 = |A2>, U3 = |A>
    CHECK(std::abs(std::abs(sys.states.col(1)(1)) - 1.0) < 1e-9);
    CHECK(std::abs(std::abs(sys.states.col(2)(3)) - 1.0) < 1e-9);
}

TEST_CASE("strong driving at beta = pi/2 matches the closed forms") {
    const double r = 1.0, om = 1.0;
    auto p = two_photon_point(M_PI / 2, om, 1e-3);
    const auto sys = strong_driving_eigensystem(p);
    const double e1 = std::sqrt(r * r + 4.0 * om * om);
    CHECK(sys.energies[0] == doctest::Approx(e1).epsilon(1e-9));
    CHECK(std::abs(sys.energies[1]) < 1e-9);
    CHECK(std::abs(sys.energies[2]) < 1e-9);
    CHECK(sys.energies[3] == doctest::Approx(-e1).epsilon(1e-9));

    const double cp = (r + e1) / (2.0 * std::sqrt(2.0) * om);
    const double cm = (r - e1) / (2.0 * std::sqrt(2.0) * om);
    Eigen::Vector4cd u1, u4;
    u1 << cp, 0.0, 1.0, 1.0 / (2.0 * cp);
    u4 << cm, 0.0, 1.0, 1.0 / (2.0 * cm);
    CHECK((aligned(sys.states.col(0)) - aligned(u1)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((aligned(sys.states.col(3)) - aligned(u4)).cwiseAbs().maxCoeff() < 1e-9);

    // degenerate zero-energy pair: compare projectors against the printed span
    Eigen::Vector4cd v2, v3;
    v2 << 0.0, 1.0, 0.0, 0.0;
    v3 << -std::sqrt(2.0) * om / r, 0.0, 1.0, std::sqrt(2.0) * om / r;
    v3.normalize();
    const Matrix4cd p_closed = v2 * v2.adjoint() + v3 * v3.adjoint();
    const Matrix4cd p_num = sys.states.col(1) * sys.states.col(1).adjoint() +
                            sys.states.col(2) * sys.states.col(2).adjoint();
    CHECK((p_closed - p_num).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("E3/E4 crossing sits at Omega = R / sqrt(2)") {
    // at beta = 0 the lowest eigenvalue leaves -R once the S/S2 branch dives below
    auto lowest_leaves_minus_r = [&](double om) {
        auto p = two_photon_point(0.0, om, 1e-3);
        const auto sys = strong_driving_eigensystem(p);
        return sys.energies[3] < -1.0 - 1e-12;
    };
    double lo = 0.5, hi = 1.0;
    REQUIRE(!lowest_leaves_minus_r(lo));
    REQUIRE(lowest_leaves_minus_r(hi));
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (lowest_leaves_minus_r(mid) ? hi : lo) = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - 1.0 / std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("peak detection basics") {
    // single Lorentzian: center recovered to a tenth of the grid spacing
    const auto grid = linear_grid(-1.0, 1.0, 401);
    std::vector<double> y(grid.size());
    const double x0 = 0.1234, w = 0.05;
    for (std::size_t i = 0; i < grid.size(); ++i)
        y[i] = 1.0 / (1.0 + std::pow((grid[i] - x0) / w, 2));
    const auto found = detect_peaks(grid, y, 1e-3);
    REQUIRE(found.peaks.size() == 1);
    CHECK(std::abs(found.peaks[0].omega - x0) < (grid[1] - grid[0]) / 10.0);

    // flat series has no peaks
    const std::vector<double> flat(grid.size(), 0.7);
    CHECK(detect_peaks(grid, flat, 1e-3).peaks.empty());

    // coarse grids are flagged
    const auto warned = detect_peaks(grid, y, 1e-3, 0.01);
    CHECK(!warned.warnings.empty());
}
