#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dimerfl/errors.hpp"
#include "dimerfl/estimation.hpp"
#include "dimerfl/spectrum.hpp"

using namespace dimerfl;

namespace {

SystemParams fig7_params(double kr = 0.17) {
    auto p = SystemParams::from_kr12(kr, 50.0);
    p.with_rates(1.0, 0.999).with_detector(1.0);
    return p;
}

}  // namespace

TEST_CASE("poisson counting probabilities") {
    CHECK(poisson_count_prob(0.0, 0) == 1.0);
    CHECK(poisson_count_prob(0.0, 3) == 0.0);
    CHECK(poisson_count_prob(1.0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    double sum = 0.0;
    for (unsigned n = 0; n <= 50; ++n) sum += poisson_count_prob(3.0, n);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(poisson_count_prob(-0.1, 0), DomainError);
}

TEST_CASE("poisson Fisher information per sensor matches the explicit expectation") {
    // E[(d log P / dX)^2] = (d<mu>/dX)^2 / mu for Poisson counting
    for (const auto& [mu, dmu] : {std::pair{0.8, 2.0}, std::pair{4.0, -1.3}, std::pair{12.0, 0.4}}) {
        double expect = 0.0;
        for (unsigned n = 0; n <= 200; ++n) {
            const double p = poisson_count_prob(mu, n);
            const double dlogp = (double(n) / mu - 1.0) * dmu;
            expect += p * dlogp * dlogp;
        }
        const double analytic = dmu * dmu / mu;
        CHECK(std::abs(expect - analytic) / analytic < 1e-6);
    }
}

TEST_CASE("mixing angle is distance-independent for identical emitters") {
    auto p = SystemParams::from_kr12(0.17, 0.0);
    p.with_rates(1.0, 0.999).with_detector(1.0);
    const double h = 1e-4 * 0.17;
    CHECK(p.beta == 0.0);
    CHECK(p.at_kr12(0.17 + h).beta == 0.0);
    CHECK(p.at_kr12(0.17 - h).beta == 0.0);
}

TEST_CASE("sensitivity: smooth-region step halving moves the derivative by < 1%") {
    auto p = fig7_params();
    p.omega_drive = 6.0;
    const auto grid = linear_grid(-1.5 * p.big_r, 1.5 * p.big_r, 301);
    const auto d1 = spectrum_sensitivity(p, p.kr12, grid, 1e-4 * p.kr12);
    const auto d2 = spectrum_sensitivity(p, p.kr12, grid, 2e-4 * p.kr12);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d1.size(); ++i) {
        num += (d1[i] - d2[i]) * (d1[i] - d2[i]);
        den += d1[i] * d1[i];
    }
    CHECK(std::sqrt(num / den) < 0.01);
}

TEST_CASE("sensitivity concentrates at the one-photon sideband shoulders") {
    auto p = fig7_params();
    p.omega_drive = 6.0;
    const auto grid = linear_grid(-1.5 * p.big_r, 1.5 * p.big_r, 1501);
    const auto d = spectrum_sensitivity(p, p.kr12, grid, 1e-4 * p.kr12);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < d.size(); ++i)
        if (std::abs(d[i]) > std::abs(d[imax])) imax = i;
    CHECK(std::abs(grid[imax]) > 0.8 * p.big_r);
    CHECK(std::abs(grid[imax]) < 1.2 * p.big_r);
}

TEST_CASE("sensitivity guards") {
    auto p = fig7_params();
    const auto grid = linear_grid(-10.0, 10.0, 11);
    CHECK_THROWS_AS(spectrum_sensitivity(p, p.kr12, grid, 0.0), DomainError);
    CHECK_THROWS_AS(spectrum_sensitivity(p, p.kr12, grid, 0.2), DomainError);
}

TEST_CASE("fisher information: frozen-geometry control gives zero") {
    // direct-coupling parameters do not respond to kr12 at all; the sensitivity
    // chain is what carries the signal
    auto p = fig7_params();
    p.omega_drive = 6.0;
    auto frozen = SystemParams::from_j_delta(p.j_coupling, p.delta_emit);
    frozen.with_rates(p.gamma, p.gamma12).with_detector(p.det_linewidth);
    frozen.omega_drive = p.omega_drive;
    const auto grid = linear_grid(-1.5 * p.big_r, 1.5 * p.big_r, 201);
    // re-deriving J from kr12 is impossible for direct parameters
    CHECK_THROWS_AS(fisher_information(frozen, 0.17, grid, {}), ConfigError);
    // freezing by hand: identical spectra at kr +- h imply zero sensitivity
    const auto s = rf_spectrum(frozen, grid);
    double f = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ds = (s.total[i] - s.total[i]);
        f += ds * ds / std::max(s.total[i], 1e-300);
    }
    CHECK(f == 0.0);
}

TEST_CASE("fisher information: two-photon resonance beats the one-photon resonances") {
    auto p = fig7_params();
    p.omega_drive = 6.5;
    const auto grid = linear_grid(-3.0 * p.big_r, 3.0 * p.big_r, 1201);
    FisherOptions opt;
    opt.richardson_check = false;
    auto at_delta = [&](double d) {
        auto q = p;
        q.delta_laser = d;
        return fisher_information(q, q.kr12, grid, opt).fisher;
    };
    const double f0 = at_delta(0.0);
    CHECK(f0 > at_delta(p.big_r));
    CHECK(f0 > at_delta(-p.big_r));
}

TEST_CASE("fisher report bookkeeping and eta linearity") {
    auto p = fig7_params();
    p.omega_drive = 5.0;
    const auto grid = linear_grid(-2.0 * p.big_r, 2.0 * p.big_r, 401);
    FisherOptions opt;
    const auto rep = fisher_information(p, p.kr12, grid, opt);
    CHECK(rep.fisher > 0.0);
    CHECK(rep.crlb == doctest::Approx(1.0 / rep.fisher));
    CHECK(rep.n_points_used + rep.n_points_excluded == grid.size());
    CHECK(rep.grid.n == grid.size());
    CHECK(rep.fd_step == doctest::Approx(1e-4 * 0.17));

    FisherOptions opt2 = opt;
    opt2.eta = 2.0;
    const auto rep2 = fisher_information(p, p.kr12, grid, opt2);
    CHECK(rep2.fisher == doctest::Approx(2.0 * rep.fisher).epsilon(1e-12));
}

TEST_CASE("fisher sum over grid sensors scales with grid density in smooth regions") {
    auto p = fig7_params();
    p.omega_drive = 6.0;
    FisherOptions opt;
    opt.richardson_check = false;
    const auto g1 = linear_grid(-2.0 * p.big_r, 2.0 * p.big_r, 1001);
    const auto g2 = linear_grid(-2.0 * p.big_r, 2.0 * p.big_r, 2001);
    const auto r1 = fisher_information(p, p.kr12, g1, opt);
    const auto r2 = fisher_information(p, p.kr12, g2, opt);
    const double per_point1 = r1.fisher / double(r1.n_points_used);
    const double per_point2 = r2.fisher / double(r2.n_points_used);
    CHECK(std::abs(per_point1 - per_point2) / per_point2 < 0.02);
}

TEST_CASE("a 1x1 fisher map equals the single-point call") {
    auto p = fig7_params();
    p.omega_drive = 6.0;
    const auto grid = linear_grid(-1.5 * p.big_r, 1.5 * p.big_r, 201);
    FisherOptions opt;
    opt.richardson_check = false;
    const AxisSpec a1{SweepAxis::Omega, 6.0, 6.0, 1};
    const AxisSpec a2{SweepAxis::DeltaLaser, 0.0, 0.0, 1};
    const auto map = fisher_map(p, a1, a2, grid, 2, opt);
    const auto single = fisher_information(p, p.kr12, grid, opt);
    CHECK(map.cells[0][0].fisher == doctest::Approx(single.fisher).epsilon(1e-12));
}

TEST_CASE("fisher map over the detuning axis shows ridges at the three resonances") {
    auto p = fig7_params();
    p.omega_drive = 6.5;
    const auto grid = linear_grid(-3.0 * p.big_r, 3.0 * p.big_r, 1201);
    FisherOptions opt;
    opt.richardson_check = false;
    const AxisSpec a1{SweepAxis::Omega, 6.5, 6.5, 1};
    const AxisSpec a2{SweepAxis::DeltaLaser, -1.2 * p.big_r, 1.2 * p.big_r, 49};
    const auto map = fisher_map(p, a1, a2, grid, 4, opt);
    const auto ds = a2.values();
    std::vector<double> f(ds.size());
    for (std::size_t j = 0; j < ds.size(); ++j) f[j] = map.cells[0][j].fisher;
    // local maxima of F(Delta)
    std::vector<double> ridges;
    for (std::size_t j = 1; j + 1 < f.size(); ++j)
        if (f[j] > f[j - 1] && f[j] >= f[j + 1] &&
            f[j] > 1e-3 * *std::max_element(f.begin(), f.end()))
            ridges.push_back(ds[j]);
    REQUIRE(ridges.size() >= 3);
    auto near = [&](double target) {
        return std::any_of(ridges.begin(), ridges.end(), [&](double r) {
            return std::abs(r - target) < 0.15 * p.big_r;
        });
    };
    CHECK(near(0.0));
    CHECK(near(p.big_r));
    CHECK(near(-p.big_r));
    // nonnegative additivity: a summed map dominates any single cell
    double total = 0.0;
    for (double v : f) total += v;
    CHECK(total >= *std::max_element(f.begin(), f.end()));
}

TEST_CASE("fisher guards: detector linewidth and no-signal floor") {
    auto p = fig7_params();
    p.det_linewidth = 0.0;
    const auto grid = linear_grid(-10.0, 10.0, 11);
    CHECK_THROWS_AS(fisher_information(p, p.kr12, grid, {}), DomainError);
}
