#include "dimerfl/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dimerfl/errors.hpp"
#include "dimerfl/spectrum.hpp"
#include "dimerfl/sweep.hpp"

namespace dimerfl {

double poisson_count_prob(double mean, unsigned n) {
    if (mean < 0.0) throw DomainError("poisson_count_prob: mean must be >= 0");
    if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
    // work in logs; lgamma(n+1) = log(n!)
    const double logp = n * std::log(mean) - mean - std::lgamma(double(n) + 1.0);
    return std::exp(logp);
}

namespace {

std::vector<double> total_spectrum_at(const SystemParams& p, double kr,
                                      const std::vector<double>& omegas) {
    return rf_spectrum(p.at_kr12(kr), omegas).total;
}

std::vector<double> central_difference(const SystemParams& p, double kr12,
                                       const std::vector<double>& omegas, double h) {
    const auto sp = total_spectrum_at(p, kr12 + h, omegas);
    const auto sm = total_spectrum_at(p, kr12 - h, omegas);
    std::vector<double> d(omegas.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (sp[i] - sm[i]) / (2.0 * h);
    return d;
}

}  // namespace

std::vector<double> spectrum_sensitivity(const SystemParams& p, double kr12,
                                         const std::vector<double>& omegas, double step) {
    if (!(step > 0.0)) throw DomainError("spectrum_sensitivity: step must be > 0");
    if (!(kr12 - step > 0.0))
        throw DomainError("spectrum_sensitivity: kr12 - step leaves the valid domain");

    const auto d_h = central_difference(p, kr12, omegas, step);
    const auto d_2h = central_difference(p, kr12, omegas, 2.0 * step);

    // Richardson extrapolation D* = (4 D_h - D_2h) / 3; if D_h is far from D*
    // the difference quotient has not converged in h.
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d_h.size(); ++i) {
        const double dstar = (4.0 * d_h[i] - d_2h[i]) / 3.0;
        num += (d_h[i] - dstar) * (d_h[i] - dstar);
        den += dstar * dstar;
    }
    if (den > 0.0 && std::sqrt(num / den) > 0.05)
        throw StepSizeError("spectrum_sensitivity: Richardson check disagrees by > 5%; "
                            "use a smaller finite-difference step");
    return d_h;
}

FisherReport fisher_information(const SystemParams& p, double kr12,
                                const std::vector<double>& omegas, const FisherOptions& opt) {
    if (!(p.det_linewidth > 0.0))
        throw DomainError("fisher_information: a finite detector linewidth is required");
    const double h = opt.step_rel * kr12;

    std::vector<double> dS;
    if (opt.richardson_check) {
        dS = spectrum_sensitivity(p, kr12, omegas, h);
    } else {
        if (!(kr12 - h > 0.0)) throw DomainError("fisher_information: step leaves the domain");
        dS = central_difference(p, kr12, omegas, h);
    }
    const auto S = total_spectrum_at(p, kr12, omegas);

    const double floor = opt.floor_rel * *std::max_element(S.begin(), S.end());
    FisherReport rep;
    rep.kr12 = kr12;
    rep.delta_laser = p.delta_laser;
    rep.omega_drive = p.omega_drive;
    rep.grid = {omegas.front(), omegas.back(), omegas.size()};
    rep.fd_step = h;
    rep.eta = opt.eta;
    double f = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (!(S[i] > floor)) {
            ++rep.n_points_excluded;
            continue;
        }
        f += dS[i] * dS[i] / S[i];
        ++rep.n_points_used;
    }
    if (rep.n_points_used == 0)
        throw NoSignalError("fisher_information: every grid point fell below the spectrum floor");
    rep.fisher = opt.eta * f;
    rep.crlb = rep.fisher > 0.0 ? 1.0 / rep.fisher : std::numeric_limits<double>::infinity();
    return rep;
}

std::vector<double> AxisSpec::values() const {
    if (n == 0) throw DomainError("AxisSpec: empty range");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    if (log) {
        if (!(lo > 0.0) || !(hi > 0.0)) throw DomainError("AxisSpec: log axis needs lo, hi > 0");
        const double r = std::log(hi / lo);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = lo * std::exp(r * double(i) / double(n - 1));
    } else {
        for (std::size_t i = 0; i < n; ++i)
            v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    }
    return v;
}

namespace {

SystemParams apply_axis(const SystemParams& p, SweepAxis axis, double value, double& kr) {
    SystemParams q = p;
    switch (axis) {
        case SweepAxis::Omega: q.omega_drive = value; break;
        case SweepAxis::DeltaLaser: q.delta_laser = value; break;
        case SweepAxis::Kr12:
            q = p.at_kr12(value);
            kr = value;
            break;
    }
    return q;
}

}  // namespace

FisherMap fisher_map(const SystemParams& p, const AxisSpec& axis1, const AxisSpec& axis2,
                     const std::vector<double>& omegas, unsigned jobs,
                     const FisherOptions& opt) {
    if (!(p.kr12 > 0.0))
        throw ConfigError("fisher_map: parameters must be kr12-based (supply kr12, delta_emit)");
    const auto v1 = axis1.values();
    const auto v2 = axis2.values();
    FisherMap map;
    map.axis1 = axis1;
    map.axis2 = axis2;
    map.cells.assign(v1.size(), std::vector<FisherReport>(v2.size()));

    parallel_for(v1.size() * v2.size(), jobs, [&](std::size_t idx) {
        const std::size_t i = idx / v2.size();
        const std::size_t j = idx % v2.size();
        double kr = p.kr12;
        SystemParams q = apply_axis(p, axis1.axis, v1[i], kr);
        q = apply_axis(q, axis2.axis, v2[j], kr);
        map.cells[i][j] = fisher_information(q, kr, omegas, opt);
    });
    return map;
}

}  // namespace dimerfl
