#include "dimerfl/observables.hpp"

#include <cmath>

#include "dimerfl/errors.hpp"

namespace dimerfl {

namespace {

const Matrix4cd& field_plus() {
    static const Matrix4cd e = sigma1() + sigma2();
    return e;
}

}  // namespace

double intensity_exact(const DensityMatrix& rho) {
    // The intensity operator is defined through the bare-basis sigma ops.
    if (rho.basis != Basis::Bare)
        throw DomainError("intensity_exact: pass a bare-basis density matrix "
                          "(use to_bare_basis with the correct beta first)");
    const Matrix4cd& ep = field_plus();
    return std::real((rho.m * ep.adjoint() * ep).trace());
}

IntensitySplit intensity_effective(const EffectiveSteadyState& s, double beta) {
    const double c = std::cos(beta), sn = std::sin(beta);
    auto line = [&](double ee, double ss, double aa, std::complex<double> sa) {
        return 2.0 * ee + ss + aa + c * (ss - aa) + 2.0 * sn * std::real(sa);
    };
    IntensitySplit out;
    out.first = line(s.rho1_ee, s.rho1_ss, s.rho1_aa, s.rho1_sa);
    out.second = line(s.rho2_ee, s.rho2_ss, s.rho2_aa, 0.0);
    out.total = out.first + out.second;
    return out;
}

double g2_zero(const DensityMatrix& rho) {
    const double i = intensity_exact(rho);
    if (std::abs(i) < 1e-12)
        throw UndefinedCorrelationError("g2_zero: intensity vanishes, correlation undefined");
    const double ee = std::real(rho.m(3, 3));
    return 4.0 * ee / (i * i);
}

double g2_zero_operator(const DensityMatrix& rho) {
    const double i = intensity_exact(rho);
    if (std::abs(i) < 1e-12)
        throw UndefinedCorrelationError("g2_zero_operator: intensity vanishes");
    const Matrix4cd& ep = field_plus();
    const Matrix4cd num = ep.adjoint() * ep.adjoint() * ep * ep;
    return std::real((rho.m * num).trace()) / (i * i);
}

namespace {

double omega_v_closed_form(const SystemParams& p) {
    const double t = std::tan(p.beta);
    const double r_over_g = p.big_r / p.gamma;
    return p.big_r * std::sqrt(2.0 / (t * t + 8.0 * r_over_g * r_over_g));
}

}  // namespace

VisibilityCrossover visibility_crossover(const SystemParams& p) {
    if (p.delta_laser != 0.0)
        throw DomainError("visibility_crossover: defined at the two-photon resonance "
                          "(delta_laser = 0)");
    VisibilityCrossover out;
    const auto split = intensity_effective(combined_steady(p), p.beta);
    out.v2p = split.second / split.first;
    out.omega_v = omega_v_closed_form(p);
    out.warnings = p.validity_warnings();
    if (p.beta == 0.0 && p.gamma12 == p.gamma)
        out.warnings.push_back(
            "beta = 0 with gamma12 = gamma: the antisymmetric state is perfectly dark and "
            "the first-order background is singular");
    return out;
}

EmissionObservables emission_observables(const SystemParams& p) {
    EmissionObservables o;
    const auto rho = steady_state(build_liouvillian(p));
    o.intensity = intensity_exact(rho);
    o.g2 = g2_zero(rho);
    const auto split = intensity_effective(combined_steady(p), p.beta);
    o.i_first = split.first;
    o.i_second = split.second;
    o.i_eff = split.total;
    o.visibility = split.second / split.first;
    o.omega_v = omega_v_closed_form(p);
    return o;
}

}  // namespace dimerfl
