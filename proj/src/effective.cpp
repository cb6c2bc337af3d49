#include "dimerfl/effective.hpp"

#include <cmath>

#include "dimerfl/errors.hpp"

namespace dimerfl {

EffectiveRates effective_rates(const SystemParams& p) {
    const double c = std::cos(p.beta), s = std::sin(p.beta);
    EffectiveRates r;
    r.omega_2p = two_photon_rabi(p.omega_drive, p.big_r, p.beta);
    r.lamb = r.omega_2p;
    r.omega_s = p.omega_drive * std::sqrt(1.0 + c);
    r.omega_a = p.omega_drive * std::sqrt(1.0 - c);
    r.gamma_s = p.gamma + p.gamma12 * c;
    r.gamma_a = p.gamma - p.gamma12 * c;
    r.gamma_c = p.gamma12 * s;
    return r;
}

double two_photon_rabi(double omega, double big_r, double beta) {
    if (!(big_r > 0.0))
        throw DegenerateGeometryError("two_photon_rabi: R must be > 0");
    return -2.0 * omega * omega * std::cos(beta) / big_r;
}

Model2pPopulations model2p_steady(const SystemParams& p) {
    if (!(p.big_r > 0.0)) throw DegenerateGeometryError("model2p_steady: R must be > 0");
    const double c2 = std::cos(p.beta) * std::cos(p.beta);
    const double om4 = std::pow(p.omega_drive, 4);
    const double r2 = p.big_r * p.big_r;
    const double ee = 4.0 * om4 * c2 /
                      (16.0 * om4 * c2 + r2 * p.gamma * p.gamma +
                       4.0 * r2 * p.delta_laser * p.delta_laser);
    return {ee, ee, ee};
}

Model1pState model1p_steady(const SystemParams& p) {
    if (!(p.big_r > 0.0)) throw DegenerateGeometryError("model1p_steady: R must be > 0");
    const auto r = effective_rates(p);
    const double om2 = p.omega_drive * p.omega_drive;
    const double c = std::cos(p.beta), s = std::sin(p.beta);
    const double dp = p.delta_laser + p.big_r;  // detuning of |S>
    const double dm = p.delta_laser - p.big_r;  // detuning of |A>

    Model1pState st;
    st.rho1_ss = 4.0 * om2 * (1.0 + c) /
                 (r.gamma_s * r.gamma_s + 4.0 * dp * dp + 8.0 * om2 * (1.0 + c));
    st.rho1_aa = 4.0 * om2 * (1.0 - c) /
                 (r.gamma_a * r.gamma_a + 4.0 * dm * dm + 8.0 * om2 * (1.0 - c));

    // S-A coherence of the Vee model (real-valued in this rotating frame).
    const double g2 = p.gamma * p.gamma;
    const double D = p.delta_laser, D2 = D * D;
    const double R2 = p.big_r * p.big_r;
    const double num = 2.0 * om2 * s * (D2 - R2 - 2.0 * om2);
    const double den = 2.0 * (g2 * D2 + (D2 + 2.0 * om2) * (D2 + 2.0 * om2)) +
                       g2 * R2 * std::cos(2.0 * p.beta) +
                       R2 * (g2 - 4.0 * D2 + 8.0 * om2) + 2.0 * R2 * R2 -
                       4.0 * D * p.big_r * c * (g2 + 4.0 * om2);
    st.rho1_sa = num / den;

    st.rho1_ee = st.rho1_ss * st.rho1_aa;
    return st;
}

EffectiveSteadyState combined_steady(const SystemParams& p) {
    const auto m2 = model2p_steady(p);
    const auto m1 = model1p_steady(p);
    EffectiveSteadyState s;
    s.rho2_ee = m2.rho2_ee;
    s.rho2_ss = m2.rho2_ss;
    s.rho2_aa = m2.rho2_aa;
    s.rho1_ss = m1.rho1_ss;
    s.rho1_aa = m1.rho1_aa;
    s.rho1_sa = m1.rho1_sa;
    s.rho1_ee = m1.rho1_ee;
    s.combined_ee = m1.rho1_ee + m2.rho2_ee;
    s.combined_ss = m1.rho1_ss + m2.rho2_ss;
    s.combined_aa = m1.rho1_aa + m2.rho2_aa;
    s.combined_sa = m1.rho1_sa;  // the cascade model carries no S-A coherence
    s.warnings = p.validity_warnings();
    return s;
}

}  // namespace dimerfl
