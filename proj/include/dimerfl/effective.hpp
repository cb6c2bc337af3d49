#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dimerfl/params.hpp"

namespace dimerfl {

/// Rates of the two effective three-level reductions (cascade and Vee).
struct EffectiveRates {
    double omega_2p;  ///< two-photon Rabi frequency, -2 Omega^2 cos(beta) / R
    double lamb;      ///< common light shift of |gg> and |ee>; equals omega_2p
    double omega_s;   ///< drive matrix element to |S>,  Omega sqrt(1 + cos beta)
    double omega_a;   ///< drive matrix element to |A>,  Omega sqrt(1 - cos beta)
    double gamma_s;   ///< gamma + gamma12 cos(beta)
    double gamma_a;   ///< gamma - gamma12 cos(beta)
    double gamma_c;   ///< incoherent S<->A coupling, gamma12 sin(beta)
};

EffectiveRates effective_rates(const SystemParams& p);

/// Two-photon Rabi frequency of the |gg> <-> |ee> second-order coupling.
double two_photon_rabi(double omega, double big_r, double beta);

/// Steady state of the second-order (cascade) model.
struct Model2pPopulations {
    double rho2_ee;
    double rho2_ss;  ///< equals rho2_ee
    double rho2_aa;  ///< equals rho2_ee
};
Model2pPopulations model2p_steady(const SystemParams& p);

/// Steady state of the first-order (Vee) model, two-level-reduced populations
/// plus the printed S-A coherence.
struct Model1pState {
    double rho1_ss;
    double rho1_aa;
    std::complex<double> rho1_sa;
    double rho1_ee;  ///< regularization term, rho1_ss * rho1_aa
};
Model1pState model1p_steady(const SystemParams& p);

/// Additive combination of the two effective models.
struct EffectiveSteadyState {
    double rho2_ee, rho2_ss, rho2_aa;
    double rho1_ss, rho1_aa, rho1_ee;
    std::complex<double> rho1_sa;
    double combined_ee, combined_ss, combined_aa;
    std::complex<double> combined_sa;
    std::vector<std::string> warnings;
};
EffectiveSteadyState combined_steady(const SystemParams& p);

}  // namespace dimerfl
