#pragma once

#include <string>
#include <vector>

#include "dimerfl/effective.hpp"
#include "dimerfl/lindblad.hpp"

namespace dimerfl {

/// Tr[rho (s1+ + s2+)(s1 + s2)], evaluated in the bare basis.
double intensity_exact(const DensityMatrix& rho);

struct IntensitySplit {
    double total;   ///< I = I1 + I2
    double first;   ///< first-order (Vee) contribution
    double second;  ///< second-order (cascade) contribution
};

/// Intensity from collective-basis matrix elements,
/// I = 2 rho_ee + rho_SS + rho_AA + cos(beta)(rho_SS - rho_AA) + 2 sin(beta) Re rho_SA,
/// evaluated separately on the first- and second-order pieces and their sum.
IntensitySplit intensity_effective(const EffectiveSteadyState& s, double beta);

/// g2(0) = 4 rho_ee,ee / I^2. Throws UndefinedCorrelationError when I ~ 0.
double g2_zero(const DensityMatrix& rho);

/// Same quantity from the four-operator expectation <E- E- E+ E+> / <E- E+>^2;
/// used as the independent route in tests.
double g2_zero_operator(const DensityMatrix& rho);

struct VisibilityCrossover {
    double v2p;      ///< I2 / I1 at the given drive
    double omega_v;  ///< closed-form crossover amplitude
    std::vector<std::string> warnings;
};

/// Two-photon visibility and the minimum drive amplitude at which the
/// second-order intensity overtakes the first-order background (Delta = 0).
VisibilityCrossover visibility_crossover(const SystemParams& p);

/// Bundle of the per-point emission observables surfaced by the CLI.
struct EmissionObservables {
    double intensity;  ///< exact <I>
    double g2;         ///< exact g2(0)
    double i_first;    ///< effective-model I1
    double i_second;   ///< effective-model I2
    double i_eff;      ///< I1 + I2
    double visibility; ///< I2 / I1
    double omega_v;
};
EmissionObservables emission_observables(const SystemParams& p);

}  // namespace dimerfl
