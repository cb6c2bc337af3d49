#pragma once

#include <string>
#include <vector>

#include "dimerfl/params.hpp"

namespace dimerfl {

/// Poisson photon-counting probability mean^n e^{-mean} / n!.
double poisson_count_prob(double mean, unsigned n);

/// Central finite difference of the total spectrum with respect to kr12,
/// re-deriving the kr12 -> J -> (R, beta) chain at each perturbed point.
/// `step` is the absolute step in kr12. A one-level Richardson check guards
/// against a bad step (throws StepSizeError on > 5% disagreement).
std::vector<double> spectrum_sensitivity(const SystemParams& p, double kr12,
                                         const std::vector<double>& omegas, double step);

struct GridInfo {
    double lo = 0.0, hi = 0.0;
    std::size_t n = 0;
};

struct FisherReport {
    double fisher = 0.0;       ///< F, summed over grid sensors
    double crlb = 0.0;         ///< 1/F
    double kr12 = 0.0;
    double delta_laser = 0.0;
    double omega_drive = 0.0;
    GridInfo grid;
    double fd_step = 0.0;      ///< finite-difference step used
    double eta = 1.0;          ///< detection constant; F scales linearly in it
    std::size_t n_points_used = 0;
    std::size_t n_points_excluded = 0;  ///< grid points below the spectrum floor
};

struct FisherOptions {
    double step_rel = 1e-4;  ///< finite-difference step as a fraction of kr12
    double eta = 1.0;
    double floor_rel = 1e-12;  ///< spectrum floor, relative to max(S)
    bool richardson_check = true;
};

/// Classical Fisher information of Poissonian spectral photon counting for
/// the estimation of kr12: F = eta * sum_omega (dS/dkr12)^2 / S.
FisherReport fisher_information(const SystemParams& p, double kr12,
                                const std::vector<double>& omegas,
                                const FisherOptions& opt = {});

enum class SweepAxis { Omega, DeltaLaser, Kr12 };

struct AxisSpec {
    SweepAxis axis;
    double lo, hi;
    std::size_t n;
    bool log = false;  ///< geometric spacing

    std::vector<double> values() const;
};

/// Grid of Fisher reports over two parameter axes; cells are independent and
/// evaluated by `jobs` workers in deterministic index order.
struct FisherMap {
    AxisSpec axis1, axis2;  ///< axis1 indexes rows, axis2 columns
    std::vector<std::vector<FisherReport>> cells;
};
FisherMap fisher_map(const SystemParams& p, const AxisSpec& axis1, const AxisSpec& axis2,
                     const std::vector<double>& omegas, unsigned jobs = 1,
                     const FisherOptions& opt = {});

}  // namespace dimerfl
