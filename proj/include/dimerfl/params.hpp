#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dimerfl {

/// How the coherent coupling J (and optionally gamma12) is tied to the
/// emitter separation kr12.
enum class CouplingMode {
    Direct,     ///< J supplied directly; kr12 unknown
    NearField,  ///< J = 3 sqrt(g1 g2) [1 - 3 (mu.r)^2] / (4 kr12^3), gamma12 = sqrt(g1 g2)
    Exact,      ///< full retarded dipole-dipole expressions
};

struct CouplingRates {
    double j_coupling;
    double gamma12;
};

/// Dipole-dipole coupling rates at normalized separation kr12.
/// `nearfield` uses the kr12 << 1 limits, `exact` the full trigonometric forms.
CouplingRates coupling_from_distance(double kr12, double gamma1, double gamma2,
                                     double mu_dot_r, CouplingMode mode);

/// Mixing angle beta = atan2(delta_emit, j_coupling); in [0, pi/2] for
/// non-negative arguments. Throws DegenerateGeometryError when both vanish.
double mixing_angle(double delta_emit, double j_coupling);

/// Inverse reparametrization: J = R cos(beta), delta = R sin(beta).
struct JDelta {
    double j_coupling;
    double delta_emit;
};
JDelta params_from_beta(double big_r, double beta);

/// All physical rates of the driven dimer, in units of the local decay rate
/// gamma. The derived pair (big_r, beta) is kept consistent with
/// (j_coupling, delta_emit) by the factory functions.
struct SystemParams {
    double delta_laser = 0.0;    ///< laser detuning from the mean emitter frequency
    double delta_emit = 0.0;     ///< half the splitting between the emitter frequencies
    double omega_drive = 0.0;    ///< Rabi amplitude of the drive on each emitter
    double j_coupling = 0.0;     ///< coherent emitter-emitter coupling
    double gamma = 1.0;          ///< local decay rate; the global rate unit
    double gamma12 = 0.999;      ///< collective decay rate
    double big_r = 0.0;          ///< sqrt(J^2 + delta_emit^2)
    double beta = 0.0;           ///< atan2(delta_emit, J)
    double kr12 = 0.0;           ///< normalized separation; 0 when unknown
    double mu_dot_r = 0.0;       ///< dipole-separation alignment, in [-1, 1]
    double det_linewidth = 0.0;  ///< sensor (detector) linewidth Gamma
    CouplingMode mode = CouplingMode::Direct;

    /// Construct from (J, delta_emit).
    static SystemParams from_j_delta(double j_coupling, double delta_emit);
    /// Construct from (kr12, delta_emit); derives J (and gamma12 unless
    /// overridden later) through `mode`.
    static SystemParams from_kr12(double kr12, double delta_emit,
                                  CouplingMode mode = CouplingMode::NearField,
                                  double mu_dot_r = 0.0);
    /// Construct from (big_r, beta).
    static SystemParams from_beta(double big_r, double beta);

    SystemParams& with_drive(double omega, double delta_laser);
    SystemParams& with_rates(double gamma, double gamma12);
    SystemParams& with_detector(double det_linewidth);

    /// Re-derive J, R, beta at a new separation, keeping every other rate.
    /// Requires a distance-based coupling mode.
    SystemParams at_kr12(double new_kr12) const;

    /// Throws DomainError / DegenerateGeometryError on violated invariants.
    void validate() const;

    /// Non-fatal regime notes (perturbative formulas assume R as the
    /// dominant scale).
    std::vector<std::string> validity_warnings() const;
};

/// Parsed key=value configuration text (UTF-8, '#' comments).
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Build SystemParams from config keys. Exactly one of the parameter pairs
/// (j_coupling, delta_emit), (kr12 [, delta_emit]), (big_r, beta) must be
/// present; anything else is a ConfigError.
SystemParams params_from_config(const std::map<std::string, std::string>& kv);

}  // namespace dimerfl
