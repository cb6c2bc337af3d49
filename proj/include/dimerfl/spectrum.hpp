#pragma once

#include <array>
#include <string>
#include <vector>

#include "dimerfl/lindblad.hpp"

namespace dimerfl {

/// Frequency grid (relative to the laser) with the total emission spectrum
/// and its emitter/interference components.
struct SpectralSeries {
    std::vector<double> omegas;
    std::vector<double> total;
    std::vector<double> s1, s2;    ///< single-emitter spectra
    std::vector<double> s12, s21;  ///< interference terms (may be negative)
    double det_linewidth = 0.0;
};

/// Evaluates S(omega; A, B) = (1/pi) Re Tr{ -B (L + i(omega + i Gamma))^-1 [rho (A - <A>)] }
/// from one eigendecomposition of L, amortized over grid points and operator
/// pairs. Falls back to per-frequency linear solves when the eigenvector
/// matrix is ill-conditioned.
class SpectralSolver {
  public:
    /// `force_direct` skips the eigendecomposition route (used to exercise the
    /// fallback in tests).
    SpectralSolver(const Liouvillian& liou, const DensityMatrix& rho_ss,
                   bool force_direct = false);

    std::vector<double> series(const Matrix4cd& a, const Matrix4cd& b,
                               const std::vector<double>& omegas, double gamma_det) const;

    double eigenvector_condition() const { return cond_; }
    bool uses_direct_solve() const { return direct_; }

  private:
    Matrix16cd liou_;
    Matrix4cd rho_;
    Vector16cd eigenvalues_;
    Matrix16cd vectors_, vectors_inv_;
    double scale_ = 0.0;  ///< max |eigenvalue|, sets the stationary-mode cutoff
    double cond_ = 0.0;
    bool direct_ = false;
};

/// One-shot spectral function (builds a solver internally).
std::vector<double> spectral_function(const Liouvillian& liou, const DensityMatrix& rho_ss,
                                      const Matrix4cd& a, const Matrix4cd& b,
                                      const std::vector<double>& omegas, double gamma_det);

/// Total resonance-fluorescence spectrum and its decomposition
/// S = S1 + S2 + S12 + S21. Uses p.det_linewidth as the sensor linewidth.
SpectralSeries rf_spectrum(const SystemParams& p, const std::vector<double>& omegas);

/// Uniformly spaced grid helper.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

/// A dressed-state transition between perturbative levels i -> j (1-based,
/// ordered by decreasing energy).
struct Transition {
    int from, to;
    double omega;
};

/// Perturbative (weak-drive) two-photon dressed ladder at Delta = 0.
struct DressedLadder {
    std::array<double, 4> energies;  ///< E1 >= E2 >= E3 >= E4
    /// eigenvector components over {|S>, |A2>, |S2>, |A>}, one column per state
    Matrix4cd states;
    std::vector<Transition> transitions;  ///< omega_0 ... omega_6
    double omega_2ps;  ///< two-photon saturation amplitude; +inf at beta = pi/2
    std::vector<std::string> warnings;
};
DressedLadder dressed_ladder(const SystemParams& p);

/// Numerically exact eigensystem of the driven Hamiltonian at Delta = 0,
/// expressed in the {|S>, |A2>, |S2>, |A>} basis; energies sorted descending,
/// eigenvector phases fixed so the largest component is real positive.
struct StrongDrivingEigensystem {
    std::array<double, 4> energies;
    Matrix4cd states;  ///< columns are eigenvectors over {|S>, |A2>, |S2>, |A>}
};
StrongDrivingEigensystem strong_driving_eigensystem(const SystemParams& p);

struct Peak {
    double omega;
    double height;
};

/// Local maxima with topographic prominence above `prominence` times the
/// global maximum, positions refined by three-point parabolic interpolation.
struct PeakList {
    std::vector<Peak> peaks;
    std::vector<std::string> warnings;
};
PeakList detect_peaks(const std::vector<double>& omegas, const std::vector<double>& values,
                      double prominence, double feature_scale = 0.0);

PeakList detect_peaks(const SpectralSeries& series, double prominence, double feature_scale = 0.0);

}  // namespace dimerfl
