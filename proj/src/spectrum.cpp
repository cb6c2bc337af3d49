#include "dimerfl/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dimerfl/errors.hpp"

namespace dimerfl {

using std::complex;
using namespace std::complex_literals;

namespace {

constexpr double kCondFallback = 1e10;   // eigenvector conditioning limit
constexpr double kStationaryCut = 1e-9;  // relative cutoff for the zero mode

Vector16cd trace_vector(const Matrix4cd& b) {
    // Tr[B unvec(x)] = vec(B^T) . x  (plain dot product, no conjugation)
    return vectorize(b.transpose());
}

}  // namespace

SpectralSolver::SpectralSolver(const Liouvillian& liou, const DensityMatrix& rho_ss,
                               bool force_direct)
    : liou_(liou.m), rho_(rho_ss.m) {
    if (rho_ss.basis != Basis::Bare)
        throw DomainError("SpectralSolver: steady state must be in the bare basis");
    Eigen::ComplexEigenSolver<Matrix16cd> es(liou_);
    if (es.info() != Eigen::Success)
        throw NumericalError("SpectralSolver: eigendecomposition failed");
    eigenvalues_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
    scale_ = eigenvalues_.cwiseAbs().maxCoeff();

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vectors_);
    cond_ = svd.singularValues()(0) / svd.singularValues()(15);
    direct_ = force_direct || !(cond_ < kCondFallback);
    if (!direct_) vectors_inv_ = vectors_.partialPivLu().inverse();
}

std::vector<double> SpectralSolver::series(const Matrix4cd& a, const Matrix4cd& b,
                                           const std::vector<double>& omegas,
                                           double gamma_det) const {
    if (gamma_det < 0.0) throw DomainError("spectral_function: detector linewidth must be >= 0");
    const complex<double> mean_a = (rho_ * a).trace();
    const Vector16cd x0 = vectorize(rho_ * (a - mean_a * Matrix4cd::Identity()));
    const Vector16cd bvec = trace_vector(b);

    std::vector<double> out(omegas.size());
    if (!direct_) {
        const Vector16cd y = vectors_inv_ * x0;
        const Vector16cd w = vectors_.transpose() * bvec;
        Vector16cd c = w.cwiseProduct(y);
        double cnorm = 0.0;
        for (int k = 0; k < 16; ++k) {
            // the stationary mode carries no connected correlation
            if (std::abs(eigenvalues_(k)) < kStationaryCut * scale_) c(k) = 0.0;
            cnorm = std::max(cnorm, std::abs(c(k)));
        }
        for (std::size_t i = 0; i < omegas.size(); ++i) {
            complex<double> acc = 0.0;
            for (int k = 0; k < 16; ++k) {
                if (c(k) == 0.0) continue;
                const complex<double> den = eigenvalues_(k) + 1.0i * omegas[i] - gamma_det;
                if (std::abs(den) < 1e-12 * scale_ && std::abs(c(k)) > 1e-12 * cnorm)
                    throw SingularResolventError(omegas[i]);
                acc += c(k) / den;
            }
            out[i] = -std::real(acc) / std::numbers::pi;
        }
        return out;
    }

    // ill-conditioned eigenvectors: solve (L + (i omega - Gamma) Id) x = x0 per point
    const Matrix16cd id = Matrix16cd::Identity();
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const complex<double> z = 1.0i * omegas[i] - gamma_det;
        Matrix16cd m = liou_ + z * id;
        Vector16cd x;
        if (std::abs(z) < 1e-12 * scale_) {
            // deflate the stationary direction: bordering with vec(rho) vec(Id)^+
            // is exact because Tr[x0-unvec] = 0
            m += vectorize(rho_) * vectorize(Matrix4cd::Identity()).adjoint();
            x = m.partialPivLu().solve(x0);
        } else {
            Eigen::PartialPivLU<Matrix16cd> lu(m);
            x = lu.solve(x0);
            if ((m * x - x0).norm() > 1e-8 * x0.norm() + 1e-14)
                throw SingularResolventError(omegas[i]);
        }
        out[i] = -std::real((bvec.transpose() * x)(0, 0)) / std::numbers::pi;
    }
    return out;
}

std::vector<double> spectral_function(const Liouvillian& liou, const DensityMatrix& rho_ss,
                                      const Matrix4cd& a, const Matrix4cd& b,
                                      const std::vector<double>& omegas, double gamma_det) {
    return SpectralSolver(liou, rho_ss).series(a, b, omegas, gamma_det);
}

SpectralSeries rf_spectrum(const SystemParams& p, const std::vector<double>& omegas) {
    const auto liou = build_liouvillian(p);
    const auto rho = steady_state(liou);
    const SpectralSolver solver(liou, rho);
    const Matrix4cd& s1 = sigma1();
    const Matrix4cd& s2 = sigma2();
    const double gd = p.det_linewidth;

    SpectralSeries out;
    out.omegas = omegas;
    out.det_linewidth = gd;
    out.total = solver.series((s1 + s2).adjoint(), s1 + s2, omegas, gd);
    out.s1 = solver.series(s1.adjoint(), s1, omegas, gd);
    out.s2 = solver.series(s2.adjoint(), s2, omegas, gd);
    out.s12 = solver.series(s1.adjoint(), s2, omegas, gd);
    out.s21 = solver.series(s2.adjoint(), s1, omegas, gd);
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo)) throw DomainError("linear_grid: need hi > lo and n >= 2");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return g;
}

DressedLadder dressed_ladder(const SystemParams& p) {
    if (p.delta_laser != 0.0)
        throw DomainError("dressed_ladder: perturbative ladder is defined at delta_laser = 0");
    if (!(p.big_r > 0.0)) throw DegenerateGeometryError("dressed_ladder: R must be > 0");
    DressedLadder lad;
    const double c = std::cos(p.beta);
    const double shift = p.omega_drive * p.omega_drive / p.big_r;
    lad.energies = {p.big_r + 2.0 * (1.0 + c) * shift,  // |S>
                    0.0,                                // |A2>
                    -4.0 * c * shift,                   // |S2>
                    -p.big_r - 2.0 * (1.0 - c) * shift};  // |A>
    lad.states = Matrix4cd::Identity();  // perturbative eigenvectors in {S, A2, S2, A}

    const auto& e = lad.energies;
    lad.transitions = {{0, 0, 0.0},          // central line, any i -> i
                       {1, 4, e[0] - e[3]},  // omega_1
                       {1, 3, e[0] - e[2]},  // omega_2
                       {1, 2, e[0] - e[1]},  // omega_3
                       {2, 4, e[1] - e[3]},  // omega_4
                       {3, 4, e[2] - e[3]},  // omega_5
                       {2, 3, e[1] - e[2]}}; // omega_6

    // cos(beta) underflows to ~1e-16 at the representable pi/2; treat the
    // boundary as the exact uncoupled limit
    lad.omega_2ps = c > 1e-12 ? 0.5 * std::sqrt(p.big_r * p.gamma / c)
                              : std::numeric_limits<double>::infinity();
    if (!(c > 1e-12))
        lad.warnings.push_back("beta = pi/2: no two-photon coupling, omega_2ps is infinite");
    if (p.big_r > 0.0 && p.omega_drive > 0.3 * p.big_r)
        lad.warnings.push_back("omega/R > 0.3: perturbative ladder is inaccurate, "
                               "use strong_driving_eigensystem");
    return lad;
}

StrongDrivingEigensystem strong_driving_eigensystem(const SystemParams& p) {
    if (p.delta_laser != 0.0)
        throw DomainError("strong_driving_eigensystem: defined at delta_laser = 0");
    const Matrix4cd h = build_hamiltonian(p);

    // rows: <S|, <A2|, <S2|, <A| in bare components
    const double a = std::sqrt(1.0 + std::sin(p.beta)) / std::numbers::sqrt2;
    const double b = std::sqrt(1.0 - std::sin(p.beta)) / std::numbers::sqrt2;
    const double r2 = 1.0 / std::numbers::sqrt2;
    Matrix4cd t = Matrix4cd::Zero();
    t(0, 1) = a;  t(0, 2) = b;
    t(1, 0) = r2; t(1, 3) = -r2;
    t(2, 0) = r2; t(2, 3) = r2;
    t(3, 1) = -b; t(3, 2) = a;

    const Matrix4cd hp = t * h * t.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix4cd> es(hp);
    if (es.info() != Eigen::Success)
        throw NumericalError("strong_driving_eigensystem: diagonalization failed");

    StrongDrivingEigensystem out;
    for (int k = 0; k < 4; ++k) {
        const int src = 3 - k;  // descending energies
        out.energies[k] = es.eigenvalues()(src);
        Eigen::Vector4cd v = es.eigenvectors().col(src);
        int imax = 0;
        for (int i = 1; i < 4; ++i)
            if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
        const complex<double> ph = v(imax) / std::abs(v(imax));
        out.states.col(k) = v / ph;
    }
    return out;
}

PeakList detect_peaks(const std::vector<double>& omegas, const std::vector<double>& values,
                      double prominence, double feature_scale) {
    if (omegas.empty() || omegas.size() != values.size())
        throw DomainError("detect_peaks: empty or mismatched series");
    PeakList out;
    const std::size_t n = values.size();
    if (n < 3) return out;
    const double dx = omegas[1] - omegas[0];
    if (feature_scale > 0.0 && dx > feature_scale / 5.0)
        out.warnings.push_back("grid resolution is coarser than 5 points per linewidth; "
                               "peaks may be missed");
    const double gmax = *std::max_element(values.begin(), values.end());
    if (!(gmax > 0.0)) return out;

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(values[i] > values[i - 1] && values[i] >= values[i + 1])) continue;
        // topographic prominence: descend on each side until a higher sample
        double lbase = values[i];
        for (std::size_t j = i; j-- > 0;) {
            if (values[j] > values[i]) break;
            lbase = std::min(lbase, values[j]);
        }
        double rbase = values[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values[j] > values[i]) break;
            rbase = std::min(rbase, values[j]);
        }
        const double prom = values[i] - std::max(lbase, rbase);
        if (prom < prominence * gmax) continue;

        const double d1 = values[i + 1] - values[i - 1];
        const double d2 = 2.0 * values[i] - values[i - 1] - values[i + 1];
        const double off = d2 != 0.0 ? 0.5 * d1 / d2 : 0.0;
        out.peaks.push_back({omegas[i] + off * dx, values[i]});
    }
    return out;
}

PeakList detect_peaks(const SpectralSeries& series, double prominence, double feature_scale) {
    return detect_peaks(series.omegas, series.total, prominence, feature_scale);
}

}  // namespace dimerfl
