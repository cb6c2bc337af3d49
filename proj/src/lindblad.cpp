#include "dimerfl/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dimerfl/errors.hpp"

namespace dimerfl {

using std::complex;
using namespace std::complex_literals;

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix4cd> es((m + m.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff();
}

bool DensityMatrix::is_physical(double herm_tol, double trace_tol, double pos_tol) const {
    return hermiticity_error() < herm_tol && trace_error() < trace_tol &&
           min_eigenvalue() >= -pos_tol;
}

const Matrix4cd& sigma1() {
    // |gg><eg| + |ge><ee|
    static const Matrix4cd s = [] {
        Matrix4cd s = Matrix4cd::Zero();
        s(0, 2) = 1.0;
        s(1, 3) = 1.0;
        return s;
    }();
    return s;
}

const Matrix4cd& sigma2() {
    // |gg><ge| + |eg><ee|
    static const Matrix4cd s = [] {
        Matrix4cd s = Matrix4cd::Zero();
        s(0, 1) = 1.0;
        s(2, 3) = 1.0;
        return s;
    }();
    return s;
}

Matrix4cd build_hamiltonian(const SystemParams& p) {
    const Matrix4cd& s1 = sigma1();
    const Matrix4cd& s2 = sigma2();
    Matrix4cd h = (p.delta_laser - p.delta_emit) * (s1.adjoint() * s1) +
                  (p.delta_laser + p.delta_emit) * (s2.adjoint() * s2) +
                  p.j_coupling * (s1.adjoint() * s2 + s2.adjoint() * s1) +
                  p.omega_drive * (s1 + s2 + s1.adjoint() + s2.adjoint());
    return h;
}

Vector16cd vectorize(const Matrix4cd& rho) {
    Vector16cd v;
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) v(4 * c + r) = rho(r, c);
    return v;
}

Matrix4cd unvectorize(const Vector16cd& v) {
    Matrix4cd rho;
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) rho(r, c) = v(4 * c + r);
    return rho;
}

namespace {

Matrix16cd kron4(const Matrix4cd& a, const Matrix4cd& b) {
    Matrix16cd out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

}  // namespace

Liouvillian build_liouvillian(const SystemParams& p) {
    const Matrix4cd h = build_hamiltonian(p);
    const Matrix4cd id = Matrix4cd::Identity();

    // vec(A rho B) = (B^T (x) A) vec(rho)
    Matrix16cd L = -1.0i * (kron4(id, h) - kron4(h.transpose(), id));

    const Matrix4cd* ops[2] = {&sigma1(), &sigma2()};
    const double rates[2][2] = {{p.gamma, p.gamma12}, {p.gamma12, p.gamma}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Matrix4cd& oi = *ops[i];
            const Matrix4cd& oj = *ops[j];
            const Matrix4cd ojd_oi = oj.adjoint() * oi;
            L += (rates[i][j] / 2.0) *
                 (2.0 * kron4(oj.conjugate(), oi) - kron4(id, ojd_oi) -
                  kron4(ojd_oi.transpose(), id));
        }
    }
    return {L, p};
}

DensityMatrix steady_state(const Liouvillian& L) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(L.m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double null_tol = 1e-9 * sv(0);
    int null_dim = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) < null_tol) ++null_dim;
    if (null_dim != 1) throw NonUniqueSteadyStateError(null_dim == 0 ? 0 : null_dim);

    Matrix4cd rho = unvectorize(svd.matrixV().col(15));
    rho = (rho + rho.adjoint()).eval() / 2.0;
    const complex<double> tr = rho.trace();
    if (std::abs(tr) < 1e-14)
        throw NumericalError("steady_state: null vector has vanishing trace");
    rho /= tr;

    const double residual = (L.m * vectorize(rho)).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, L.m.cwiseAbs().maxCoeff());
    if (residual > 1e-10 * scale)
        throw NumericalError("steady_state: residual " + std::to_string(residual) +
                             " exceeds tolerance");
    return {rho, Basis::Bare};
}

Matrix4cd collective_transform(double beta) {
    const double a = std::sqrt(1.0 + std::sin(beta)) / std::numbers::sqrt2;
    const double b = std::sqrt(1.0 - std::sin(beta)) / std::numbers::sqrt2;
    Matrix4cd u = Matrix4cd::Zero();
    u(0, 0) = 1.0;             // <gg|
    u(1, 1) = -b; u(1, 2) = a; // <A| = -b <ge| + a <eg|
    u(2, 1) = a;  u(2, 2) = b; // <S| =  a <ge| + b <eg|
    u(3, 3) = 1.0;             // <ee|
    return u;
}

DensityMatrix to_collective_basis(const DensityMatrix& rho, double beta) {
    if (rho.basis == Basis::Collective) return rho;
    const Matrix4cd u = collective_transform(beta);
    return {u * rho.m * u.adjoint(), Basis::Collective};
}

DensityMatrix to_bare_basis(const DensityMatrix& rho, double beta) {
    if (rho.basis == Basis::Bare) return rho;
    const Matrix4cd u = collective_transform(beta);
    return {u.adjoint() * rho.m * u, Basis::Bare};
}

}  // namespace dimerfl
