#pragma once

#include <Eigen/Dense>
#include <complex>

#include "dimerfl/params.hpp"

namespace dimerfl {

using Matrix4cd = Eigen::Matrix4cd;
using Matrix16cd = Eigen::Matrix<std::complex<double>, 16, 16>;
using Vector16cd = Eigen::Matrix<std::complex<double>, 16, 1>;

/// Ordering of the 4-dimensional state space.
enum class Basis {
    Bare,        ///< |gg>, |ge>, |eg>, |ee>  (|xy> = |x>_1 (x) |y>_2)
    Collective,  ///< |gg>, |A>, |S>, |ee>
};

/// 4x4 Hermitian unit-trace state together with its basis tag.
struct DensityMatrix {
    Matrix4cd m = Matrix4cd::Zero();
    Basis basis = Basis::Bare;

    double trace_error() const { return std::abs(m.trace() - 1.0); }
    double hermiticity_error() const { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;
    bool is_physical(double herm_tol = 1e-10, double trace_tol = 1e-10,
                     double pos_tol = 1e-9) const;
};

/// Lowering operators of the two emitters in the bare basis.
const Matrix4cd& sigma1();
const Matrix4cd& sigma2();

/// Driven-dimer Hamiltonian in the bare basis (rotating frame of the laser):
/// (D-d) n1 + (D+d) n2 + J (s1+ s2 + h.c.) + Omega (s1 + s2 + h.c.).
Matrix4cd build_hamiltonian(const SystemParams& p);

/// Master-equation generator acting on column-stacked rho.
struct Liouvillian {
    Matrix16cd m;
    SystemParams params;
};

Liouvillian build_liouvillian(const SystemParams& p);

/// vec/unvec in the column-stacking convention: vec(rho)[4*col + row] = rho(row, col).
Vector16cd vectorize(const Matrix4cd& rho);
Matrix4cd unvectorize(const Vector16cd& v);

/// Unique stationary state of L, from the null singular vector, trace
/// normalized. Throws NonUniqueSteadyStateError when the null space has
/// dimension > 1 at relative tolerance 1e-9.
DensityMatrix steady_state(const Liouvillian& L);

/// Unitary 4x4 change of basis Bare -> Collective for mixing angle beta;
/// rows are <gg|, <A|, <S|, <ee| in bare components.
Matrix4cd collective_transform(double beta);

DensityMatrix to_collective_basis(const DensityMatrix& rho, double beta);
DensityMatrix to_bare_basis(const DensityMatrix& rho, double beta);

}  // namespace dimerfl
