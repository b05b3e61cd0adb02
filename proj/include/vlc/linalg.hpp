#pragma once

#include <algorithm>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace vlc {

/// max |M - M^dagger|
inline double hermiticity_error(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Ascending eigenvalues of the Hermitian part of `m`.
inline Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

inline double min_eigenvalue(const Eigen::MatrixXcd& m) {
    return m.size() == 0 ? 0.0 : hermitian_eigenvalues(m).minCoeff();
}

/// ||M / tr M||_F^2. For Hermitian M this is tr[(M / tr M)^2].
inline double normalized_purity(const Eigen::MatrixXcd& m) {
    const double trace = m.trace().real();
    return m.squaredNorm() / (trace * trace);
}

inline double max_abs_difference(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.size() == 0 && b.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace vlc
