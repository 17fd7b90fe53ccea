#include "gaucoll/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace gaucoll {

namespace {

void require_even_square(const Mat& m, const char* name) {
    if (m.rows() != m.cols()) {
        throw ShapeError(std::string(name) + " must be square, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (m.rows() % 2 != 0) {
        throw ShapeError(std::string(name) + " must have even dimension, got " +
                         std::to_string(m.rows()));
    }
}

double scale_of(const Mat& m) {
    return std::max(1.0, m.cwiseAbs().maxCoeff());
}

} // namespace

Mat symplectic_form(int n_modes) {
    if (n_modes < 1) {
        throw ShapeError("symplectic_form: n_modes must be >= 1");
    }
    Mat omega = Mat::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

Mat vacuum_cm(int n_modes) {
    return 0.5 * Mat::Identity(2 * n_modes, 2 * n_modes);
}

Mat thermal_cm(double occupation, int n_modes) {
    if (occupation < 0.0) {
        throw DomainError("thermal_cm: occupation must be non-negative");
    }
    return (occupation + 0.5) * Mat::Identity(2 * n_modes, 2 * n_modes);
}

bool is_symmetric(const Mat& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale_of(m);
}

bool is_symplectic(const Mat& s, double tol) {
    require_even_square(s, "symplectic matrix");
    const Mat omega = symplectic_form(static_cast<int>(s.rows()) / 2);
    return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff() <= tol;
}

bool is_valid_cm(const Mat& sigma, double tol) {
    require_even_square(sigma, "covariance matrix");
    if (!sigma.allFinite()) {
        return false;
    }
    const double scale = scale_of(sigma);
    if (!is_symmetric(sigma, kSymTol)) {
        return false;
    }
    const int n = static_cast<int>(sigma.rows()) / 2;
    CMat test = sigma.cast<std::complex<double>>();
    test += std::complex<double>(0.0, 0.5) * symplectic_form(n).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<CMat> solver(test, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tol * scale;
}

void require_valid_cm(const Mat& sigma, double tol) {
    if (!is_valid_cm(sigma, tol)) {
        throw ValidityError("matrix is not a valid covariance matrix");
    }
}

Vec symplectic_eigenvalues(const Mat& sigma, double tol) {
    require_valid_cm(sigma, tol);
    const int n = static_cast<int>(sigma.rows()) / 2;
    const CMat iomega_sigma =
        std::complex<double>(0.0, 1.0) *
        (symplectic_form(n) * sigma).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<CMat> solver(iomega_sigma, false);
    std::vector<double> moduli(2 * n);
    for (int k = 0; k < 2 * n; ++k) {
        moduli[k] = std::abs(solver.eigenvalues()(k));
    }
    std::sort(moduli.begin(), moduli.end());
    // The spectrum comes in +- pairs; average the adjacent duplicates.
    Vec out(n);
    for (int k = 0; k < n; ++k) {
        out(k) = 0.5 * (moduli[2 * k] + moduli[2 * k + 1]);
        if (out(k) < 0.5 - tol * scale_of(sigma)) {
            throw ValidityError("symplectic eigenvalue below 1/2");
        }
    }
    return out;
}

double gaussian_entropy(const Mat& sigma, double tol) {
    const Vec nu = symplectic_eigenvalues(sigma, tol);
    double total = 0.0;
    for (int k = 0; k < nu.size(); ++k) {
        const double up = nu(k) + 0.5;
        const double down = nu(k) - 0.5;
        double h = up * std::log(up);
        if (down > 0.0) {
            h -= down * std::log(down); // x ln x -> 0 as x -> 0+
        }
        total += h;
    }
    return total;
}

double hermitian_negativity(const CMat& m, double tol) {
    if (m.rows() != m.cols()) {
        throw ShapeError("hermitian_negativity: matrix must be square");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale) {
        throw ShapeError("hermitian_negativity: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMat> solver(0.5 * (m + m.adjoint()),
                                               Eigen::EigenvaluesOnly);
    double total = 0.0;
    for (int k = 0; k < solver.eigenvalues().size(); ++k) {
        const double v = solver.eigenvalues()(k);
        total += 0.5 * (std::abs(v) - v);
    }
    return total;
}

} // namespace gaucoll
