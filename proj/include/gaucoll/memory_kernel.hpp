#pragma once

#include "gaucoll/collision_model.hpp"
#include "gaucoll/types.hpp"

#include <string>
#include <vector>

namespace gaucoll {

/// Column-stacking vectorization and its inverse.
Vec vec(const Mat& m);
Mat unvec(const Vec& v, int rows, int cols);

/// Kronecker product, so that vec(ABC) = (C^T kron A) vec(B).
Mat kron(const Mat& a, const Mat& b);

/// Projection machinery for the Nakajima-Zwanzig reduction of the embedding:
/// P = P_S kron P_S projects vectorized covariance matrices onto the system
/// block, Q = I - P, and the rectangular selector satisfies
/// selector * vec(gamma) = vec(theta), selector * selector^T = I,
/// selector^T * selector = P.
struct VectorizationContext {
    int system_modes = 1;
    int ancilla_modes = 1;
    Mat p_system;   // P_S, dim 2(N_S + N_E)
    Mat p_ancilla;  // P_E
    Mat projector;  // P, dim (2(N_S + N_E))^2
    Mat complement; // Q
    Mat selector;   // pi, (2 N_S)^2 x (2(N_S + N_E))^2
};

VectorizationContext build_context(int system_modes, int ancilla_modes);

/// Memory-kernel matrix of size (2 N_S)^2:
/// K_n = pi (XkX) Q [Q (XkX) Q]^n Q (XkX) pi^T, with XkX = X kron X.
/// Depends only on X. The outer Q factors make the expression valid at n = 0.
Mat mk_matrix(const Mat& x, const VectorizationContext& ctx, int n);

/// Orthogonal basis {I, sigma_z, sigma_plus, sigma_minus} of real 2x2
/// matrices (trace inner product norms {2, 2, 1, 1}).
std::vector<Mat> pauli_basis();
std::vector<std::string> pauli_basis_labels(); // {"1", "z", "p", "m"}

/// Orthonormal matrix-unit basis of real dim x dim matrices, for multimode
/// systems where the Pauli set does not apply.
std::vector<Mat> matrix_unit_basis(int dim);

/// Expansion weights kappa_ij of a kernel matrix over an orthogonal basis:
/// K = sum_ij kappa_ij (M_j kron M_i), kappa_ij = tr[(M_j^T kron M_i^T) K] /
/// (tr(M_i^T M_i) tr(M_j^T M_j)). Throws BasisError if the basis is not
/// orthogonal or does not span.
Mat kraus_coefficients(const Mat& kernel_matrix, const std::vector<Mat>& basis);

/// sum_ij kappa_ij M_i theta M_j^T.
Mat apply_kernel(const Mat& coefficients, const std::vector<Mat>& basis,
                 const Mat& theta);

/// Inhomogeneous contribution G_n to the reduced recurrence; depends only on
/// the ancilla blocks of gamma0, never on theta0.
Mat inhomogeneous_term(const Mat& x, const Mat& y,
                       const VectorizationContext& ctx, const Mat& gamma0,
                       int n);

/// Kernel matrices, their basis expansion and the basis itself, for
/// n = 0 ... n_max. Built with cached powers of Q (X kron X) Q.
struct KernelSeries {
    std::vector<Mat> kernel_matrices;
    std::vector<Mat> coefficients; // one kappa matrix per step
    std::vector<Mat> basis;
};

KernelSeries compute_kernel_series(const Mat& x, const VectorizationContext& ctx,
                                   int n_max, std::vector<Mat> basis = {});

/// Rebuilds theta^0 ... theta^n_max from the reduced recurrence
///   theta^{n+1} = X11 theta^n X11^T + sum_{r<n} K_{n-r-1}(theta^r) + G_n,
/// with the kernel applied through its Kraus expansion. Matches evolve().
std::vector<Mat> reconstruct_trajectory(const ModelSpec& spec, int n_max);

/// Compact beam-splitter kernel from 4-dimensional objects:
/// kappa_11^n = <00| chib Qb (Qb chib Qb)^n Qb chib |00>,
/// chi = [[x, y], [yw, -xw]], chib = chi kron chi, Qb = I4 - ps kron ps.
double bs_compact_kernel(double lambda_s, double lambda_e, int n);
std::vector<double> bs_compact_kernel_series(double lambda_s, double lambda_e,
                                             int n_max);

/// Memory kernels of <Q^2> and <P^2> for single-mode dynamics:
/// kappa_q = k11 + k1z + kz1 + kzz, kappa_p = k11 - k1z - kz1 + kzz.
struct QpKernels {
    double q = 0.0;
    double p = 0.0;
};
QpKernels tms_qp_kernels(const Mat& coefficients);

} // namespace gaucoll
