#pragma once

#include "gaucoll/types.hpp"

#include <vector>

namespace gaucoll {

// Conventions: hbar = 1, quadrature ordering (q1, p1, q2, p2, ...),
// vacuum covariance matrix = I/2.

/// Symplectic form Omega: direct sum of n_modes copies of [[0,1],[-1,0]].
Mat symplectic_form(int n_modes);

/// Vacuum state covariance matrix, (1/2) I.
Mat vacuum_cm(int n_modes = 1);

/// Thermal state with the given occupation per mode: (occupation + 1/2) I.
Mat thermal_cm(double occupation, int n_modes = 1);

bool is_symmetric(const Mat& m, double tol = kSymTol);

/// SOmegaS^T == Omega up to tol. Throws ShapeError on odd dimension.
bool is_symplectic(const Mat& s, double tol = kSymTol);

/// True iff sigma is symmetric and sigma + (i/2)Omega >= -tol (scaled by
/// max(1, |sigma|_inf), so diverging but physical trajectories stay valid).
/// Throws ShapeError on odd or non-square dimension.
bool is_valid_cm(const Mat& sigma, double tol = kPosTol);

/// Same predicate, throwing ValidityError with a diagnostic message.
void require_valid_cm(const Mat& sigma, double tol = kPosTol);

/// Moduli of the eigenvalues of i Omega sigma, deduplicated from 2N to N
/// values, sorted ascending. Each is >= 1/2 - tol for a valid state.
Vec symplectic_eigenvalues(const Mat& sigma, double tol = kPosTol);

/// Von Neumann entropy of a Gaussian state, in nats:
/// sum_k h(nu_k), h(nu) = (nu+1/2)ln(nu+1/2) - (nu-1/2)ln(nu-1/2), h(1/2) = 0.
double gaussian_entropy(const Mat& sigma, double tol = kPosTol);

/// Summed negative-eigenvalue weight sum_k (|m_k| - m_k)/2 of a Hermitian
/// matrix. Throws ShapeError if m deviates from Hermitian beyond tol
/// (scaled by max(1, |m|_inf)).
double hermitian_negativity(const CMat& m, double tol = kSymTol);

} // namespace gaucoll
