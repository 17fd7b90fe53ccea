#pragma once

#include "gaucoll/collision_model.hpp"
#include "gaucoll/types.hpp"

#include <array>
#include <complex>
#include <optional>

namespace gaucoll {

/// Tolerance band around spectral radius 1 reported as marginal.
inline constexpr double kGasTol = 1e-8;

/// Fixed point gamma* of the embedding recurrence, from the linear system
/// (I - X kron X) vec(gamma*) = vec(Y). Throws NoFixedPointError when the
/// system is singular or ill-conditioned, or when the residual
/// |gamma* - X gamma* X^T - Y| exceeds 1e-9.
Mat fixed_point(const EmbeddingChannel& ch, double cond_max = kCondMax);

struct GasResult {
    bool gas = false;
    double spectral_radius = 0.0;
};

/// The fixed point is a globally asymptotic state iff all eigenvalues of X
/// lie strictly inside the unit circle: gas = (spectral_radius < 1 - tol).
GasResult is_gas(const Mat& x, double tol = kGasTol);

/// Closed-form eigenvalues of the 2x2 reduced matrix chi of the
/// beam-splitter embedding (X carries each with multiplicity 2):
/// (1/2)(-wx + x +- sqrt((w+1)^2 x^2 + 4 w y^2)). Complex for w < 0 regions.
std::array<std::complex<double>, 2> bs_eigenvalues(double lambda_s,
                                                   double lambda_e);

/// Closed-form eigenvalues of the two-mode-squeezing embedding matrix:
/// (1/2)((1+wt)x +- sqrt((wt-1)^2 x^2 - 4 wt y^2)) and
/// (1/2)((1-wt)x +- sqrt((wt+1)^2 x^2 + 4 wt y^2)).
std::array<std::complex<double>, 4> tms_eigenvalues(double lambda_s,
                                                    double nu_e);

/// Critical squeezing asinh(1): spectral radius of the TMS embedding
/// crosses 1 there (sinh of it equals 1).
double tms_critical();

struct StabilityReport {
    CVec eigenvalues_x;
    double spectral_radius = 0.0;
    bool gas = false;
    bool marginal = false; // |spectral_radius - 1| <= kGasTol
    double unit_circle_distance = 0.0;
    std::optional<Mat> fixed_point;
};

/// Eigenvalues, GAS classification and (when the resolvent is regular) the
/// fixed point of an embedding channel.
StabilityReport analyze_stability(const EmbeddingChannel& ch,
                                  double cond_max = kCondMax);

} // namespace gaucoll
