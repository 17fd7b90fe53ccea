#pragma once

#include "gaucoll/collision_model.hpp"
#include "gaucoll/types.hpp"

namespace gaucoll {

/// Mean excitation number of one mode: (theta_qq + theta_pp - 1)/2.
double occupation(const Mat& theta, int mode = 0, double tol = kPosTol);

/// Quantum mutual information (nats) between system and incoming ancilla:
/// S(theta) + S(ancilla block) - S(gamma). Round-off values in [-tol, 0)
/// are clamped to 0; anything more negative raises ValidityError.
double mutual_information(const EmbeddedState& state, double tol = kPosTol);

/// Steady-state occupation of the two-mode-squeezing chain,
/// sinh^2(nu_e) / (1 - sinh^2(nu_e)). Defined for 0 <= nu_e < asinh(1);
/// throws DomainError otherwise (no steady state).
double tms_steady_occupation(double nu_e);

} // namespace gaucoll
