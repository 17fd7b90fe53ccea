#pragma once

#include "gaucoll/collision_model.hpp"
#include "gaucoll/types.hpp"

#include <vector>

namespace gaucoll {

/// Affine Gaussian map theta -> X theta X^T + Y between two time steps.
struct GaussianMap {
    Mat x_map;
    Mat y_map;
    int from_step = 0;
    int to_step = 0;
};

/// Map from step 0 to n, read off the matrix powers of the embedding:
/// X_n = (X^n)_11, Y_n = (X^n)_12 eps (X^n)_12^T + sum_{j<n} [X^j Y (X^T)^j]_11.
GaussianMap cumulative_map(const EmbeddingChannel& ch, const Mat& epsilon, int n);

/// All cumulative maps 0..n_max in one pass.
std::vector<GaussianMap> cumulative_maps(const EmbeddingChannel& ch,
                                         const Mat& epsilon, int n_max);

/// Effective condition number used to guard the intermediate-map solve:
/// max(1, sigma_max) / sigma_min. Reduces to the inverse-norm amplification
/// 1/|c| for the scalar maps c*I of the beam-splitter dynamics, where the
/// classical condition number is identically 1.
double map_condition_number(const Mat& x_map);

/// Intermediate map n -> m: X_mn = X_m X_n^{-1} (computed by a linear solve),
/// Y_mn = Y_m - X_mn Y_n X_mn^T. Throws IllConditionedError carrying the
/// condition number when map_condition_number(X_n) exceeds cond_max.
GaussianMap intermediate_map(const GaussianMap& map_n, const GaussianMap& map_m,
                             double cond_max = kCondMax);

/// Gaussian CPTP test matrix M[X, Y] = 2Y + i Omega - i X Omega X^T
/// (Hermitian; positive semidefinite iff the map is CPTP).
CMat cptp_test_matrix(const GaussianMap& map);

/// Non-divisibility monotone N = sum_k (|m_k| - m_k)/2 over eigenvalues of
/// the CPTP test matrix; zero iff the map is a valid Gaussian CPTP map.
double non_divisibility(const GaussianMap& map);

/// N_mn over all 0 <= n < m <= n_max. Ill-conditioned pairs are flagged and
/// carried in the output instead of being skipped. Cells are independent and
/// evaluated by jobs workers; the result order is fixed regardless.
struct DivisibilityGrid {
    struct Cell {
        int from_step = 0;
        int to_step = 0;
        double value = 0.0;
        bool ill_conditioned = false;
        double condition_number = 0.0;
        Mat x_map, y_map; // the intermediate map behind the value; empty if flagged
    };
    std::vector<Cell> cells; // ordered by (from_step, to_step)
};

DivisibilityGrid divisibility_grid(const ModelSpec& spec, int n_max,
                                   int jobs = 1, double cond_max = kCondMax);

} // namespace gaucoll
