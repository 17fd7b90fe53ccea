#pragma once

#include "gaucoll/types.hpp"

#include <variant>
#include <vector>

namespace gaucoll {

// System-ancilla interaction: a beam splitter with angle lambda_s, or
// arbitrary blocks (a, b; c, d) assembled as in the collision symplectic.
struct BeamSplitterSE {
    double lambda_s = 0.0;
};
struct GeneralSE {
    Mat a, b, c, d;
};
using SEInteraction = std::variant<BeamSplitterSE, GeneralSE>;

// Ancilla-ancilla interaction: beam splitter (lambda_e), two-mode squeezer
// (nu_e), or arbitrary blocks (e, f; g, j).
struct BeamSplitterEE {
    double lambda_e = 0.0;
};
struct TwoModeSqueezerEE {
    double nu_e = 0.0;
};
struct GeneralEE {
    Mat e, f, g, j;
};
using EEInteraction = std::variant<BeamSplitterEE, TwoModeSqueezerEE, GeneralEE>;

/// Full description of a collisional model: interaction choices, the iid
/// ancilla state epsilon and the initial system state theta0.
struct ModelSpec {
    int system_modes = 1;
    int ancilla_modes = 1;
    SEInteraction se{BeamSplitterSE{}};
    EEInteraction ee{BeamSplitterEE{}};
    Mat ancilla_state; // epsilon, dim 2*ancilla_modes
    Mat system_init;   // theta0, dim 2*system_modes

    /// Beam-splitter chain; angles wrapped to (-pi, pi].
    static ModelSpec beam_splitter(double lambda_s, double lambda_e,
                                   const Mat& theta0, const Mat& epsilon);
    /// Two-mode-squeezing chain; nu_e taken as |nu_e| (sign immaterial).
    static ModelSpec two_mode_squeezer(double lambda_s, double nu_e,
                                       const Mat& theta0, const Mat& epsilon);
    static ModelSpec general(Mat a, Mat b, Mat c, Mat d, Mat e, Mat f, Mat g,
                             Mat j, const Mat& theta0, const Mat& epsilon);

    /// Checks block dimensions, symplecticity of the assembled collision
    /// matrices and validity of epsilon and theta0. Throws on failure.
    void validate() const;
};

struct SEBlocks {
    Mat a, b, c, d;
};
struct EEBlocks {
    Mat e, f, g, j;
};

SEBlocks build_se_blocks(const ModelSpec& spec);
EEBlocks build_ee_blocks(const ModelSpec& spec);

/// Markovian embedding of the covariance-matrix recurrence:
/// gamma' = X gamma X^T + Y on the space of system + one carried ancilla.
struct EmbeddingChannel {
    Mat x;
    Mat y;
};

/// X = [[A, B], [GC, GD]], Y = diag(0, J epsilon J^T).
EmbeddingChannel build_embedding(const ModelSpec& spec);

/// Covariance matrix of system + incoming ancilla after step_index collisions.
struct EmbeddedState {
    Mat gamma;
    int step_index = 0;
    int system_dim = 2; // rows of the theta block

    Mat theta() const { return gamma.topLeftCorner(system_dim, system_dim); }
    Mat correlations() const {
        return gamma.topRightCorner(system_dim, gamma.cols() - system_dim);
    }
    Mat ancilla() const {
        const auto k = gamma.rows() - system_dim;
        return gamma.bottomRightCorner(k, k);
    }
};

/// gamma0 = diag(theta0, epsilon): the system uncorrelated with a fresh ancilla.
EmbeddedState initial_state(const ModelSpec& spec);

/// One application of the embedding recurrence. Validates the output state;
/// non-finite entries raise NumericOverflowError.
EmbeddedState embed_step(const EmbeddedState& state, const EmbeddingChannel& ch,
                         double tol = kPosTol);

/// Trajectory gamma^0 ... gamma^n_max of the embedded recurrence.
std::vector<EmbeddedState> evolve(const ModelSpec& spec, int n_max,
                                  double tol = kPosTol);

/// gamma^n = X^n gamma0 (X^T)^n + sum_{j<n} X^j Y (X^T)^j, evaluated through
/// explicit matrix powers (an algebraic route independent of embed_step).
Mat closed_form_state(const EmbeddingChannel& ch, const Mat& gamma0, int n);

/// Full-chain oracle: builds the global covariance matrix diag(theta0, eps,
/// eps, ...) and applies the collision symplectics at full size, returning the
/// system block theta^n. Guards the global dimension at max_dim.
Mat brute_force_chain(const ModelSpec& spec, int n, int max_dim = 512);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle);

} // namespace gaucoll
