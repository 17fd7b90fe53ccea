#pragma once

#include "gaucoll/collision_model.hpp"
#include "gaucoll/symplectic.hpp"
#include "gaucoll/types.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace gaucoll::testing {

inline double max_abs_diff(const Mat& a, const Mat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// Random valid covariance matrix 0.5 I + A A^T.
inline Mat random_cm(std::mt19937& rng, int n_modes = 1) {
    std::normal_distribution<double> dist(0.0, 1.0);
    const int d = 2 * n_modes;
    Mat a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            a(i, j) = dist(rng);
        }
    }
    return 0.5 * Mat::Identity(d, d) + a * a.transpose();
}

/// Random single-mode symplectic: rotation * squeeze * rotation.
inline Mat random_symplectic_2x2(std::mt19937& rng) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                 std::numbers::pi);
    std::uniform_real_distribution<double> squeeze(-1.0, 1.0);
    auto rotation = [](double t) {
        Mat r(2, 2);
        r << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
        return r;
    };
    const double r = squeeze(rng);
    Mat s = Mat::Zero(2, 2);
    s(0, 0) = std::exp(r);
    s(1, 1) = std::exp(-r);
    return rotation(angle(rng)) * s * rotation(angle(rng));
}

/// Random multimode symplectic: direct sum of single-mode blocks mixed by
/// mode-pair beam splitters.
inline Mat random_symplectic(std::mt19937& rng, int n_modes) {
    const int d = 2 * n_modes;
    Mat s = Mat::Zero(d, d);
    for (int k = 0; k < n_modes; ++k) {
        s.block(2 * k, 2 * k, 2, 2) = random_symplectic_2x2(rng);
    }
    std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                 std::numbers::pi);
    for (int k = 0; k + 1 < n_modes; ++k) {
        const double t = angle(rng);
        Mat bs = Mat::Identity(d, d);
        const Mat id = Mat::Identity(2, 2);
        bs.block(2 * k, 2 * k, 2, 2) = std::cos(t) * id;
        bs.block(2 * k, 2 * k + 2, 2, 2) = std::sin(t) * id;
        bs.block(2 * k + 2, 2 * k, 2, 2) = -std::sin(t) * id;
        bs.block(2 * k + 2, 2 * k + 2, 2, 2) = std::cos(t) * id;
        s = bs * s;
    }
    return s;
}

inline ModelSpec random_bs_spec(std::mt19937& rng, bool random_states = false) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                 std::numbers::pi);
    std::uniform_real_distribution<double> occ(0.0, 30.0);
    const Mat theta0 =
        random_states ? random_cm(rng) : thermal_cm(occ(rng));
    const Mat epsilon = random_states ? random_cm(rng) : vacuum_cm();
    return ModelSpec::beam_splitter(angle(rng), angle(rng), theta0, epsilon);
}

inline ModelSpec random_tms_spec(std::mt19937& rng, double nu_max = 0.85,
                                 bool random_states = false) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                 std::numbers::pi);
    std::uniform_real_distribution<double> nu(0.0, nu_max);
    std::uniform_real_distribution<double> occ(0.0, 30.0);
    const Mat theta0 =
        random_states ? random_cm(rng) : thermal_cm(occ(rng));
    const Mat epsilon = random_states ? random_cm(rng) : vacuum_cm();
    return ModelSpec::two_mode_squeezer(angle(rng), nu(rng), theta0, epsilon);
}

} // namespace gaucoll::testing
