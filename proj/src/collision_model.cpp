#include "gaucoll/collision_model.hpp"

#include "gaucoll/symplectic.hpp"

#include <cmath>
#include <numbers>

namespace gaucoll {

namespace {

// sigma_z replicated over n modes: diag(1, -1, 1, -1, ...).
Mat mode_sigma_z(int n_modes) {
    Vec d(2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        d(2 * k) = 1.0;
        d(2 * k + 1) = -1.0;
    }
    return d.asDiagonal();
}

Mat assemble_pair(const Mat& tl, const Mat& tr, const Mat& bl, const Mat& br) {
    Mat out(tl.rows() + bl.rows(), tl.cols() + tr.cols());
    out << tl, tr, bl, br;
    return out;
}

void require_dims(const Mat& m, Eigen::Index rows, Eigen::Index cols,
                  const char* name) {
    if (m.rows() != rows || m.cols() != cols) {
        throw ShapeError(std::string(name) + " must be " + std::to_string(rows) +
                         "x" + std::to_string(cols) + ", got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

} // namespace

double wrap_angle(double angle) {
    const double pi = std::numbers::pi;
    double a = std::remainder(angle, 2.0 * pi); // (-pi, pi], with -pi possible
    if (a <= -pi) {
        a = pi;
    }
    return a;
}

ModelSpec ModelSpec::beam_splitter(double lambda_s, double lambda_e,
                                   const Mat& theta0, const Mat& epsilon) {
    ModelSpec spec;
    spec.system_modes = static_cast<int>(theta0.rows()) / 2;
    spec.ancilla_modes = static_cast<int>(epsilon.rows()) / 2;
    spec.se = BeamSplitterSE{wrap_angle(lambda_s)};
    spec.ee = BeamSplitterEE{wrap_angle(lambda_e)};
    spec.system_init = theta0;
    spec.ancilla_state = epsilon;
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::two_mode_squeezer(double lambda_s, double nu_e,
                                       const Mat& theta0, const Mat& epsilon) {
    ModelSpec spec;
    spec.system_modes = static_cast<int>(theta0.rows()) / 2;
    spec.ancilla_modes = static_cast<int>(epsilon.rows()) / 2;
    spec.se = BeamSplitterSE{wrap_angle(lambda_s)};
    spec.ee = TwoModeSqueezerEE{std::abs(nu_e)};
    spec.system_init = theta0;
    spec.ancilla_state = epsilon;
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::general(Mat a, Mat b, Mat c, Mat d, Mat e, Mat f, Mat g,
                             Mat j, const Mat& theta0, const Mat& epsilon) {
    ModelSpec spec;
    spec.system_modes = static_cast<int>(theta0.rows()) / 2;
    spec.ancilla_modes = static_cast<int>(epsilon.rows()) / 2;
    spec.se = GeneralSE{std::move(a), std::move(b), std::move(c), std::move(d)};
    spec.ee = GeneralEE{std::move(e), std::move(f), std::move(g), std::move(j)};
    spec.system_init = theta0;
    spec.ancilla_state = epsilon;
    spec.validate();
    return spec;
}

void ModelSpec::validate() const {
    if (system_modes < 1 || ancilla_modes < 1) {
        throw ShapeError("ModelSpec: mode counts must be >= 1");
    }
    const Eigen::Index ds = 2 * system_modes;
    const Eigen::Index de = 2 * ancilla_modes;
    require_dims(system_init, ds, ds, "theta0");
    require_dims(ancilla_state, de, de, "epsilon");
    require_valid_cm(system_init);
    require_valid_cm(ancilla_state);
    if (std::holds_alternative<BeamSplitterSE>(se) &&
        system_modes != ancilla_modes) {
        throw ShapeError("beam-splitter system-ancilla interaction requires "
                         "matching mode counts");
    }
    // Assembled collision matrices must be symplectic; this also covers the
    // block-dimension consistency of general interactions.
    const SEBlocks sb = build_se_blocks(*this);
    require_dims(sb.a, ds, ds, "block A");
    require_dims(sb.b, ds, de, "block B");
    require_dims(sb.c, de, ds, "block C");
    require_dims(sb.d, de, de, "block D");
    if (!is_symplectic(assemble_pair(sb.a, sb.b, sb.c, sb.d))) {
        throw ValidityError("system-ancilla blocks do not assemble into a "
                            "symplectic matrix");
    }
    const EEBlocks eb = build_ee_blocks(*this);
    require_dims(eb.e, de, de, "block E");
    require_dims(eb.f, de, de, "block F");
    require_dims(eb.g, de, de, "block G");
    require_dims(eb.j, de, de, "block J");
    if (!is_symplectic(assemble_pair(eb.e, eb.f, eb.g, eb.j))) {
        throw ValidityError("ancilla-ancilla blocks do not assemble into a "
                            "symplectic matrix");
    }
}

SEBlocks build_se_blocks(const ModelSpec& spec) {
    const Eigen::Index ds = 2 * spec.system_modes;
    if (const auto* bs = std::get_if<BeamSplitterSE>(&spec.se)) {
        const double x = std::cos(bs->lambda_s);
        const double y = std::sin(bs->lambda_s);
        const Mat id = Mat::Identity(ds, ds);
        return {x * id, y * id, -y * id, x * id};
    }
    const auto& g = std::get<GeneralSE>(spec.se);
    return {g.a, g.b, g.c, g.d};
}

EEBlocks build_ee_blocks(const ModelSpec& spec) {
    const Eigen::Index de = 2 * spec.ancilla_modes;
    if (const auto* bs = std::get_if<BeamSplitterEE>(&spec.ee)) {
        const double z = std::cos(bs->lambda_e);
        const double w = std::sin(bs->lambda_e);
        const Mat id = Mat::Identity(de, de);
        return {z * id, w * id, -w * id, z * id};
    }
    if (const auto* tms = std::get_if<TwoModeSqueezerEE>(&spec.ee)) {
        const double zt = std::cosh(tms->nu_e);
        const double wt = std::sinh(tms->nu_e);
        const Mat id = Mat::Identity(de, de);
        const Mat sz = mode_sigma_z(spec.ancilla_modes);
        return {zt * id, wt * sz, wt * sz, zt * id};
    }
    const auto& g = std::get<GeneralEE>(spec.ee);
    return {g.e, g.f, g.g, g.j};
}

EmbeddingChannel build_embedding(const ModelSpec& spec) {
    spec.validate();
    const SEBlocks sb = build_se_blocks(spec);
    const EEBlocks eb = build_ee_blocks(spec);
    EmbeddingChannel ch;
    ch.x = assemble_pair(sb.a, sb.b, eb.g * sb.c, eb.g * sb.d);
    const Eigen::Index ds = 2 * spec.system_modes;
    const Eigen::Index de = 2 * spec.ancilla_modes;
    ch.y = Mat::Zero(ds + de, ds + de);
    ch.y.bottomRightCorner(de, de) = eb.j * spec.ancilla_state * eb.j.transpose();
    return ch;
}

EmbeddedState initial_state(const ModelSpec& spec) {
    const Eigen::Index ds = 2 * spec.system_modes;
    const Eigen::Index de = 2 * spec.ancilla_modes;
    EmbeddedState state;
    state.gamma = Mat::Zero(ds + de, ds + de);
    state.gamma.topLeftCorner(ds, ds) = spec.system_init;
    state.gamma.bottomRightCorner(de, de) = spec.ancilla_state;
    state.step_index = 0;
    state.system_dim = static_cast<int>(ds);
    return state;
}

EmbeddedState embed_step(const EmbeddedState& state, const EmbeddingChannel& ch,
                         double tol) {
    if (ch.x.rows() != state.gamma.rows() || ch.y.rows() != state.gamma.rows()) {
        throw ShapeError("embed_step: channel and state dimensions differ");
    }
    if (!is_valid_cm(state.gamma, tol)) {
        throw ValidityError("embed_step: input is not a valid covariance "
                            "matrix at step " +
                            std::to_string(state.step_index));
    }
    EmbeddedState next;
    next.gamma = ch.x * state.gamma * ch.x.transpose() + ch.y;
    next.step_index = state.step_index + 1;
    next.system_dim = state.system_dim;
    if (!next.gamma.allFinite()) {
        throw NumericOverflowError("embed_step: state overflowed to non-finite "
                                   "values at step " +
                                   std::to_string(next.step_index));
    }
    if (!is_valid_cm(next.gamma, tol)) {
        throw ValidityError("embed_step: output is not a valid covariance "
                            "matrix at step " +
                            std::to_string(next.step_index));
    }
    return next;
}

std::vector<EmbeddedState> evolve(const ModelSpec& spec, int n_max, double tol) {
    if (n_max < 0) {
        throw DomainError("evolve: n_max must be non-negative");
    }
    const EmbeddingChannel ch = build_embedding(spec);
    std::vector<EmbeddedState> trajectory;
    trajectory.reserve(static_cast<std::size_t>(n_max) + 1);
    trajectory.push_back(initial_state(spec));
    for (int n = 0; n < n_max; ++n) {
        trajectory.push_back(embed_step(trajectory.back(), ch, tol));
    }
    return trajectory;
}

Mat closed_form_state(const EmbeddingChannel& ch, const Mat& gamma0, int n) {
    if (gamma0.rows() != ch.x.rows() || gamma0.cols() != ch.x.rows()) {
        throw ShapeError("closed_form_state: dimension mismatch");
    }
    if (n < 0) {
        throw DomainError("closed_form_state: n must be non-negative");
    }
    Mat power = Mat::Identity(ch.x.rows(), ch.x.cols());
    Mat noise = Mat::Zero(ch.x.rows(), ch.x.cols());
    for (int j = 0; j < n; ++j) {
        noise += power * ch.y * power.transpose();
        power = ch.x * power;
    }
    return power * gamma0 * power.transpose() + noise;
}

Mat brute_force_chain(const ModelSpec& spec, int n, int max_dim) {
    if (n < 0) {
        throw DomainError("brute_force_chain: n must be non-negative");
    }
    spec.validate();
    const int ds = 2 * spec.system_modes;
    const int de = 2 * spec.ancilla_modes;
    const int ancillas = n + 1;
    const int dim = ds + ancillas * de;
    if (dim > max_dim) {
        throw ResourceError("brute_force_chain: global dimension " +
                            std::to_string(dim) + " exceeds guard " +
                            std::to_string(max_dim));
    }

    Mat sigma = Mat::Zero(dim, dim);
    sigma.topLeftCorner(ds, ds) = spec.system_init;
    for (int k = 0; k < ancillas; ++k) {
        sigma.block(ds + k * de, ds + k * de, de, de) = spec.ancilla_state;
    }

    const SEBlocks sb = build_se_blocks(spec);
    const EEBlocks eb = build_ee_blocks(spec);
    for (int k = 1; k <= n; ++k) {
        const int rk = ds + (k - 1) * de; // rows of ancilla E_k
        const int rk1 = ds + k * de;      // rows of ancilla E_{k+1}
        Mat u = Mat::Identity(dim, dim);
        u.block(0, 0, ds, ds) = sb.a;
        u.block(0, rk, ds, de) = sb.b;
        u.block(rk, 0, de, ds) = sb.c;
        u.block(rk, rk, de, de) = sb.d;
        sigma = u * sigma * u.transpose();

        Mat v = Mat::Identity(dim, dim);
        v.block(rk, rk, de, de) = eb.e;
        v.block(rk, rk1, de, de) = eb.f;
        v.block(rk1, rk, de, de) = eb.g;
        v.block(rk1, rk1, de, de) = eb.j;
        sigma = v * sigma * v.transpose();
    }
    return sigma.topLeftCorner(ds, ds);
}

} // namespace gaucoll
