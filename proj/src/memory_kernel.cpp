#include "gaucoll/memory_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace gaucoll {

namespace {

std::vector<Mat> default_basis(int dim) {
    return dim == 2 ? pauli_basis() : matrix_unit_basis(dim);
}

void check_basis(const std::vector<Mat>& basis, int dim) {
    if (static_cast<int>(basis.size()) != dim * dim) {
        throw BasisError("basis must contain dim^2 matrices to span");
    }
    for (const Mat& m : basis) {
        if (m.rows() != dim || m.cols() != dim) {
            throw BasisError("basis matrices must all be dim x dim");
        }
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if ((basis[i].transpose() * basis[i]).trace() <= 0.0) {
            throw BasisError("basis contains a zero matrix");
        }
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (std::abs((basis[i].transpose() * basis[j]).trace()) > 1e-12) {
                throw BasisError("basis is not orthogonal under the trace "
                                 "inner product");
            }
        }
    }
}

} // namespace

Vec vec(const Mat& m) {
    return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unvec(const Vec& v, int rows, int cols) {
    if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
        throw ShapeError("unvec: vector length does not match rows*cols");
    }
    return Eigen::Map<const Mat>(v.data(), rows, cols);
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

VectorizationContext build_context(int system_modes, int ancilla_modes) {
    if (system_modes < 1 || ancilla_modes < 1) {
        throw ShapeError("build_context: mode counts must be >= 1");
    }
    const int ds = 2 * system_modes;
    const int de = 2 * ancilla_modes;
    const int d = ds + de;

    VectorizationContext ctx;
    ctx.system_modes = system_modes;
    ctx.ancilla_modes = ancilla_modes;
    ctx.p_system = Mat::Zero(d, d);
    ctx.p_system.topLeftCorner(ds, ds) = Mat::Identity(ds, ds);
    ctx.p_ancilla = Mat::Zero(d, d);
    ctx.p_ancilla.bottomRightCorner(de, de) = Mat::Identity(de, de);
    ctx.projector = kron(ctx.p_system, ctx.p_system);
    ctx.complement = Mat::Identity(d * d, d * d) - ctx.projector;
    // Row k of the selector picks the vectorized entry (i, j) of the system
    // block, in column-major order: selector * vec(gamma) = vec(theta).
    ctx.selector = Mat::Zero(ds * ds, d * d);
    int row = 0;
    for (int j = 0; j < ds; ++j) {
        for (int i = 0; i < ds; ++i) {
            ctx.selector(row++, j * d + i) = 1.0;
        }
    }
    return ctx;
}

Mat mk_matrix(const Mat& x, const VectorizationContext& ctx, int n) {
    const Eigen::Index d = ctx.p_system.rows();
    if (x.rows() != d || x.cols() != d) {
        throw ShapeError("mk_matrix: X dimension does not match context");
    }
    if (n < 0) {
        throw DomainError("mk_matrix: n must be non-negative");
    }
    const Mat xx = kron(x, x);
    const Mat mid = ctx.complement * xx * ctx.complement;
    Mat cur = ctx.complement * xx * ctx.selector.transpose();
    for (int k = 0; k < n; ++k) {
        cur = mid * cur;
    }
    return ctx.selector * xx * ctx.complement * cur;
}

std::vector<Mat> pauli_basis() {
    Mat id = Mat::Identity(2, 2);
    Mat sz = (Mat(2, 2) << 1, 0, 0, -1).finished();
    Mat sp = (Mat(2, 2) << 0, 1, 0, 0).finished();
    Mat sm = (Mat(2, 2) << 0, 0, 1, 0).finished();
    return {id, sz, sp, sm};
}

std::vector<std::string> pauli_basis_labels() {
    return {"1", "z", "p", "m"};
}

std::vector<Mat> matrix_unit_basis(int dim) {
    std::vector<Mat> basis;
    basis.reserve(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            Mat unit = Mat::Zero(dim, dim);
            unit(i, j) = 1.0;
            basis.push_back(std::move(unit));
        }
    }
    return basis;
}

Mat kraus_coefficients(const Mat& kernel_matrix, const std::vector<Mat>& basis) {
    if (kernel_matrix.rows() != kernel_matrix.cols()) {
        throw ShapeError("kraus_coefficients: kernel matrix must be square");
    }
    const int dim = static_cast<int>(
        std::lround(std::sqrt(static_cast<double>(kernel_matrix.rows()))));
    if (static_cast<Eigen::Index>(dim) * dim != kernel_matrix.rows()) {
        throw ShapeError("kraus_coefficients: kernel dimension is not a "
                         "perfect square");
    }
    check_basis(basis, dim);
    const int k = static_cast<int>(basis.size());
    Mat coeffs(k, k);
    for (int i = 0; i < k; ++i) {
        const double ni = (basis[i].transpose() * basis[i]).trace();
        for (int j = 0; j < k; ++j) {
            const double nj = (basis[j].transpose() * basis[j]).trace();
            coeffs(i, j) = (kron(basis[j].transpose(), basis[i].transpose()) *
                            kernel_matrix)
                               .trace() /
                           (ni * nj);
        }
    }
    return coeffs;
}

Mat apply_kernel(const Mat& coefficients, const std::vector<Mat>& basis,
                 const Mat& theta) {
    const int k = static_cast<int>(basis.size());
    if (coefficients.rows() != k || coefficients.cols() != k) {
        throw ShapeError("apply_kernel: coefficient matrix does not match "
                         "basis size");
    }
    Mat out = Mat::Zero(theta.rows(), theta.cols());
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (coefficients(i, j) != 0.0) {
                out += coefficients(i, j) * basis[i] * theta *
                       basis[j].transpose();
            }
        }
    }
    return out;
}

Mat inhomogeneous_term(const Mat& x, const Mat& y,
                       const VectorizationContext& ctx, const Mat& gamma0,
                       int n) {
    const Eigen::Index d = ctx.p_system.rows();
    if (x.rows() != d || y.rows() != d || gamma0.rows() != d) {
        throw ShapeError("inhomogeneous_term: dimension mismatch");
    }
    if (n < 0) {
        throw DomainError("inhomogeneous_term: n must be non-negative");
    }
    const Mat xx = kron(x, x);
    const Mat qxx = ctx.complement * xx;
    Vec from_gamma0 = ctx.complement * vec(gamma0);
    for (int k = 0; k < n; ++k) {
        from_gamma0 = qxx * from_gamma0;
    }
    Vec from_noise = Vec::Zero(d * d);
    Vec ypow = vec(y);
    for (int j = 0; j < n; ++j) {
        from_noise += ypow;
        ypow = qxx * ypow;
    }
    const int ds = 2 * ctx.system_modes;
    // selector * P = selector, so the leading P projector is absorbed.
    return unvec(ctx.selector * (xx * (from_gamma0 + from_noise)), ds, ds);
}

KernelSeries compute_kernel_series(const Mat& x, const VectorizationContext& ctx,
                                   int n_max, std::vector<Mat> basis) {
    if (n_max < 0) {
        throw DomainError("compute_kernel_series: n_max must be non-negative");
    }
    const int ds = 2 * ctx.system_modes;
    if (basis.empty()) {
        basis = default_basis(ds);
    }
    check_basis(basis, ds);

    const Mat xx = kron(x, x);
    const Mat mid = ctx.complement * xx * ctx.complement;
    const Mat left = ctx.selector * xx * ctx.complement;
    Mat cur = ctx.complement * xx * ctx.selector.transpose();

    KernelSeries series;
    series.basis = std::move(basis);
    series.kernel_matrices.reserve(static_cast<std::size_t>(n_max) + 1);
    series.coefficients.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        series.kernel_matrices.push_back(left * cur);
        series.coefficients.push_back(
            kraus_coefficients(series.kernel_matrices.back(), series.basis));
        cur = mid * cur;
    }
    return series;
}

std::vector<Mat> reconstruct_trajectory(const ModelSpec& spec, int n_max) {
    if (n_max < 0) {
        throw DomainError("reconstruct_trajectory: n_max must be non-negative");
    }
    const EmbeddingChannel ch = build_embedding(spec);
    const VectorizationContext ctx =
        build_context(spec.system_modes, spec.ancilla_modes);
    const int ds = 2 * spec.system_modes;
    const Mat x11 = ch.x.topLeftCorner(ds, ds);
    const KernelSeries series =
        compute_kernel_series(ch.x, ctx, std::max(0, n_max - 1));

    const Mat xx = kron(ch.x, ch.x);
    const Mat qxx = ctx.complement * xx;
    Vec from_gamma0 = ctx.complement * vec(initial_state(spec).gamma);
    Vec from_noise = Vec::Zero(xx.rows());
    Vec ypow = vec(ch.y);

    std::vector<Mat> thetas;
    thetas.reserve(static_cast<std::size_t>(n_max) + 1);
    thetas.push_back(spec.system_init);
    for (int n = 0; n < n_max; ++n) {
        const Mat g_n =
            unvec(ctx.selector * (xx * (from_gamma0 + from_noise)), ds, ds);
        Mat next = x11 * thetas[static_cast<std::size_t>(n)] * x11.transpose() +
                   g_n;
        for (int r = 0; r < n; ++r) {
            next += apply_kernel(
                series.coefficients[static_cast<std::size_t>(n - r - 1)],
                series.basis, thetas[static_cast<std::size_t>(r)]);
        }
        thetas.push_back(std::move(next));
        from_gamma0 = qxx * from_gamma0;
        from_noise += ypow;
        ypow = qxx * ypow;
    }
    return thetas;
}

std::vector<double> bs_compact_kernel_series(double lambda_s, double lambda_e,
                                             int n_max) {
    if (n_max < 0) {
        throw DomainError("bs_compact_kernel_series: n_max must be "
                          "non-negative");
    }
    const double x = std::cos(lambda_s);
    const double y = std::sin(lambda_s);
    const double w = std::sin(lambda_e);
    Mat chi(2, 2);
    chi << x, y, y * w, -x * w;
    const Mat chib = kron(chi, chi);
    Mat qb = Mat::Identity(4, 4);
    qb(0, 0) = 0.0; // I4 - ps kron ps
    const Mat mid = qb * chib * qb;

    Vec right = qb * chib.col(0);            // Qb chib |00>
    const Vec left = qb * chib.row(0).transpose(); // <00| chib Qb
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        out.push_back(left.dot(right));
        right = mid * right;
    }
    return out;
}

double bs_compact_kernel(double lambda_s, double lambda_e, int n) {
    return bs_compact_kernel_series(lambda_s, lambda_e, n).back();
}

QpKernels tms_qp_kernels(const Mat& coefficients) {
    if (coefficients.rows() < 2 || coefficients.cols() < 2) {
        throw ShapeError("tms_qp_kernels: need coefficients over a basis "
                         "starting with {I, sigma_z}");
    }
    QpKernels qp;
    qp.q = coefficients(0, 0) + coefficients(0, 1) + coefficients(1, 0) +
           coefficients(1, 1);
    qp.p = coefficients(0, 0) - coefficients(0, 1) - coefficients(1, 0) +
           coefficients(1, 1);
    return qp;
}

} // namespace gaucoll
