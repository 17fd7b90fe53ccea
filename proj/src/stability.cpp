#include "gaucoll/stability.hpp"

#include "gaucoll/memory_kernel.hpp"

#include <cmath>

namespace gaucoll {

Mat fixed_point(const EmbeddingChannel& ch, double cond_max) {
    const Eigen::Index d = ch.x.rows();
    const Mat system = Mat::Identity(d * d, d * d) - kron(ch.x, ch.x);
    Eigen::JacobiSVD<Mat> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin == 0.0 || smax / smin > cond_max) {
        throw NoFixedPointError("fixed_point: I - X kron X is singular or "
                                "ill-conditioned");
    }
    const Vec solution = svd.solve(vec(ch.y));
    Mat gamma_star = unvec(solution, static_cast<int>(d), static_cast<int>(d));
    gamma_star = 0.5 * (gamma_star + Mat(gamma_star.transpose()));
    const double residual =
        (gamma_star - ch.x * gamma_star * ch.x.transpose() - ch.y)
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-9) {
        throw NoFixedPointError("fixed_point: residual " +
                                std::to_string(residual) + " exceeds 1e-9");
    }
    return gamma_star;
}

GasResult is_gas(const Mat& x, double tol) {
    if (x.rows() != x.cols()) {
        throw ShapeError("is_gas: matrix must be square");
    }
    Eigen::EigenSolver<Mat> solver(x, false);
    GasResult result;
    result.spectral_radius = solver.eigenvalues().cwiseAbs().maxCoeff();
    result.gas = result.spectral_radius < 1.0 - tol;
    return result;
}

std::array<std::complex<double>, 2> bs_eigenvalues(double lambda_s,
                                                   double lambda_e) {
    const double x = std::cos(lambda_s);
    const double y = std::sin(lambda_s);
    const double w = std::sin(lambda_e);
    const std::complex<double> root =
        std::sqrt(std::complex<double>((w + 1.0) * (w + 1.0) * x * x +
                                       4.0 * w * y * y));
    return {0.5 * (-w * x + x + root), 0.5 * (-w * x + x - root)};
}

std::array<std::complex<double>, 4> tms_eigenvalues(double lambda_s,
                                                    double nu_e) {
    const double x = std::cos(lambda_s);
    const double y = std::sin(lambda_s);
    const double wt = std::sinh(nu_e);
    const std::complex<double> root_q =
        std::sqrt(std::complex<double>((wt - 1.0) * (wt - 1.0) * x * x -
                                       4.0 * wt * y * y));
    const std::complex<double> root_p =
        std::sqrt(std::complex<double>((wt + 1.0) * (wt + 1.0) * x * x +
                                       4.0 * wt * y * y));
    return {0.5 * ((1.0 + wt) * x + root_q), 0.5 * ((1.0 + wt) * x - root_q),
            0.5 * ((1.0 - wt) * x + root_p), 0.5 * ((1.0 - wt) * x - root_p)};
}

double tms_critical() {
    return std::asinh(1.0);
}

StabilityReport analyze_stability(const EmbeddingChannel& ch, double cond_max) {
    StabilityReport report;
    Eigen::EigenSolver<Mat> solver(ch.x, false);
    report.eigenvalues_x = solver.eigenvalues();
    report.spectral_radius = report.eigenvalues_x.cwiseAbs().maxCoeff();
    report.unit_circle_distance = std::abs(report.spectral_radius - 1.0);
    report.marginal = report.unit_circle_distance <= kGasTol;
    report.gas = report.spectral_radius < 1.0 - kGasTol;
    try {
        report.fixed_point = fixed_point(ch, cond_max);
    } catch (const NoFixedPointError&) {
        report.fixed_point.reset();
    }
    return report;
}

} // namespace gaucoll
