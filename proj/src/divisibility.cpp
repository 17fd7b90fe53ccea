#include "gaucoll/divisibility.hpp"

#include "gaucoll/symplectic.hpp"

#include <algorithm>
#include <atomic>
#include <complex>
#include <limits>
#include <thread>

namespace gaucoll {

std::vector<GaussianMap> cumulative_maps(const EmbeddingChannel& ch,
                                         const Mat& epsilon, int n_max) {
    if (n_max < 0) {
        throw DomainError("cumulative_maps: n_max must be non-negative");
    }
    const Eigen::Index d = ch.x.rows();
    const Eigen::Index de = epsilon.rows();
    const Eigen::Index ds = d - de;
    if (ds <= 0) {
        throw ShapeError("cumulative_maps: epsilon does not fit the channel");
    }
    std::vector<GaussianMap> maps;
    maps.reserve(static_cast<std::size_t>(n_max) + 1);
    Mat power = Mat::Identity(d, d);     // X^n
    Mat noise = Mat::Zero(d, d);         // sum_{j<n} X^j Y (X^T)^j
    for (int n = 0; n <= n_max; ++n) {
        GaussianMap map;
        map.from_step = 0;
        map.to_step = n;
        map.x_map = power.topLeftCorner(ds, ds);
        const Mat top_right = power.topRightCorner(ds, de);
        map.y_map = top_right * epsilon * top_right.transpose() +
                    noise.topLeftCorner(ds, ds);
        maps.push_back(std::move(map));
        noise = ch.x * noise * ch.x.transpose() + ch.y;
        power = ch.x * power;
    }
    return maps;
}

GaussianMap cumulative_map(const EmbeddingChannel& ch, const Mat& epsilon,
                           int n) {
    return cumulative_maps(ch, epsilon, n).back();
}

double map_condition_number(const Mat& x_map) {
    Eigen::JacobiSVD<Mat> svd(x_map);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(1.0, smax) / smin;
}

GaussianMap intermediate_map(const GaussianMap& map_n, const GaussianMap& map_m,
                             double cond_max) {
    if (map_m.to_step < map_n.to_step || map_n.from_step != map_m.from_step) {
        throw DomainError("intermediate_map: need cumulative maps with "
                          "from_step equal and m >= n");
    }
    const double cond = map_condition_number(map_n.x_map);
    if (!(cond <= cond_max)) {
        throw IllConditionedError(
            "intermediate_map: X_n inversion is ill-conditioned (cond = " +
                std::to_string(cond) + ")",
            cond);
    }
    GaussianMap out;
    out.from_step = map_n.to_step;
    out.to_step = map_m.to_step;
    // X_mn = X_m X_n^{-1}, via the solve X_n^T Z = X_m^T.
    out.x_map = map_n.x_map.transpose()
                    .colPivHouseholderQr()
                    .solve(map_m.x_map.transpose())
                    .transpose();
    out.y_map = map_m.y_map - out.x_map * map_n.y_map * out.x_map.transpose();
    out.y_map = 0.5 * (out.y_map + out.y_map.transpose());
    return out;
}

CMat cptp_test_matrix(const GaussianMap& map) {
    if (map.x_map.rows() != map.x_map.cols() ||
        map.y_map.rows() != map.y_map.cols() ||
        map.x_map.rows() != map.y_map.rows()) {
        throw ShapeError("cptp_test_matrix: malformed map");
    }
    const int n_modes = static_cast<int>(map.x_map.rows()) / 2;
    const Mat omega = symplectic_form(n_modes);
    const std::complex<double> i_unit(0.0, 1.0);
    CMat m = (2.0 * map.y_map).cast<std::complex<double>>() +
             i_unit * omega.cast<std::complex<double>>() -
             i_unit * (map.x_map * omega * map.x_map.transpose())
                          .cast<std::complex<double>>();
    return 0.5 * (m + CMat(m.adjoint()));
}

double non_divisibility(const GaussianMap& map) {
    return hermitian_negativity(cptp_test_matrix(map));
}

DivisibilityGrid divisibility_grid(const ModelSpec& spec, int n_max, int jobs,
                                   double cond_max) {
    if (n_max < 2) {
        throw DomainError("divisibility_grid: n_max must be >= 2");
    }
    const EmbeddingChannel ch = build_embedding(spec);
    const std::vector<GaussianMap> cumulative =
        cumulative_maps(ch, spec.ancilla_state, n_max);

    DivisibilityGrid grid;
    for (int n = 0; n < n_max; ++n) {
        for (int m = n + 1; m <= n_max; ++m) {
            DivisibilityGrid::Cell cell;
            cell.from_step = n;
            cell.to_step = m;
            grid.cells.push_back(cell);
        }
    }

    auto evaluate = [&](DivisibilityGrid::Cell& cell) {
        const auto& map_n = cumulative[static_cast<std::size_t>(cell.from_step)];
        const auto& map_m = cumulative[static_cast<std::size_t>(cell.to_step)];
        cell.condition_number = map_condition_number(map_n.x_map);
        try {
            const GaussianMap between = intermediate_map(map_n, map_m, cond_max);
            cell.value = non_divisibility(between);
            cell.x_map = between.x_map;
            cell.y_map = between.y_map;
        } catch (const IllConditionedError&) {
            cell.ill_conditioned = true;
            cell.value = 0.0;
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (auto& cell : grid.cells) {
            evaluate(cell);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) {
            workers.emplace_back([&] {
                for (std::size_t k = next.fetch_add(1); k < grid.cells.size();
                     k = next.fetch_add(1)) {
                    evaluate(grid.cells[k]);
                }
            });
        }
        for (auto& worker : workers) {
            worker.join();
        }
    }
    return grid;
}

} // namespace gaucoll
