#include "commands.hpp"

#include "gaucoll/divisibility.hpp"
#include "gaucoll/memory_kernel.hpp"
#include "gaucoll/observables.hpp"
#include "gaucoll/stability.hpp"
#include "gaucoll/symplectic.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace gaucoll::cli {

namespace {

std::string column_name(std::string variable) {
    for (auto& c : variable) {
        if (c == '-') {
            c = '_';
        }
    }
    return variable;
}

void append_block_columns(std::vector<std::string>& columns,
                          const std::string& prefix, Eigen::Index rows,
                          Eigen::Index cols) {
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            columns.push_back(prefix + "_" + std::to_string(i) +
                              std::to_string(j));
        }
    }
}

void append_block_cells(Row& row, const Mat& block) {
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
        for (Eigen::Index j = 0; j < block.cols(); ++j) {
            row.push_back(Cell::num(block(i, j)));
        }
    }
}

// Basis-pair index list and column labels for the kernel command.
struct KernelLayout {
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::string> labels;
    bool with_qp = false;
};

KernelLayout kernel_layout(const RunConfig& cfg, int system_dim) {
    KernelLayout layout;
    std::vector<std::string> tags;
    if (system_dim == 2) {
        tags = pauli_basis_labels();
    } else {
        for (int k = 0; k < system_dim * system_dim; ++k) {
            tags.push_back(std::to_string(k));
        }
    }
    auto add = [&](int i, int j) {
        layout.pairs.emplace_back(i, j);
        const std::string sep = system_dim == 2 ? "" : "_";
        layout.labels.push_back("kappa_" + tags[static_cast<std::size_t>(i)] +
                                sep + tags[static_cast<std::size_t>(j)]);
    };
    if (cfg.model == "bs") {
        add(0, 0);
    } else if (cfg.model == "tms") {
        add(0, 0);
        add(0, 1);
        add(1, 0);
        add(1, 1);
        layout.with_qp = true;
    } else {
        const int k = static_cast<int>(tags.size());
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                add(i, j);
            }
        }
    }
    return layout;
}

std::vector<Row> evolve_rows(const RunConfig& cfg) {
    const ModelSpec spec = cfg.make_spec();
    const auto trajectory = evolve(spec, cfg.n_max, cfg.tol);
    std::vector<Row> rows;
    rows.reserve(trajectory.size());
    for (const auto& state : trajectory) {
        Row row;
        row.push_back(Cell::idx(state.step_index));
        row.push_back(Cell::num(occupation(state.theta(), 0, cfg.tol)));
        row.push_back(Cell::num(mutual_information(state, cfg.tol)));
        append_block_cells(row, state.theta());
        append_block_cells(row, state.ancilla());
        append_block_cells(row, state.correlations());
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Row> kernel_rows(const RunConfig& cfg, const KernelLayout& layout) {
    const ModelSpec spec = cfg.make_spec();
    const EmbeddingChannel ch = build_embedding(spec);
    const VectorizationContext ctx =
        build_context(spec.system_modes, spec.ancilla_modes);
    const KernelSeries series = compute_kernel_series(ch.x, ctx, cfg.n_max);
    std::vector<Row> rows;
    rows.reserve(series.coefficients.size());
    for (std::size_t n = 0; n < series.coefficients.size(); ++n) {
        const Mat& coeffs = series.coefficients[n];
        Row row;
        row.push_back(Cell::idx(static_cast<long long>(n)));
        for (const auto& [i, j] : layout.pairs) {
            row.push_back(Cell::num(coeffs(i, j)));
        }
        if (layout.with_qp) {
            const QpKernels qp = tms_qp_kernels(coeffs);
            row.push_back(Cell::num(qp.q));
            row.push_back(Cell::num(qp.p));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Row> divisibility_rows(const RunConfig& cfg, int grid_jobs) {
    const ModelSpec spec = cfg.make_spec();
    const DivisibilityGrid grid = divisibility_grid(spec, cfg.n_max, grid_jobs);
    std::vector<Row> rows;
    rows.reserve(grid.cells.size());
    for (const auto& cell : grid.cells) {
        Row row;
        row.push_back(Cell::idx(cell.from_step));
        row.push_back(Cell::idx(cell.to_step));
        row.push_back(cell.ill_conditioned ? Cell::null()
                                           : Cell::num(cell.value));
        row.push_back(Cell::flag(cell.ill_conditioned));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Row> stability_rows(const RunConfig& cfg) {
    const ModelSpec spec = cfg.make_spec();
    const EmbeddingChannel ch = build_embedding(spec);
    const StabilityReport report = analyze_stability(ch);
    Row row;
    row.push_back(Cell::num(report.spectral_radius));
    row.push_back(Cell::flag(report.gas));
    row.push_back(Cell::flag(report.marginal));
    row.push_back(Cell::num(report.unit_circle_distance));
    for (Eigen::Index k = 0; k < report.eigenvalues_x.size(); ++k) {
        row.push_back(Cell::num(report.eigenvalues_x(k).real()));
        row.push_back(Cell::num(report.eigenvalues_x(k).imag()));
    }
    const Eigen::Index d = ch.x.rows();
    if (report.fixed_point) {
        append_block_cells(row, *report.fixed_point);
    } else {
        for (Eigen::Index k = 0; k < d * d; ++k) {
            row.push_back(Cell::null());
        }
    }
    return {row};
}

template <typename F>
void parallel_cells(std::size_t count, int jobs, F&& work) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) {
            work(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (std::size_t k = next.fetch_add(1); k < count;
                 k = next.fetch_add(1)) {
                try {
                    work(k);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& worker : workers) {
        worker.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace

std::string format_double(double v) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, result.ptr);
}

OutputTable run_command(const RunConfig& cfg) {
    cfg.validate();
    std::size_t cell_count = 1;
    for (const auto& sweep : cfg.sweeps) {
        cell_count *= static_cast<std::size_t>(sweep.steps);
    }
    const std::size_t rows_per_cell =
        cfg.command == "divisibility"
            ? static_cast<std::size_t>(cfg.n_max) * (cfg.n_max + 1) / 2
            : static_cast<std::size_t>(cfg.n_max) + 1;
    if (cell_count * rows_per_cell > 20'000'000) {
        throw ResourceError("requested sweep would emit " +
                            std::to_string(cell_count * rows_per_cell) +
                            " rows; guard is 20000000");
    }
    const ModelSpec base_spec = cfg.make_spec();
    const Eigen::Index ds = 2 * base_spec.system_modes;
    const Eigen::Index de = 2 * base_spec.ancilla_modes;

    OutputTable table;
    table.comments.push_back(std::string("gaucoll ") + kVersion + " " +
                             cfg.command);
    table.comments.push_back("config: " + cfg.canonical());

    for (const auto& sweep : cfg.sweeps) {
        table.columns.push_back(column_name(sweep.variable));
    }
    KernelLayout layout;
    if (cfg.command == "evolve") {
        table.columns.push_back("n");
        table.columns.push_back("occupation");
        table.columns.push_back("mutual_information");
        append_block_columns(table.columns, "theta", ds, ds);
        append_block_columns(table.columns, "eps", de, de);
        append_block_columns(table.columns, "xi", ds, de);
    } else if (cfg.command == "kernel") {
        layout = kernel_layout(cfg, static_cast<int>(ds));
        table.columns.push_back("n");
        table.columns.insert(table.columns.end(), layout.labels.begin(),
                             layout.labels.end());
        if (layout.with_qp) {
            table.columns.push_back("kappa_q");
            table.columns.push_back("kappa_p");
        }
    } else if (cfg.command == "divisibility") {
        table.columns.push_back("n");
        table.columns.push_back("m");
        table.columns.push_back("N");
        table.columns.push_back("condition_flag");
    } else {
        table.columns.push_back("spectral_radius");
        table.columns.push_back("gas");
        table.columns.push_back("marginal");
        table.columns.push_back("unit_circle_distance");
        for (Eigen::Index k = 0; k < ds + de; ++k) {
            table.columns.push_back("eig_" + std::to_string(k) + "_re");
            table.columns.push_back("eig_" + std::to_string(k) + "_im");
        }
        append_block_columns(table.columns, "fp", ds + de, ds + de);
    }

    // Sweep cells in (primary, secondary) order; each cell is one resolved
    // configuration evaluated independently.
    struct SweepCell {
        std::vector<double> values;
        RunConfig cfg;
    };
    std::vector<SweepCell> cells;
    if (cfg.sweeps.empty()) {
        cells.push_back({{}, cfg});
    } else if (cfg.sweeps.size() == 1) {
        for (int i = 0; i < cfg.sweeps[0].steps; ++i) {
            SweepCell cell{{cfg.sweeps[0].value_at(i)}, cfg};
            apply_variable(cell.cfg, cfg.sweeps[0].variable, cell.values[0]);
            cells.push_back(std::move(cell));
        }
    } else {
        for (int i = 0; i < cfg.sweeps[0].steps; ++i) {
            for (int j = 0; j < cfg.sweeps[1].steps; ++j) {
                SweepCell cell{{cfg.sweeps[0].value_at(i),
                                cfg.sweeps[1].value_at(j)},
                               cfg};
                apply_variable(cell.cfg, cfg.sweeps[0].variable, cell.values[0]);
                apply_variable(cell.cfg, cfg.sweeps[1].variable, cell.values[1]);
                cells.push_back(std::move(cell));
            }
        }
    }

    std::vector<std::vector<Row>> results(cells.size());
    const bool parallel_outer = cells.size() > 1;
    parallel_cells(cells.size(), parallel_outer ? cfg.jobs : 1, [&](std::size_t k) {
        const RunConfig& cell_cfg = cells[k].cfg;
        std::vector<Row> rows;
        if (cfg.command == "evolve") {
            rows = evolve_rows(cell_cfg);
        } else if (cfg.command == "kernel") {
            rows = kernel_rows(cell_cfg, layout);
        } else if (cfg.command == "divisibility") {
            rows = divisibility_rows(cell_cfg, parallel_outer ? 1 : cfg.jobs);
        } else {
            rows = stability_rows(cell_cfg);
        }
        if (!cells[k].values.empty()) {
            for (auto& row : rows) {
                Row prefixed;
                prefixed.reserve(cells[k].values.size() + row.size());
                for (double v : cells[k].values) {
                    prefixed.push_back(Cell::num(v));
                }
                prefixed.insert(prefixed.end(), row.begin(), row.end());
                row = std::move(prefixed);
            }
        }
        results[k] = std::move(rows);
    });

    for (auto& rows : results) {
        table.rows.insert(table.rows.end(),
                          std::make_move_iterator(rows.begin()),
                          std::make_move_iterator(rows.end()));
    }
    return table;
}

std::string render_csv(const OutputTable& table) {
    std::string out;
    for (const auto& comment : table.comments) {
        out += "# " + comment + "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) {
            out += ",";
        }
        out += table.columns[c];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out += ",";
            }
            const Cell& cell = row[c];
            switch (cell.kind) {
            case Cell::Kind::Number:
                out += format_double(cell.number);
                break;
            case Cell::Kind::Integer:
                out += std::to_string(cell.integer);
                break;
            case Cell::Kind::Boolean:
                out += cell.boolean ? "1" : "0";
                break;
            case Cell::Kind::Null:
                break;
            }
        }
        out += "\n";
    }
    return out;
}

std::string render_json(const OutputTable& table) {
    nlohmann::json doc;
    doc["artifact"] = "gaucoll";
    doc["version"] = kVersion;
    for (const auto& comment : table.comments) {
        const std::string prefix = "config: ";
        if (comment.rfind(prefix, 0) == 0) {
            doc["config"] = nlohmann::json::parse(comment.substr(prefix.size()));
        }
    }
    doc["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj;
        for (std::size_t c = 0; c < row.size() && c < table.columns.size();
             ++c) {
            const Cell& cell = row[c];
            switch (cell.kind) {
            case Cell::Kind::Number:
                obj[table.columns[c]] = cell.number;
                break;
            case Cell::Kind::Integer:
                obj[table.columns[c]] = cell.integer;
                break;
            case Cell::Kind::Boolean:
                obj[table.columns[c]] = cell.boolean;
                break;
            case Cell::Kind::Null:
                obj[table.columns[c]] = nullptr;
                break;
            }
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump() + "\n";
}

void emit(const RunConfig& cfg, const OutputTable& table) {
    const std::string rendered = cfg.resolved_format() == "json"
                                     ? render_json(table)
                                     : render_csv(table);
    if (cfg.out_path.empty()) {
        std::cout << rendered;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file '" + cfg.out_path + "'");
    }
    out << rendered;
}

} // namespace gaucoll::cli
