#pragma once

#include "run_config.hpp"

#include <string>
#include <vector>

namespace gaucoll::cli {

/// One output value: a double, an integer, a boolean or an empty cell.
struct Cell {
    enum class Kind { Number, Integer, Boolean, Null };
    Kind kind = Kind::Null;
    double number = 0.0;
    long long integer = 0;
    bool boolean = false;

    static Cell num(double v) { return {Kind::Number, v, 0, false}; }
    static Cell idx(long long v) { return {Kind::Integer, 0.0, v, false}; }
    static Cell flag(bool v) { return {Kind::Boolean, 0.0, 0, v}; }
    static Cell null() { return {}; }
};

using Row = std::vector<Cell>;

struct OutputTable {
    std::vector<std::string> comments; // emitted as '# ...' lines in CSV
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

OutputTable run_command(const RunConfig& cfg);

std::string render_csv(const OutputTable& table);
std::string render_json(const OutputTable& table);

/// Renders in cfg's format and writes to cfg.out_path (or stdout when empty).
void emit(const RunConfig& cfg, const OutputTable& table);

} // namespace gaucoll::cli
