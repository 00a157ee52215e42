#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace csmm {

// One output cell; Empty renders as a blank CSV field / JSON null.
struct Cell {
    enum class Kind { Empty, Real, Integer, Boolean, Text };

    Kind kind = Kind::Empty;
    double real = 0.0;
    long long integer = 0;
    bool boolean = false;
    std::string text;

    Cell() = default;
    static Cell of(double v);
    static Cell of(long long v);
    static Cell of(int v) { return of(static_cast<long long>(v)); }
    static Cell of(bool v);
    static Cell of(std::string v);
};

// Column-ordered result set with the resolved parameters that produced it.
struct Table {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells);
};

// 17 significant digits, '.' decimal separator, locale independent.
std::string format_real(double v);

// '#'-prefixed key=value header lines (version and resolved parameters),
// then an RFC-4180 style header row and data rows.
void write_csv(const Table& t, std::ostream& os);

// Versioned envelope: schema_version, version, command, params, columns, rows.
// Non-finite reals are emitted as the strings "inf", "-inf", "nan".
void write_json(const Table& t, std::ostream& os);

}  // namespace csmm
