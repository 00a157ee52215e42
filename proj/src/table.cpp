#include "csmm/table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "csmm/version.hpp"

namespace csmm {

Cell Cell::of(double v) {
    Cell c;
    c.kind = Kind::Real;
    c.real = v;
    return c;
}

Cell Cell::of(long long v) {
    Cell c;
    c.kind = Kind::Integer;
    c.integer = v;
    return c;
}

Cell Cell::of(bool v) {
    Cell c;
    c.kind = Kind::Boolean;
    c.boolean = v;
    return c;
}

Cell Cell::of(std::string v) {
    Cell c;
    c.kind = Kind::Text;
    c.text = std::move(v);
    return c;
}

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size()) {
        throw std::invalid_argument("Table::add_row: cell count != column count");
    }
    rows.push_back(std::move(cells));
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string csv_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::Empty: return "";
        case Cell::Kind::Real: return format_real(c.real);
        case Cell::Kind::Integer: return std::to_string(c.integer);
        case Cell::Kind::Boolean: return c.boolean ? "true" : "false";
        case Cell::Kind::Text: return csv_escape(c.text);
    }
    return "";
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
    os << "# version=" << version << "\n";
    os << "# command=" << t.command << "\n";
    for (const auto& [k, v] : t.params) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(t.columns[i]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << csv_cell(row[i]);
        }
        os << '\n';
    }
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = schema_version;
    doc["version"] = version;
    doc["command"] = t.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.params) params[k] = v;
    doc["params"] = std::move(params);
    doc["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const Cell& c : row) {
            switch (c.kind) {
                case Cell::Kind::Empty: r.push_back(nullptr); break;
                case Cell::Kind::Real:
                    if (std::isfinite(c.real)) {
                        r.push_back(c.real);
                    } else {
                        r.push_back(format_real(c.real));
                    }
                    break;
                case Cell::Kind::Integer: r.push_back(c.integer); break;
                case Cell::Kind::Boolean: r.push_back(c.boolean); break;
                case Cell::Kind::Text: r.push_back(c.text); break;
            }
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

}  // namespace csmm
