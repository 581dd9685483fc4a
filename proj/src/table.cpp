#include "kslab/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kslab/errors.hpp"

namespace kslab {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    // Shortest digit count that round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw invalid_field_error("table: row width does not match the header");
    rows_.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns_.size(); ++c)
        out << (c ? "," : "") << columns_[c];
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            if (std::holds_alternative<double>(row[c])) out << format_double(std::get<double>(row[c]));
            else if (std::holds_alternative<long>(row[c])) out << std::get<long>(row[c]);
            else out << std::get<std::string>(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

void Table::write(const std::filesystem::path& path, const std::string& description) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("table: cannot open " + path.string());
    f << to_csv();
    f.close();

    nlohmann::ordered_json meta;
    meta["file"] = path.filename().string();
    meta["description"] = description;
    meta["delimiter"] = ",";
    meta["columns"] = columns_;
    meta["rows"] = rows_.size();
    std::filesystem::path side = path;
    side.replace_extension();
    side += ".meta.json";
    std::ofstream m(side, std::ios::binary);
    m << meta.dump(2) << "\n";
}

Table Table::read_csv(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("table: cannot open " + path.string());
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("table: empty file " + path.string());
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                out.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur += ch;
            }
        }
        out.push_back(cur);
        return out;
    };
    Table t(split(line));
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<Cell> row;
        for (auto& tok : split(line)) row.emplace_back(std::move(tok));
        t.rows_.push_back(std::move(row));
    }
    return t;
}

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t c = 0; c < columns_.size(); ++c)
        if (columns_[c] == name) return c;
    throw std::runtime_error("table: no column named " + name);
}

double Table::number(std::size_t row, const std::string& column) const {
    const Cell& cell = rows_.at(row)[column_index(column)];
    if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
    if (std::holds_alternative<long>(cell)) return static_cast<double>(std::get<long>(cell));
    return std::strtod(std::get<std::string>(cell).c_str(), nullptr);
}

std::string Table::text(std::size_t row, const std::string& column) const {
    const Cell& cell = rows_.at(row)[column_index(column)];
    if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
    if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
    return std::to_string(std::get<long>(cell));
}

} // namespace kslab
