#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace kslab {

/// Deterministic text form of a double: shortest representation that
/// round-trips, so identical runs yield identical bytes.
std::string format_double(double x);

/// Delimiter-separated table with a header row; persisted as CSV plus a
/// structured .meta.json sidecar describing the columns.
class Table {
public:
    using Cell = std::variant<double, long, std::string>;

    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> row);
    std::size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& data() const { return rows_; }

    std::string to_csv() const;
    /// Writes <path> and <path minus extension>.meta.json.
    void write(const std::filesystem::path& path, const std::string& description) const;

    static Table read_csv(const std::filesystem::path& path);
    double number(std::size_t row, const std::string& column) const;
    std::string text(std::size_t row, const std::string& column) const;

private:
    std::size_t column_index(const std::string& name) const;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

} // namespace kslab
