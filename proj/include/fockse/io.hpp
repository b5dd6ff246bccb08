#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fockse {

// Plot-ready tabular output shared by all CLI commands: CSV with '#'-prefixed
// metadata lines (full config echo) followed by a header row, or the same
// fields as JSON. Values are preformatted strings so exact rationals pass
// through losslessly.
class DataTable {
public:
    void set_columns(std::vector<std::string> names) { columns_ = std::move(names); }
    void add_meta(std::string key, std::string value);
    void add_row(std::vector<std::string> cells);

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;

    std::size_t row_count() const { return rows_.size(); }

private:
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

// Shortest representation that round-trips a double.
std::string format_double(double x);

}  // namespace fockse
