#include "fockse/io.hpp"

#include <charconv>
#include <stdexcept>

#include <json.hpp>

namespace fockse {

void DataTable::add_meta(std::string key, std::string value) {
    meta_.emplace_back(std::move(key), std::move(value));
}

void DataTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size())
        throw std::invalid_argument("DataTable: row width does not match header");
    rows_.push_back(std::move(cells));
}

void DataTable::write_csv(std::ostream& os) const {
    for (const auto& [key, value] : meta_) os << "# " << key << " = " << value << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i)
        os << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
}

void DataTable::write_json(std::ostream& os) const {
    nlohmann::json j;
    for (const auto& [key, value] : meta_) j["config"][key] = value;
    j["columns"] = columns_;
    j["rows"] = rows_;
    os << j.dump(2) << "\n";
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

}  // namespace fockse
