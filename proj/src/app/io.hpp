#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heatcert/extended_real.hpp"

namespace heatcert::app {

using nlohmann::json;

inline constexpr const char* kSpecVersion = "1.0";

/// Writes obj[key] (null when infinite) and obj[key + "_infinite"].
void put_extended(json& obj, const std::string& key, const ExtendedReal& v);
ExtendedReal get_extended(const json& obj, const std::string& key);

/// Optional double: null when absent.
void put_optional(json& obj, const std::string& key, const std::optional<double>& v);

/// One table cell. Finite numbers print with 17 significant digits, +inf as
/// "inf", NaN as "nan", missing values as an empty field.
struct Cell {
    enum class Kind { Number, Missing };
    Kind kind = Kind::Missing;
    double value = 0.0;

    Cell() = default;
    Cell(double v) : kind(Kind::Number), value(v) {}  // NOLINT(google-explicit-constructor)
    Cell(int v) : Cell(static_cast<double>(v)) {}     // NOLINT(google-explicit-constructor)
    Cell(const ExtendedReal& v) : Cell(v.to_double()) {}  // NOLINT(google-explicit-constructor)
    Cell(const std::optional<double>& v) {  // NOLINT(google-explicit-constructor)
        if (v) *this = Cell(*v);
    }
};

/// A CSV table kept inside a JSON record, so the CSV can be regenerated from
/// the record alone.
class TableBuilder {
public:
    explicit TableBuilder(std::vector<std::string> columns);

    void row(const std::vector<Cell>& cells);
    [[nodiscard]] json to_json() const { return table_; }

private:
    json table_;
    std::size_t rows_ = 0;
};

std::string format_number(double v);

/// CSV text of one table record.
std::string csv_from_table(const json& table);

/// record["tables"] as file name -> CSV text.
std::map<std::string, std::string> csvs_from_record(const json& record);

/// Writes `name` (the JSON record) and every table of the record into `dir`.
/// Each file is written to a temporary name and renamed into place.
void write_record(const std::filesystem::path& dir, const std::string& name, const json& record);

void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace heatcert::app
