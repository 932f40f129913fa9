#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <utility>

#include "heatcert/errors.hpp"

namespace heatcert::app {

void put_extended(json& obj, const std::string& key, const ExtendedReal& v) {
    obj[key] = v.is_finite() ? json(v.value()) : json(nullptr);
    obj[key + "_infinite"] = v.is_infinite();
}

ExtendedReal get_extended(const json& obj, const std::string& key) {
    if (obj.at(key + "_infinite").get<bool>()) return ExtendedReal::infinity();
    return obj.at(key).get<double>();
}

void put_optional(json& obj, const std::string& key, const std::optional<double>& v) {
    obj[key] = v ? json(*v) : json(nullptr);
}

TableBuilder::TableBuilder(std::vector<std::string> columns) {
    table_["columns"] = std::move(columns);
    table_["rows"] = json::array();
    table_["infinite"] = json::array();
}

void TableBuilder::row(const std::vector<Cell>& cells) {
    if (cells.size() != table_["columns"].size()) throw NumericError("table row has the wrong number of cells");
    json r = json::array();
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        if (cell.kind == Cell::Kind::Missing) {
            r.push_back(nullptr);
        } else if (std::isnan(cell.value)) {
            r.push_back("nan");
        } else if (std::isinf(cell.value)) {
            if (cell.value < 0) throw NumericError("table cell is -inf");
            r.push_back(nullptr);
            table_["infinite"].push_back({rows_, c});
        } else {
            r.push_back(cell.value);
        }
    }
    table_["rows"].push_back(std::move(r));
    ++rows_;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_from_table(const json& table) {
    std::set<std::pair<std::size_t, std::size_t>> inf;
    for (const auto& rc : table.at("infinite")) inf.emplace(rc[0].get<std::size_t>(), rc[1].get<std::size_t>());
    std::string out;
    const auto& cols = table.at("columns");
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) out += ',';
        out += cols[c].get<std::string>();
    }
    out += '\n';
    const auto& rows = table.at("rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c) out += ',';
            const json& v = rows[r][c];
            if (v.is_number()) out += format_number(v.get<double>());
            else if (v.is_string()) out += v.get<std::string>();
            else if (inf.count({r, c})) out += "inf";
        }
        out += '\n';
    }
    return out;
}

std::map<std::string, std::string> csvs_from_record(const json& record) {
    std::map<std::string, std::string> out;
    if (!record.contains("tables")) return out;
    for (const auto& [name, table] : record.at("tables").items()) out[name] = csv_from_table(table);
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw NumericError("cannot open " + tmp.string() + " for writing");
        f << contents;
        if (!f) throw NumericError("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_record(const std::filesystem::path& dir, const std::string& name, const json& record) {
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / name, record.dump(2) + "\n");
    for (const auto& [file, text] : csvs_from_record(record)) write_file_atomic(dir / file, text);
}

}  // namespace heatcert::app
