#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "starlab/io/format.hpp"

namespace starlab::io {

/// Tabular payload rendered both as CSV (fixed column order, lossless decimal
/// floats) and as a JSON mirror with identical values.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;

    std::string to_csv() const {
        std::string out;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += columns[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += cell_text(row[i]);
            }
            out += '\n';
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json obj;
            for (std::size_t i = 0; i < row.size(); ++i) obj[columns[i]] = row[i];
            arr.push_back(std::move(obj));
        }
        return arr;
    }

    static std::string cell_text(const nlohmann::json& v) {
        if (v.is_number_float()) return format_double(v.get<double>());
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    }
};

/// JSON cell for a double; infinities are carried as the strings "inf"/"-inf"
/// so both serializations agree.
inline nlohmann::json json_number(double x) {
    if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
    return x;
}

/// Collects tables and charts, writes them under one directory, and records
/// every emitted file in manifest.json with a content digest. Nothing outside
/// the directory is touched.
class ReportBundle {
public:
    ReportBundle(std::filesystem::path dir, bool write_csv, bool write_json, bool write_svg)
        : dir_(std::move(dir)), csv_(write_csv), json_(write_json), svg_(write_svg) {}

    void add_table(Table table) { tables_.push_back(std::move(table)); }
    void add_chart(const std::string& name, std::string svg) {
        charts_.emplace_back(name, std::move(svg));
    }
    void set_status(int status) { status_ = std::max(status_, status); }
    int status() const { return status_; }

    /// Writes tables, charts and the manifest; config_echo reproduces the run.
    void write(const nlohmann::json& config_echo, const std::string& timestamp) {
        std::filesystem::create_directories(dir_);
        std::vector<std::pair<std::string, std::string>> files;
        for (const auto& t : tables_) {
            if (csv_) files.emplace_back(t.name + ".csv", t.to_csv());
            if (json_) files.emplace_back(t.name + ".json", t.to_json().dump(2) + "\n");
        }
        if (svg_)
            for (auto& [name, body] : charts_) files.emplace_back(name + ".svg", body);

        nlohmann::json manifest;
        manifest["tool"] = "starlab";
        manifest["version"] = kVersion;
        manifest["generated_at"] = timestamp;
        manifest["status"] = status_;
        manifest["config"] = config_echo;
        nlohmann::json flist = nlohmann::json::array();
        std::sort(files.begin(), files.end());
        for (const auto& [name, body] : files) {
            write_file(name, body);
            flist.push_back({{"name", name},
                             {"bytes", body.size()},
                             {"digest", "fnv1a64:" + fnv1a64_hex(body)}});
        }
        manifest["files"] = std::move(flist);
        write_file("manifest.json", manifest.dump(2) + "\n");
    }

    static constexpr const char* kVersion = "0.1.0";

private:
    void write_file(const std::string& name, const std::string& body) const {
        const std::filesystem::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out) throw std::runtime_error("short write on " + path.string());
    }

    std::filesystem::path dir_;
    bool csv_, json_, svg_;
    int status_ = 0;
    std::vector<Table> tables_;
    std::vector<std::pair<std::string, std::string>> charts_;
};

}  // namespace starlab::io
