#include "fracsub/cli/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef FRACSUB_GIT_DESCRIBE
#define FRACSUB_GIT_DESCRIBE "unknown"
#endif

namespace fracsub::cli {

namespace fs = std::filesystem;

namespace {

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
    return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) return *d;
        return format_number(*d);
    }
    if (const auto* l = std::get_if<long>(&c)) return *l;
    return std::get<std::string>(c);
}

std::string fnv_hex(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width does not match the schema");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
    }
    fs::rename(tmp, target);
}

std::string git_describe() { return FRACSUB_GIT_DESCRIBE; }

OutputSink::OutputSink(std::string dir, std::string format, std::string command, const ExperimentConfig& config,
                       std::map<std::string, std::string> tolerances)
    : dir_(std::move(dir)),
      format_(std::move(format)),
      command_(std::move(command)),
      config_(&config),
      tolerances_(std::move(tolerances)) {}

std::string OutputSink::write(const std::string& stem, const Table& table,
                              const std::map<std::string, std::string>& extra_header) {
    std::map<std::string, std::string> header{{"command", command_},
                                              {"config_hash", config_->raw.hash()},
                                              {"kernel_family", config_->kernel.family_name()},
                                              {"kernel", config_->kernel.describe()},
                                              {"git_describe", git_describe()}};
    for (const auto& [k, v] : tolerances_) header["tolerance." + k] = v;
    for (const auto& [k, v] : extra_header) header[k] = v;

    std::ostringstream os;
    std::string path;
    if (format_ == "jsonl") {
        path = (fs::path(dir_) / (stem + ".jsonl")).string();
        nlohmann::json h = {{"header", header}, {"columns", table.columns}};
        os << h.dump() << "\n";
        for (const auto& row : table.rows) {
            nlohmann::json j = nlohmann::json::object();
            for (std::size_t i = 0; i < row.size(); ++i) j[table.columns[i]] = cell_json(row[i]);
            os << j.dump() << "\n";
        }
    } else {
        path = (fs::path(dir_) / (stem + ".csv")).string();
        for (const auto& [k, v] : header) os << "# " << k << ": " << v << "\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
        os << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
            os << "\n";
        }
    }
    write_atomic(path, os.str());
    files_.push_back(path);
    return path;
}

std::string OutputSink::write_manifest(const std::map<std::string, std::string>& summary) {
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : files_) {
        std::ifstream in(f, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        files.push_back({{"path", fs::path(f).filename().string()}, {"bytes", buf.str().size()}, {"fnv1a64", fnv_hex(buf.str())}});
    }
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    nlohmann::json m = {{"command", command_},
                        {"git_describe", git_describe()},
                        {"config_hash", config_->raw.hash()},
                        {"inputs", config_->raw.values()},
                        {"kernel", config_->kernel.describe()},
                        {"inversion", describe(config_->inversion)},
                        {"tolerances", tolerances_},
                        {"summary", summary},
                        {"files", files},
                        {"generated_at", stamp}};
    const std::string path = (fs::path(dir_) / "manifest.json").string();
    write_atomic(path, m.dump(2) + "\n");
    return path;
}

}  // namespace fracsub::cli
