#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "fracsub/cli/config.hpp"

namespace fracsub::cli {

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// Shortest round-trip text for a double ("nan", "inf" and "-inf" for non-finite values).
std::string format_number(double v);

/// Writes path.tmp then renames it over path.
void write_atomic(const std::string& path, const std::string& content);

/// The build's git-describe string.
std::string git_describe();

/// Writes tables into one output directory. Every file starts with a '#' header block (command,
/// config hash, kernel, tolerances) followed by the schema row; jsonl files carry the header as
/// their first object. No timestamps go into data files, so identical inputs give identical bytes.
class OutputSink {
public:
    OutputSink(std::string dir, std::string format, std::string command, const ExperimentConfig& config,
               std::map<std::string, std::string> tolerances);

    /// Returns the written path (dir/stem.csv or dir/stem.jsonl).
    std::string write(const std::string& stem, const Table& table,
                      const std::map<std::string, std::string>& extra_header = {});
    /// manifest.json: inputs, git describe, tolerances, config hash and the files written so far.
    std::string write_manifest(const std::map<std::string, std::string>& summary = {});

    const std::string& dir() const { return dir_; }
    const std::vector<std::string>& files() const { return files_; }

private:
    std::string dir_, format_, command_;
    const ExperimentConfig* config_;
    std::map<std::string, std::string> tolerances_;
    std::vector<std::string> files_;
};

}  // namespace fracsub::cli
