#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracsub/kernels.hpp"
#include "fracsub/kinetics.hpp"
#include "fracsub/laplace.hpp"

namespace fracsub::cli {

/// Malformed or invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat dotted-key configuration ("kernel.alpha = 0.5"). Values stay as text until read.
class ConfigMap {
public:
    /// Lines "key = value"; '#' and ';' start comments; "[section]" prefixes later keys with "section.".
    static ConfigMap parse_text(const std::string& text);
    /// Nested objects flatten to dotted keys; arrays become comma-separated lists.
    static ConfigMap parse_json(const std::string& text);
    /// JSON when the first non-blank character is '{', key-value text otherwise.
    static ConfigMap load_file(const std::string& path);

    /// "key=value" override.
    void set(const std::string& assignment);
    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    void merge(const ConfigMap& other);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }
    /// Sorted "key=value" lines except output.dir; the hash input.
    std::string canonical() const;
    /// FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;

private:
    std::map<std::string, std::string> values_;
};

struct ScanGrid {
    double t_min = 10.0;
    double decades = 3.0;
    int points_per_decade = 2;
    std::vector<double> points() const;
};

struct KineticsConfig {
    double m = 0.5;
    double sigma_plus = 1.0;
    double sigma_minus = 1.0;
    Grid grid{-64.0, 64.0, 1024};
    double dt = 0.05;
    double T = 10.0;
    double output_interval = 1.0;
    bool fractional = false;
    double initial_level = 0.1;
    std::string initial = "step";  // step | constant
};

/// Typed view of a ConfigMap. Every field is validated on construction.
struct ExperimentConfig {
    ConfigMap raw;
    KernelSpec kernel = KernelSpec::stable(0.5);
    InversionMethod inversion = FixedTalbot{};
    double tail_cutoff = 1e-10;
    KineticsConfig kinetics;
    ScanGrid scan;
    std::string output_dir = "fracsub_out";
    std::string output_format = "csv";
    std::optional<std::uint64_t> seed;

    /// Throws ConfigError (or DomainError from the numeric constructors) on invalid input.
    static ExperimentConfig from(const ConfigMap& raw);
};

/// kernel.family = stable | distributed | stieltjes with the family's keys:
/// stable: kernel.alpha; distributed: kernel.mu = uniform | power | samples, kernel.coeff,
/// kernel.lambda, kernel.samples; stieltjes: kernel.density = two_power | power | exponential |
/// cut_power, kernel.theta, kernel.alpha_tail.
KernelSpec kernel_from(const ConfigMap& raw, const std::string& prefix = "kernel.");

}  // namespace fracsub::cli
