#include "fracsub/cli/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "fracsub/errors.hpp"

namespace fracsub::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void flatten(const nlohmann::json& j, const std::string& prefix, ConfigMap& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    if (prefix.empty()) throw ConfigError("JSON config must be an object");
    if (j.is_array()) {
        std::string joined;
        for (const auto& e : j) {
            if (!joined.empty()) joined += ",";
            joined += e.is_string() ? e.get<std::string>() : e.dump();
        }
        out.set(prefix, joined);
    } else if (j.is_string()) {
        out.set(prefix, j.get<std::string>());
    } else {
        out.set(prefix, j.dump());
    }
}

double parse_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' expects a number, got '" + text + "'");
    }
    if (trim(text.substr(used)) != "") throw ConfigError("config key '" + key + "' expects a number, got '" + text + "'");
    return v;
}

}  // namespace

ConfigMap ConfigMap::parse_text(const std::string& text) {
    ConfigMap out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        out.set(section.empty() ? key : section + "." + key, trim(line.substr(eq + 1)));
    }
    return out;
}

ConfigMap ConfigMap::parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    ConfigMap out;
    flatten(j, "", out);
    return out;
}

ConfigMap ConfigMap::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json(text);
    return parse_text(text);
}

void ConfigMap::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || trim(assignment.substr(0, eq)).empty())
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void ConfigMap::merge(const ConfigMap& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(key, it->second);
}

long ConfigMap::get_int(const std::string& key, long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const double v = parse_double(key, it->second);
    if (v != std::floor(v) || std::fabs(v) > 9e15) throw ConfigError("config key '" + key + "' expects an integer");
    return static_cast<long>(v);
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config key '" + key + "' expects a boolean, got '" + v + "'");
}

std::vector<double> ConfigMap::get_list(const std::string& key) const {
    std::vector<double> out;
    const auto it = values_.find(key);
    if (it == values_.end()) return out;
    std::string text = it->second;
    for (char& c : text)
        if (c == '[' || c == ']') c = ' ';
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!trim(item).empty()) out.push_back(parse_double(key, trim(item)));
    return out;
}

std::string ConfigMap::canonical() const {
    std::string out;
    for (const auto& [k, v] : values_)
        if (k != "output.dir") out += k + "=" + v + "\n";
    return out;
}

std::string ConfigMap::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::vector<double> ScanGrid::points() const {
    if (!(t_min > 0.0) || !(decades > 0.0) || points_per_decade < 1)
        throw ConfigError("scan grid needs t_min > 0, decades > 0 and points_per_decade >= 1");
    const double lo = std::log10(t_min);
    return log_grid(lo, lo + decades, points_per_decade);
}

KernelSpec kernel_from(const ConfigMap& raw, const std::string& prefix) {
    const std::string family = raw.get_string(prefix + "family", "stable");
    if (family == "stable") return KernelSpec::stable(raw.get_double(prefix + "alpha", 0.5));
    if (family == "distributed") {
        const std::string mu = raw.get_string(prefix + "mu", "uniform");
        if (mu == "uniform") return KernelSpec(DistributedOrderKernel::uniform(raw.get_double(prefix + "coeff", 1.0)));
        if (mu == "power")
            return KernelSpec(DistributedOrderKernel::power(raw.get_double(prefix + "lambda", 1.0),
                                                            raw.get_double(prefix + "coeff", 1.0)));
        if (mu == "samples") return KernelSpec(DistributedOrderKernel::from_samples(raw.get_list(prefix + "samples")));
        throw ConfigError("unknown " + prefix + "mu '" + mu + "' (uniform, power, samples)");
    }
    if (family == "stieltjes") {
        const std::string density = raw.get_string(prefix + "density", "two_power");
        if (density == "two_power")
            return KernelSpec(StieltjesKernel::two_power(raw.get_double(prefix + "theta", 0.4),
                                                         raw.get_double(prefix + "alpha_tail", 0.5)));
        if (density == "power") return KernelSpec(StieltjesKernel::power(raw.get_double(prefix + "theta", 0.4)));
        if (density == "exponential") return KernelSpec(StieltjesKernel::exponential());
        if (density == "cut_power") return KernelSpec(StieltjesKernel::cut_power());
        throw ConfigError("unknown " + prefix + "density '" + density + "' (two_power, power, exponential, cut_power)");
    }
    throw ConfigError("unknown " + prefix + "family '" + family + "' (stable, distributed, stieltjes)");
}

ExperimentConfig ExperimentConfig::from(const ConfigMap& raw) {
    ExperimentConfig c;
    c.raw = raw;
    c.kernel = kernel_from(raw);

    const std::string method = raw.get_string("inversion.method", "talbot");
    if (method == "talbot")
        c.inversion = FixedTalbot{static_cast<int>(raw.get_int("inversion.nodes", 32))};
    else if (method == "stehfest")
        c.inversion = GaverStehfest{static_cast<int>(raw.get_int("inversion.nodes", 14))};
    else
        throw ConfigError("unknown inversion.method '" + method + "' (talbot, stehfest)");
    validate(c.inversion);
    c.tail_cutoff = raw.get_double("inversion.tail_cutoff", 1e-10);
    if (!(c.tail_cutoff > 0.0 && c.tail_cutoff <= 1e-4)) throw ConfigError("inversion.tail_cutoff must lie in (0, 1e-4]");

    auto& k = c.kinetics;
    k.m = raw.get_double("model.m", k.m);
    if (!(k.m > 0.0 && k.m < 1.0)) {
        std::ostringstream os;
        os << "model.m = " << k.m << " violates the mortality constraint 0 < m < 1";
        throw ConfigError(os.str());
    }
    k.sigma_plus = raw.get_double("model.sigma_plus", k.sigma_plus);
    k.sigma_minus = raw.get_double("model.sigma_minus", k.sigma_minus);
    if (!(k.sigma_plus > 0.0 && k.sigma_minus > 0.0)) throw ConfigError("model.sigma_plus and model.sigma_minus must be positive");
    k.grid.x_min = raw.get_double("grid.x_min", k.grid.x_min);
    k.grid.x_max = raw.get_double("grid.x_max", k.grid.x_max);
    k.grid.n = static_cast<int>(raw.get_int("grid.n", k.grid.n));
    try {
        k.grid.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    k.dt = raw.get_double("solver.dt", k.dt);
    k.T = raw.get_double("solver.T", k.T);
    k.output_interval = raw.get_double("solver.output_interval", k.output_interval);
    k.fractional = raw.get_bool("solver.fractional", k.fractional);
    k.initial = raw.get_string("solver.initial", k.initial);
    k.initial_level = raw.get_double("solver.initial_level", k.initial_level);
    if (!(k.dt > 0.0 && k.dt <= 0.5)) throw ConfigError("solver.dt must lie in (0, 0.5]");
    if (!(k.T > 0.0)) throw ConfigError("solver.T must be positive");
    if (!(k.output_interval > 0.0)) throw ConfigError("solver.output_interval must be positive");
    if (k.initial != "step" && k.initial != "constant") throw ConfigError("solver.initial must be step or constant");
    if (!(k.initial_level >= 0.0)) throw ConfigError("solver.initial_level must be nonnegative");

    c.scan.t_min = raw.get_double("scan.t_min", c.scan.t_min);
    c.scan.decades = raw.get_double("scan.decades", c.scan.decades);
    c.scan.points_per_decade = static_cast<int>(raw.get_int("scan.points_per_decade", c.scan.points_per_decade));
    c.scan.points();

    c.output_dir = raw.get_string("output.dir", c.output_dir);
    c.output_format = raw.get_string("output.format", c.output_format);
    if (c.output_format != "csv" && c.output_format != "jsonl") throw ConfigError("output.format must be csv or jsonl");
    if (raw.has("seed")) {
        const long s = raw.get_int("seed", 0);
        if (s < 0) throw ConfigError("seed must be nonnegative");
        c.seed = static_cast<std::uint64_t>(s);
    }
    return c;
}

}  // namespace fracsub::cli
