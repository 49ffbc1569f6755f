#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mch/grid.hpp"
#include "mch/initial_data.hpp"
#include "mch/solver.hpp"

namespace mch {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat, typed key-value configuration with [section] headers. Grammar:
///   file     := line*
///   line     := '[' name ']' | key '=' value | '#' comment | blank
/// Keys are unique within a section; values are scalars or comma lists.
class ConfigText {
public:
    static ConfigText parse(const std::string& text) {
        ConfigText cfg;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    throw ConfigError("config line " + std::to_string(lineno) +
                                      ": unterminated section header");
                section = trim(t.substr(1, t.size() - 2));
                if (section.empty())
                    throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
                cfg.order_sections(section);
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + t + "'");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (key.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
            if (section.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": key '" + key +
                                  "' outside any section");
            cfg.set(section, key, value);
        }
        return cfg;
    }

    void set(const std::string& section, const std::string& key, const std::string& value) {
        order_sections(section);
        auto& sec = values_[section];
        if (!sec.count(key)) key_order_[section].push_back(key);
        sec[key] = value;
    }

    bool has(const std::string& section, const std::string& key) const {
        auto it = values_.find(section);
        return it != values_.end() && it->second.count(key) > 0;
    }

    std::string get_string(const std::string& section, const std::string& key) const {
        auto it = values_.find(section);
        if (it == values_.end() || !it->second.count(key))
            throw ConfigError("missing config key '" + section + "." + key + "'");
        return it->second.at(key);
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
        return has(section, key) ? get_string(section, key) : fallback;
    }

    double get_double(const std::string& section, const std::string& key) const {
        return to_double(section, key, get_string(section, key));
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        return has(section, key) ? get_double(section, key) : fallback;
    }

    long get_int(const std::string& section, const std::string& key) const {
        const std::string v = get_string(section, key);
        long out = 0;
        const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || p != v.data() + v.size())
            throw ConfigError("config key '" + section + "." + key + "' is not an integer: '" + v + "'");
        return out;
    }

    long get_int(const std::string& section, const std::string& key, long fallback) const {
        return has(section, key) ? get_int(section, key) : fallback;
    }

    std::vector<double> get_double_list(const std::string& section, const std::string& key) const {
        const std::string v = get_string(section, key);
        std::vector<double> out;
        std::size_t start = 0;
        while (start <= v.size()) {
            const auto comma = v.find(',', start);
            const std::string item =
                trim(comma == std::string::npos ? v.substr(start) : v.substr(start, comma - start));
            if (!item.empty()) out.push_back(to_double(section, key, item));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }

    /// Canonical serialization: sections and keys in first-seen order, numbers
    /// carried through verbatim. parse(serialize(parse(t))) == parse(t).
    std::string serialize() const {
        std::string out;
        for (const auto& section : section_order_) {
            out += "[" + section + "]\n";
            for (const auto& key : key_order_.at(section))
                out += key + " = " + values_.at(section).at(key) + "\n";
        }
        return out;
    }

    bool operator==(const ConfigText& o) const { return values_ == o.values_; }

private:
    static std::string trim(const std::string& s) {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return s.substr(a, b - a);
    }

    static double to_double(const std::string& section, const std::string& key,
                            const std::string& v) {
        if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + section + "." + key + "' is not a number: '" + v + "'");
        }
    }

    void order_sections(const std::string& section) {
        if (!values_.count(section)) {
            values_[section];
            key_order_[section];
            section_order_.push_back(section);
        }
    }

    std::map<std::string, std::map<std::string, std::string>> values_;
    std::map<std::string, std::vector<std::string>> key_order_;
    std::vector<std::string> section_order_;
};

/// Fully resolved run description.
struct RunConfig {
    Grid grid;
    InitialDataSpec initial_u;
    InitialDataSpec initial_gamma;
    SolverConfig solver;
    std::string out_dir = "out";
    long stride = 0;  // snapshot stride in steps; 0 writes only the initial snapshot
    std::uint64_t seed = 0;
    double steepening_ratio = std::numeric_limits<double>::infinity();
    std::vector<double> scan_amplitudes;
};

namespace detail {

inline InitialDataSpec parse_initial(const ConfigText& c, const std::string& section,
                                     std::uint64_t run_seed) {
    InitialDataSpec spec;
    spec.kind = c.get_string(section, "kind");
    if (!initial_data_kind_known(spec.kind))
        throw ConfigError("config key '" + section + ".kind': unknown initial data kind '" +
                          spec.kind + "'");
    spec.amplitude = c.get_double(section, "amplitude", spec.amplitude);
    spec.width = c.get_double(section, "width", spec.width);
    spec.center = c.get_double(section, "center", spec.center);
    spec.center_y = c.get_double(section, "center_y", spec.center_y);
    spec.center2 = c.get_double(section, "center2", spec.center2);
    spec.mode = static_cast<int>(c.get_int(section, "mode", spec.mode));
    spec.beta = c.get_double(section, "beta", spec.beta);
    spec.seed = static_cast<std::uint64_t>(
        c.get_int(section, "seed", static_cast<long>(run_seed)));
    return spec;
}

}  // namespace detail

inline RunConfig parse_run_config(const ConfigText& c) {
    RunConfig rc;
    rc.grid = Grid(static_cast<int>(c.get_int("grid", "dim")),
                   static_cast<int>(c.get_int("grid", "n")), c.get_double("grid", "period", 1.0));
    rc.seed = static_cast<std::uint64_t>(c.get_int("output", "seed", 0));
    rc.initial_u = detail::parse_initial(c, "initial_u", rc.seed);
    rc.initial_gamma = detail::parse_initial(c, "initial_gamma", mix_seed(rc.seed, 5));
    const std::string scheme = c.get_string("solver", "scheme", "rk4");
    if (scheme == "rk4")
        rc.solver.scheme = Scheme::rk4;
    else if (scheme == "picard")
        rc.solver.scheme = Scheme::picard;
    else
        throw ConfigError("config key 'solver.scheme': unknown scheme '" + scheme + "'");
    rc.solver.dt = c.get_double("solver", "dt");
    rc.solver.t_end = c.get_double("solver", "t_end");
    rc.solver.cfl_guard = c.get_double("solver", "cfl_guard", rc.solver.cfl_guard);
    rc.solver.picard_depth = static_cast<int>(c.get_int("solver", "picard_depth", rc.solver.picard_depth));
    rc.solver.picard_tol = c.get_double("solver", "picard_tol", rc.solver.picard_tol);
    rc.solver.sobolev_s = c.get_double("solver", "sobolev_s", rc.solver.sobolev_s);
    rc.solver.validate();
    rc.out_dir = c.get_string("output", "dir", rc.out_dir);
    rc.stride = c.get_int("output", "stride", rc.stride);
    rc.steepening_ratio = c.get_double("diagnostics", "steepening_ratio", rc.steepening_ratio);
    if (c.has("scan", "amplitudes")) rc.scan_amplitudes = c.get_double_list("scan", "amplitudes");
    return rc;
}

}  // namespace mch
