#include "sfmc/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "sfmc/errors.hpp"

namespace sfmc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct KeyValues {
    std::map<std::string, std::string> values;
    std::map<std::string, int> lines;

    bool has(const std::string& key) const { return values.count(key) > 0; }
};

KeyValues tokenize(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCategory::ParseError,
                        "line " + std::to_string(lineno) +
                            ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw Error(ErrorCategory::ParseError,
                        "line " + std::to_string(lineno) +
                            ": empty key or value");
        if (kv.has(key))
            throw Error(ErrorCategory::ParseError,
                        "line " + std::to_string(lineno) +
                            ": duplicate key '" + key + "'");
        kv.values[key] = value;
        kv.lines[key] = lineno;
    }
    return kv;
}

double as_real(const KeyValues& kv, const std::string& key, double fallback) {
    if (!kv.has(key))
        return fallback;
    const std::string& v = kv.values.at(key);
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorCategory::ParseError,
                    "key '" + key + "': not a number: '" + v + "'");
    }
    if (pos != v.size())
        throw Error(ErrorCategory::ParseError,
                    "key '" + key + "': trailing characters in '" + v + "'");
    return out;
}

std::uint64_t as_u64(const KeyValues& kv, const std::string& key,
                     std::uint64_t fallback) {
    if (!kv.has(key))
        return fallback;
    const std::string& v = kv.values.at(key);
    try {
        if (!v.empty() && v[0] == '-')
            throw std::invalid_argument("negative");
        std::size_t pos = 0;
        std::uint64_t out = std::stoull(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument("trailing");
        return out;
    } catch (const std::exception&) {
        throw Error(ErrorCategory::ValidationError,
                    "key '" + key + "': expected a nonnegative integer, got '" +
                        v + "'");
    }
}

int as_int(const KeyValues& kv, const std::string& key, int fallback) {
    const double v = as_real(kv, key, fallback);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw Error(ErrorCategory::ValidationError,
                    "key '" + key + "': expected an integer");
    return i;
}

[[noreturn]] void fail_key(const std::string& key, const std::string& what) {
    throw Error(ErrorCategory::ValidationError, "key '" + key + "': " + what);
}

const char* const kKnownKeys[] = {
    "source",         "intensity",     "nbar",
    "modes",          "wavelength_nm", "fwhm_fs",
    "ellipticity",    "peak_field_au", "ip_ev",
    "alpha",          "prefactor",     "shots",
    "seed",           "energy_min_ev", "energy_max_ev",
    "energy_bins",    "time_grid",     "workers",
    "importance_boost", "count_max",   "scan_g2_min",
    "scan_g2_max",    "scan_g2_step",
};

} // namespace

SimConfig default_config() { return parse_config(""); }

SimConfig parse_config(const std::string& text) {
    const KeyValues kv = tokenize(text);
    for (const auto& [key, value] : kv.values) {
        bool known = false;
        for (const char* k : kKnownKeys)
            known = known || key == k;
        if (!known)
            throw Error(ErrorCategory::ParseError,
                        "line " + std::to_string(kv.lines.at(key)) +
                            ": unknown key '" + key + "'");
    }

    SimConfig cfg;
    std::string source = kv.has("source") ? kv.values.at("source") : "bsv";
    if (source == "coherent") {
        const double intensity = as_real(kv, "intensity", 20.0);
        if (!(intensity > 0.0))
            fail_key("intensity", "must be > 0");
        cfg.source = Coherent{intensity};
    } else if (source == "bsv") {
        const double nbar = as_real(kv, "nbar", 100.0);
        const double modes = as_real(kv, "modes", 5.0);
        if (!(nbar > 0.0))
            fail_key("nbar", "must be > 0");
        if (!(modes > 0.0))
            fail_key("modes", "must be > 0");
        cfg.source = Bsv{nbar, modes};
    } else {
        fail_key("source", "must be 'coherent' or 'bsv'");
    }

    cfg.pulse.wavelength_nm = as_real(kv, "wavelength_nm", 1580.0);
    cfg.pulse.fwhm_fs = as_real(kv, "fwhm_fs", 70.0);
    cfg.pulse.ellipticity = as_real(kv, "ellipticity", 0.8);
    cfg.pulse.peak_field = as_real(kv, "peak_field_au", 0.0173);
    if (!(cfg.pulse.wavelength_nm > 0.0))
        fail_key("wavelength_nm", "must be > 0");
    if (!(cfg.pulse.fwhm_fs > 0.0))
        fail_key("fwhm_fs", "must be > 0");
    if (!(cfg.pulse.ellipticity > 0.0) || cfg.pulse.ellipticity > 1.0)
        fail_key("ellipticity", "must be in (0, 1]");
    if (!(cfg.pulse.peak_field > 0.0))
        fail_key("peak_field_au", "must be > 0");

    cfg.atom.ip_ev = as_real(kv, "ip_ev", 5.14);
    if (!(cfg.atom.ip_ev > 0.0))
        fail_key("ip_ev", "must be > 0");
    cfg.atom.alpha = kv.has("alpha")
                         ? as_real(kv, "alpha", 0.0)
                         : alpha_from_ip(cfg.atom.ip_ev, cfg.pulse.peak_field);
    if (!(cfg.atom.alpha >= 0.0))
        fail_key("alpha", "must be >= 0");
    cfg.atom.prefactor = as_real(kv, "prefactor", 0.01);
    if (!(cfg.atom.prefactor > 0.0))
        fail_key("prefactor", "must be > 0");

    cfg.shots = as_u64(kv, "shots", 100000);
    if (cfg.shots == 0)
        fail_key("shots", "must be > 0");
    cfg.seed = as_u64(kv, "seed", 1);

    cfg.energy.min_ev = as_real(kv, "energy_min_ev", 0.0);
    cfg.energy.max_ev = as_real(kv, "energy_max_ev", 300.0);
    cfg.energy.bins = as_int(kv, "energy_bins", 300);
    if (cfg.energy.min_ev < 0.0)
        fail_key("energy_min_ev", "must be >= 0");
    if (!(cfg.energy.max_ev > cfg.energy.min_ev))
        fail_key("energy_max_ev", "must exceed energy_min_ev");
    if (cfg.energy.bins <= 0)
        fail_key("energy_bins", "must be > 0");

    cfg.time_grid = as_int(kv, "time_grid", 64);
    if (cfg.time_grid < 8)
        fail_key("time_grid", "must be >= 8");
    cfg.workers = as_int(kv, "workers", 1);
    if (cfg.workers < 1)
        fail_key("workers", "must be >= 1");
    cfg.importance_boost = as_real(kv, "importance_boost", 1.0);
    if (!(cfg.importance_boost > 0.0))
        fail_key("importance_boost", "must be > 0");
    cfg.count_max = as_int(kv, "count_max", 64);
    if (cfg.count_max < 1)
        fail_key("count_max", "must be >= 1");

    cfg.scan_g2_min = as_real(kv, "scan_g2_min", 1.00);
    cfg.scan_g2_max = as_real(kv, "scan_g2_max", 1.39);
    cfg.scan_g2_step = as_real(kv, "scan_g2_step", 0.05);
    if (!(cfg.scan_g2_max >= cfg.scan_g2_min))
        fail_key("scan_g2_max", "must be >= scan_g2_min");
    if (!(cfg.scan_g2_step > 0.0))
        fail_key("scan_g2_step", "must be > 0");

    return cfg;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCategory::IoError,
                    "cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const SimConfig& cfg) {
    std::ostringstream out;
    if (const auto* c = std::get_if<Coherent>(&cfg.source)) {
        out << "source = coherent\n";
        out << "intensity = " << fmt_real(c->intensity) << "\n";
    } else {
        const auto& b = std::get<Bsv>(cfg.source);
        out << "source = bsv\n";
        out << "nbar = " << fmt_real(b.nbar) << "\n";
        out << "modes = " << fmt_real(b.modes) << "\n";
    }
    out << "wavelength_nm = " << fmt_real(cfg.pulse.wavelength_nm) << "\n";
    out << "fwhm_fs = " << fmt_real(cfg.pulse.fwhm_fs) << "\n";
    out << "ellipticity = " << fmt_real(cfg.pulse.ellipticity) << "\n";
    out << "peak_field_au = " << fmt_real(cfg.pulse.peak_field) << "\n";
    out << "ip_ev = " << fmt_real(cfg.atom.ip_ev) << "\n";
    out << "alpha = " << fmt_real(cfg.atom.alpha) << "\n";
    out << "prefactor = " << fmt_real(cfg.atom.prefactor) << "\n";
    out << "shots = " << cfg.shots << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "energy_min_ev = " << fmt_real(cfg.energy.min_ev) << "\n";
    out << "energy_max_ev = " << fmt_real(cfg.energy.max_ev) << "\n";
    out << "energy_bins = " << cfg.energy.bins << "\n";
    out << "time_grid = " << cfg.time_grid << "\n";
    out << "workers = " << cfg.workers << "\n";
    out << "importance_boost = " << fmt_real(cfg.importance_boost) << "\n";
    out << "count_max = " << cfg.count_max << "\n";
    out << "scan_g2_min = " << fmt_real(cfg.scan_g2_min) << "\n";
    out << "scan_g2_max = " << fmt_real(cfg.scan_g2_max) << "\n";
    out << "scan_g2_step = " << fmt_real(cfg.scan_g2_step) << "\n";
    return out.str();
}

} // namespace sfmc
