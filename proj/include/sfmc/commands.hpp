#pragma once

#include <string>
#include <vector>

#include "sfmc/montecarlo.hpp"

namespace sfmc {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    std::string command;
    std::string version;
    std::uint64_t seed = 0;
    std::string config_text; // full config echo, re-parseable
    double wall_time_s = 0.0;
    std::vector<std::string> outputs; // paths relative to out_dir
};

/// g2 scan grid from the config range, restricted to attainable values
/// (g2 > 1 + 1/nbar).  Dropped values are reported on stderr by the
/// command layer.
std::vector<double> scan_grid(const SimConfig& cfg);

/// Dispatch one of counts|spectrum|scan|g2|oracle.  Writes CSV outputs and
/// a manifest.json into out_dir (created if missing) and returns the
/// manifest.
RunManifest run_command(const std::string& name, const SimConfig& cfg,
                        const std::string& out_dir);

} // namespace sfmc
