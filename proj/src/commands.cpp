#include "sfmc/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <json.hpp>

#include "sfmc/analysis.hpp"
#include "sfmc/config.hpp"
#include "sfmc/csv.hpp"
#include "sfmc/errors.hpp"

namespace sfmc {

namespace fs = std::filesystem;

namespace {

void write_manifest(const RunManifest& manifest, const fs::path& dir) {
    nlohmann::json j;
    j["command"] = manifest.command;
    j["version"] = manifest.version;
    j["seed"] = manifest.seed;
    j["config"] = manifest.config_text;
    j["wall_time_s"] = manifest.wall_time_s;
    j["outputs"] = manifest.outputs;
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out)
        throw Error(ErrorCategory::IoError,
                    "cannot write manifest in " + dir.string());
    out << j.dump(2) << "\n";
}

void run_counts(const SimConfig& cfg, const fs::path& dir,
                RunManifest& manifest) {
    const Histogram hist = simulate_counts(cfg);
    const double mean = histogram_mean(hist);
    if (mean > 0.1)
        std::cerr << "warning: mean electron count " << mean
                  << " exceeds 0.1; depletion-free model may not hold\n";
    export_histogram_csv(hist, (dir / "counts.csv").string());
    manifest.outputs.push_back("counts.csv");
}

void run_spectrum(const SimConfig& cfg, const fs::path& dir,
                  RunManifest& manifest) {
    const Histogram hist = simulate_spectrum(cfg);
    export_histogram_csv(hist, (dir / "spectrum.csv").string());
    manifest.outputs.push_back("spectrum.csv");
}

void run_scan(const SimConfig& cfg, const fs::path& dir,
              RunManifest& manifest) {
    const std::vector<double> values = scan_grid(cfg);
    if (values.size() < 2)
        throw Error(ErrorCategory::UnattainableStatistics,
                    "scan range contains fewer than two attainable g2 values");
    const auto scan = g2_scan(cfg, values);
    const auto points = scan_points(scan, cfg);

    for (std::size_t i = 0; i < scan.size(); ++i) {
        char name[48];
        std::snprintf(name, sizeof(name), "scan_spectrum_%02zu.csv", i);
        export_histogram_csv(scan[i].second, (dir / name).string());
        manifest.outputs.push_back(name);
    }
    export_scan_csv(points, (dir / "scan_points.csv").string());
    manifest.outputs.push_back("scan_points.csv");

    std::vector<std::pair<double, double>> xy;
    for (const auto& p : points)
        xy.emplace_back(p.g2, p.i_eff);
    const LinearFit fit = fit_linear(xy);
    {
        std::ofstream out(dir / "scan_summary.csv", std::ios::binary);
        if (!out)
            throw Error(ErrorCategory::IoError, "cannot write scan summary");
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n",
                      fit.slope, fit.intercept, fit.r_squared,
                      fit.slope != 0.0 ? -fit.intercept / fit.slope : 0.0);
        out << "slope,intercept,r_squared,g2_root\n" << buf;
    }
    manifest.outputs.push_back("scan_summary.csv");
}

void run_g2(const SimConfig& cfg, const fs::path& dir, RunManifest& manifest) {
    std::set<double> nbars{1.0, 10.0, 100.0, 1000.0};
    std::set<double> mode_counts{1.0, 2.0, 5.0, 10.0};
    if (const auto* b = std::get_if<Bsv>(&cfg.source)) {
        nbars.insert(b->nbar);
        mode_counts.insert(b->modes);
    }
    std::vector<G2TableRow> rows;
    for (double nbar : nbars)
        for (double modes : mode_counts) {
            G2TableRow r;
            r.nbar = nbar;
            r.modes = modes;
            r.g2 = g2_equal_modes(nbar, modes);
            r.per_mode = per_mode_mean(nbar, modes);
            r.g2_exact = g2_from_per_mode(r.per_mode, nbar, true);
            r.g2_approx = g2_from_per_mode(r.per_mode, nbar, false);
            rows.push_back(r);
        }
    export_g2_table_csv(rows, (dir / "g2_table.csv").string());
    manifest.outputs.push_back("g2_table.csv");
}

void run_oracle(const SimConfig& cfg, const fs::path& dir,
                RunManifest& manifest) {
    AtomTarget atom = cfg.atom;
    atom.prefactor = cfg.effective_prefactor();
    const auto pmf = count_pmf_oracle(cfg.source, atom, cfg.count_max);
    export_pmf_csv(pmf, (dir / "oracle_pmf.csv").string());
    manifest.outputs.push_back("oracle_pmf.csv");
}

} // namespace

std::vector<double> scan_grid(const SimConfig& cfg) {
    const auto* bsv = std::get_if<Bsv>(&cfg.source);
    if (!bsv)
        throw_invalid("scan requires a BSV source");
    const double floor = 1.0 + 1.0 / bsv->nbar;
    std::vector<double> values;
    for (double g2 = cfg.scan_g2_min; g2 <= cfg.scan_g2_max + 1e-12;
         g2 += cfg.scan_g2_step) {
        if (g2 > floor)
            values.push_back(g2);
        else
            std::cerr << "note: dropping unattainable scan point g2 = " << g2
                      << " (requires g2 > " << floor << ")\n";
    }
    return values;
}

RunManifest run_command(const std::string& name, const SimConfig& cfg,
                        const std::string& out_dir) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorCategory::IoError,
                    "cannot create output directory " + out_dir + ": " +
                        ec.message());

    RunManifest manifest;
    manifest.command = name;
    manifest.version = kToolVersion;
    manifest.seed = cfg.seed;
    manifest.config_text = emit_config(cfg);

    if (name == "counts")
        run_counts(cfg, dir, manifest);
    else if (name == "spectrum")
        run_spectrum(cfg, dir, manifest);
    else if (name == "scan")
        run_scan(cfg, dir, manifest);
    else if (name == "g2")
        run_g2(cfg, dir, manifest);
    else if (name == "oracle")
        run_oracle(cfg, dir, manifest);
    else
        throw_invalid("unknown command: " + name);

    manifest.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    write_manifest(manifest, dir);
    return manifest;
}

} // namespace sfmc
