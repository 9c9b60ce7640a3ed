#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sfmc/histogram.hpp"
#include "sfmc/quantum_light.hpp"
#include "sfmc/strong_field.hpp"

namespace sfmc {

struct EnergyBins {
    double min_ev = 0.0;
    double max_ev = 300.0;
    int bins = 300;
};

struct SimConfig {
    LightSource source = Bsv{100.0, 5.0};
    PulseParams pulse;
    AtomTarget atom;
    std::uint64_t shots = 100000;
    std::uint64_t seed = 1;
    EnergyBins energy;
    int time_grid = 64;   // ionization-instant samples per optical cycle
    int workers = 1;
    double importance_boost = 1.0; // multiplies the rate prefactor
    int count_max = 64;            // electron-number histogram upper edge
    double scan_g2_min = 1.00;
    double scan_g2_max = 1.39;
    double scan_g2_step = 0.05;

    void validate() const;
    double effective_prefactor() const {
        return atom.prefactor * importance_boost;
    }
};

struct ShotOutcome {
    std::uint64_t electron_count = 0;
    std::vector<double> energies_ev; // one entry per electron
};

/// Discretized ionization-instant grid spanning one envelope
/// (+-1.5 FWHM) at the configured samples per cycle.
struct TimeGrid {
    std::vector<double> t_fs;
    std::vector<double> envelope_sq; // intensity envelope g(t)^2
    double dt_fs = 0.0;
};

TimeGrid make_time_grid(const PulseParams& pulse, int samples_per_cycle);

/// Full outcome of one shot: sampled intensities, per-mode electron
/// emission, and streaked energies.  All randomness comes from the
/// per-shot counter stream (seed, shot_index).
ShotOutcome spectrum_shot(const SimConfig& cfg, const TimeGrid& grid,
                          std::uint64_t shot_index);

/// Electron-number histogram over shots (unit-width bins 0..count_max).
/// The per-shot count is Poisson with mean prefactor * adk_rate(total
/// sampled intensity), matching the rate convolved over the source's
/// total-intensity law.
Histogram simulate_counts(const SimConfig& cfg);

/// Kinetic-energy histogram over all emitted electrons.  Emission is
/// resolved per mode: electron numbers are Poisson in the per-mode rate and
/// ionization instants are drawn from the instantaneous-rate weight table.
Histogram simulate_spectrum(const SimConfig& cfg);

/// Spectra at a sequence of target g2 values, holding nbar fixed and
/// adjusting the effective mode count per value.
std::vector<std::pair<double, Histogram>>
g2_scan(const SimConfig& cfg, const std::vector<double>& g2_values);

/// Mean of a count histogram (bin centers interpreted as integer counts).
double histogram_mean(const Histogram& hist);

} // namespace sfmc
