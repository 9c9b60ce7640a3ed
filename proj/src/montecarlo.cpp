#include "sfmc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sfmc/errors.hpp"

namespace sfmc {

void SimConfig::validate() const {
    sfmc::validate(source);
    pulse.validate();
    atom.validate();
    if (shots == 0)
        throw_invalid("shots must be > 0");
    if (energy.bins <= 0)
        throw_invalid("energy bin count must be > 0");
    if (!(energy.max_ev > energy.min_ev) || energy.min_ev < 0.0)
        throw_invalid("energy range must satisfy max > min >= 0");
    if (time_grid < 8)
        throw_invalid("time_grid must be >= 8 samples per cycle");
    if (workers < 1)
        throw_invalid("workers must be >= 1");
    if (!(importance_boost > 0.0))
        throw_invalid("importance_boost must be > 0");
    if (count_max < 1)
        throw_invalid("count_max must be >= 1");
}

TimeGrid make_time_grid(const PulseParams& pulse, int samples_per_cycle) {
    pulse.validate();
    if (samples_per_cycle < 8)
        throw_invalid("time_grid must be >= 8 samples per cycle");
    const double half_span = 1.5 * pulse.fwhm_fs;
    const double dt = pulse.cycle_fs() / samples_per_cycle;
    const int n = std::max(2, static_cast<int>(std::ceil(2.0 * half_span / dt)));
    TimeGrid grid;
    grid.dt_fs = dt;
    grid.t_fs.resize(n);
    grid.envelope_sq.resize(n);
    const double ln2 = std::log(2.0);
    for (int i = 0; i < n; ++i) {
        const double t = -half_span + (i + 0.5) * dt;
        grid.t_fs[i] = t;
        grid.envelope_sq[i] =
            std::exp(-4.0 * ln2 * t * t / (pulse.fwhm_fs * pulse.fwhm_fs));
    }
    return grid;
}

namespace {

// Instantaneous intensity in photon-number units, normalized so the
// envelope peak of a circularly polarized pulse at per-mode intensity nk
// gives back nk.
double instantaneous_intensity(double nk, double env_sq, double cos_phase,
                               double eps) {
    const double mod =
        eps * eps + (1.0 - eps * eps) * cos_phase * cos_phase;
    return nk * env_sq * 2.0 * mod / (1.0 + eps * eps);
}

void emit_mode(const SimConfig& cfg, const TimeGrid& grid, CounterRng& rng,
               double nk, double cep, std::uint64_t n_electrons,
               std::vector<double>& energies) {
    const double eps = cfg.pulse.ellipticity;
    const double omega = cfg.pulse.omega_au();
    const double beta = 2.0 * cfg.atom.alpha / 3.0;
    const std::size_t n = grid.t_fs.size();

    // Cumulative instantaneous-rate table for this (intensity, cep).
    std::vector<double> cdf(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double phase =
            omega * grid.t_fs[i] / constants::au_time_fs + cep;
        const double ninst = instantaneous_intensity(
            nk, grid.envelope_sq[i], std::cos(phase), eps);
        if (ninst > 0.0)
            acc += std::exp(-beta / std::sqrt(ninst));
        cdf[i] = acc;
    }
    if (acc <= 0.0)
        return; // zero field: the shot contributes nothing

    for (std::uint64_t e = 0; e < n_electrons; ++e) {
        const double u = rng.uniform() * acc;
        const std::size_t idx = static_cast<std::size_t>(
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        const double t0 = grid.t_fs[std::min(idx, n - 1)] +
                          (rng.uniform() - 0.5) * grid.dt_fs;
        energies.push_back(
            streak(t0, cep, nk, cfg.pulse).kinetic_energy_ev);
    }
}

using ShotFn = void (*)(const SimConfig&, const TimeGrid&, std::uint64_t,
                        Histogram&);

void count_shot(const SimConfig& cfg, const TimeGrid&, std::uint64_t shot,
                Histogram& hist) {
    CounterRng rng(cfg.seed, shot);
    const IntensitySample s = sample_intensities(cfg.source, rng);
    const double mu =
        cfg.effective_prefactor() * adk_rate(s.total, cfg.atom.alpha);
    hist.add(static_cast<double>(rng.poisson(mu)));
}

void energy_shot(const SimConfig& cfg, const TimeGrid& grid,
                 std::uint64_t shot, Histogram& hist) {
    const ShotOutcome outcome = spectrum_shot(cfg, grid, shot);
    for (double e : outcome.energies_ev)
        hist.add(e);
}

Histogram run_shots(const SimConfig& cfg, const Histogram& proto,
                    const TimeGrid& grid, ShotFn fn) {
    const int workers = cfg.workers;
    if (workers == 1 || cfg.shots < 2) {
        Histogram hist = proto;
        for (std::uint64_t shot = 0; shot < cfg.shots; ++shot)
            fn(cfg, grid, shot, hist);
        return hist;
    }
    std::vector<Histogram> partial(workers, proto);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t chunk = (cfg.shots + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, cfg.shots);
        const std::uint64_t end = std::min(begin + chunk, cfg.shots);
        threads.emplace_back([&, w, begin, end] {
            for (std::uint64_t shot = begin; shot < end; ++shot)
                fn(cfg, grid, shot, partial[w]);
        });
    }
    for (auto& t : threads)
        t.join();
    Histogram hist = partial[0];
    for (int w = 1; w < workers; ++w)
        hist = merge(hist, partial[w]);
    return hist;
}

} // namespace

ShotOutcome spectrum_shot(const SimConfig& cfg, const TimeGrid& grid,
                          std::uint64_t shot_index) {
    CounterRng rng(cfg.seed, shot_index);
    const IntensitySample s = sample_intensities(cfg.source, rng);
    const double cep = 2.0 * constants::pi * rng.uniform();
    ShotOutcome outcome;
    for (double nk : s.per_mode) {
        const double mu =
            cfg.effective_prefactor() * adk_rate(nk, cfg.atom.alpha);
        const std::uint64_t m = rng.poisson(mu);
        if (m == 0)
            continue;
        emit_mode(cfg, grid, rng, nk, cep, m, outcome.energies_ev);
    }
    outcome.electron_count = outcome.energies_ev.size();
    return outcome;
}

Histogram simulate_counts(const SimConfig& cfg) {
    cfg.validate();
    Histogram proto(-0.5, cfg.count_max + 0.5, cfg.count_max + 1);
    TimeGrid unused; // counts never consult the time grid
    return run_shots(cfg, proto, unused, &count_shot);
}

Histogram simulate_spectrum(const SimConfig& cfg) {
    cfg.validate();
    Histogram proto(cfg.energy.min_ev, cfg.energy.max_ev, cfg.energy.bins);
    const TimeGrid grid = make_time_grid(cfg.pulse, cfg.time_grid);
    return run_shots(cfg, proto, grid, &energy_shot);
}

std::vector<std::pair<double, Histogram>>
g2_scan(const SimConfig& cfg, const std::vector<double>& g2_values) {
    cfg.validate();
    const auto* bsv = std::get_if<Bsv>(&cfg.source);
    if (!bsv)
        throw_invalid("g2_scan requires a BSV source (fixed nbar)");
    std::vector<std::pair<double, Histogram>> out;
    out.reserve(g2_values.size());
    for (double g2 : g2_values) {
        SimConfig point = cfg;
        point.source = Bsv{bsv->nbar, modes_for_target_g2(g2, bsv->nbar)};
        out.emplace_back(g2, simulate_spectrum(point));
    }
    return out;
}

double histogram_mean(const Histogram& hist) {
    if (hist.empty())
        throw Error(ErrorCategory::UndefinedStatistic,
                    "mean of an empty histogram");
    double acc = 0.0;
    for (int i = 0; i < hist.bins(); ++i)
        acc += hist.counts()[i] * hist.bin_center(i);
    return acc / static_cast<double>(hist.total());
}

} // namespace sfmc
