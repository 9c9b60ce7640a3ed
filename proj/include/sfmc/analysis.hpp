#pragma once

#include <cstdint>
#include <vector>

#include "sfmc/histogram.hpp"
#include "sfmc/montecarlo.hpp"
#include "sfmc/quantum_light.hpp"
#include "sfmc/strong_field.hpp"

namespace sfmc {

/// One point of a g2 scan: extracted spectral peak and the effective
/// intensity inferred from it.
struct ScanPoint {
    double g2 = 0.0;
    double peak_energy_ev = 0.0;
    double i_eff = 0.0;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Center of the maximal bin after a moving-average smooth; ties break
/// toward lower energy.
double find_peak(const Histogram& hist, int smooth_window = 5);

/// Deterministic (noiseless) energy spectrum of a single fixed intensity:
/// rate-weighted enumeration of the ionization-instant grid and carrier
/// phase, no sampling.
struct WeightedSpectrum {
    double min_ev = 0.0;
    double max_ev = 0.0;
    std::vector<double> weights;

    double bin_center(int i) const {
        return min_ev + (i + 0.5) * (max_ev - min_ev) / weights.size();
    }
};

WeightedSpectrum noiseless_spectrum(double intensity_scale,
                                    const PulseParams& pulse,
                                    const AtomTarget& atom,
                                    const EnergyBins& bins,
                                    int samples_per_cycle = 64,
                                    int phase_samples = 64);

double find_peak(const WeightedSpectrum& spec, int smooth_window = 5);

/// Monotone peak-energy -> intensity lookup for elliptical pulses, built
/// from noiseless spectra on a grid of intensity scales.
class IntensityCalibration {
  public:
    IntensityCalibration(std::vector<double> scales, std::vector<double> peaks);

    double invert(double peak_energy_ev) const;

  private:
    std::vector<double> scales_;
    std::vector<double> peaks_;
};

IntensityCalibration
build_intensity_calibration(const PulseParams& pulse, const AtomTarget& atom,
                            double scale_min, double scale_max, int points,
                            const EnergyBins& bins, int samples_per_cycle = 64);

/// Closed-form inversion for circular polarization:
/// scale = 4 omega^2 E_peak / E0^2.  Elliptical pulses need the lookup.
double peak_to_intensity(double peak_energy_ev, const PulseParams& pulse);

/// Ordinary least squares with r^2; r^2 = 1 when the data are exactly
/// constant (SS_tot = SS_res = 0).
LinearFit fit_linear(const std::vector<std::pair<double, double>>& points);

/// Moment estimator of g2 from electron counts: <k(k-1)> / <k>^2.
double sample_g2(const std::vector<std::uint64_t>& counts);
double sample_g2(const Histogram& count_hist);

/// Sample variance over sample mean.
double fano_factor(const std::vector<std::uint64_t>& counts);
double fano_factor(const Histogram& count_hist);

/// Delta-method standard error of the Fano factor estimate.
double fano_factor_se(const Histogram& count_hist);

/// Electron-count pmf P(0..k_max) by adaptive quadrature of the Poisson
/// rate over the source's total-intensity law (point mass for coherent).
std::vector<double> count_pmf_oracle(const LightSource& source,
                                     const AtomTarget& atom, int k_max);

/// Mean electron count c * E[adk_rate(n)] by direct quadrature; an
/// independent cross-check of the pmf oracle's first moment.
double count_mean_oracle(const LightSource& source, const AtomTarget& atom);

/// Peaks and effective intensities for a completed g2 scan.  Uses the
/// closed-form inversion for circular pulses and a calibration lookup
/// otherwise.
std::vector<ScanPoint>
scan_points(const std::vector<std::pair<double, Histogram>>& scan,
            const SimConfig& cfg, int smooth_window = 5);

} // namespace sfmc
