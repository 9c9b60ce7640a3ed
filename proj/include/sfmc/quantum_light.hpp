#pragma once

#include <variant>
#include <vector>

#include "sfmc/rng.hpp"

namespace sfmc {

/// Set of independently squeezed vacuum modes.  Phases are carried for
/// completeness but photon-number statistics depend on the magnitudes only.
struct SqueezedModeSet {
    std::vector<double> squeeze_params; // r_k >= 0
    std::vector<double> phases;         // theta_k, radians; unused by moments

    void validate() const;
};

/// Classical coherent drive with a fixed per-shot intensity (mean photons).
struct Coherent {
    double intensity = 1.0;
};

/// Multi-mode bright squeezed vacuum drive: total mean photon number split
/// over an effective (real-valued) number of equally squeezed modes.
struct Bsv {
    double nbar = 1.0;
    double modes = 1.0;
};

using LightSource = std::variant<Coherent, Bsv>;

void validate(const LightSource& source);

/// First and second moments of the total photon number.
struct MomentPair {
    double mean = 0.0;
    double second_moment = 0.0;
};

/// Exact photon-number moments of a set of squeezed modes.
MomentPair squeezed_mode_moments(const SqueezedModeSet& modes);

/// Normally ordered zero-delay second-order correlation,
/// (<n^2> - <n>) / <n>^2.
double g2_from_moments(const MomentPair& m);

/// g2 of N equally squeezed modes at total mean nbar: 1 + 2/N + 1/nbar.
double g2_equal_modes(double nbar, double modes);

/// Mean photon number per mode for equal squeezing: nbar / N.
double per_mode_mean(double nbar, double modes);

/// g2 expressed through the per-mode mean nk.  The exact form is
/// 1 + (2 nk + 1)/nbar; with exact=false the bright-limit 1 + 2 nk/nbar.
double g2_from_per_mode(double nk, double nbar, bool exact = true);

/// Probability density of the total intensity of N-mode squeezed vacuum at
/// total mean nbar: gamma with shape N/2 and scale 2 nbar / N.
double bsv_intensity_density(double n, double nbar, double modes);

/// Effective mode count reproducing a target g2 at fixed nbar; inverse of
/// g2_equal_modes.  Throws UnattainableStatistics for g2 <= 1 + 1/nbar.
double modes_for_target_g2(double g2, double nbar);

struct IntensitySample {
    std::vector<double> per_mode;
    double total = 0.0;
};

/// Draw one shot's intensity.  Coherent sources are deterministic.  BSV with
/// an (effectively) integer mode count draws each mode from
/// gamma(1/2, 2 nbar/N); non-integer mode counts draw the total directly and
/// attribute it to a single effective mode.
IntensitySample sample_intensities(const LightSource& source, CounterRng& rng);

} // namespace sfmc
