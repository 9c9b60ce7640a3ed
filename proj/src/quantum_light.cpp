#include "sfmc/quantum_light.hpp"

#include <cmath>
#include <limits>

#include "sfmc/errors.hpp"

namespace sfmc {

namespace {

bool near_integer(double x, double& rounded) {
    rounded = std::round(x);
    return rounded >= 1.0 && std::fabs(x - rounded) < 1e-9;
}

} // namespace

void SqueezedModeSet::validate() const {
    if (squeeze_params.empty())
        throw_invalid("SqueezedModeSet requires at least one mode");
    for (double r : squeeze_params)
        if (!(r >= 0.0))
            throw_invalid("squeeze parameters must be >= 0");
}

void validate(const LightSource& source) {
    if (const auto* c = std::get_if<Coherent>(&source)) {
        if (!(c->intensity > 0.0))
            throw_invalid("coherent intensity must be > 0");
    } else {
        const auto& b = std::get<Bsv>(source);
        if (!(b.nbar > 0.0))
            throw_invalid("nbar must be > 0");
        if (!(b.modes > 0.0))
            throw_invalid("modes must be > 0");
    }
}

MomentPair squeezed_mode_moments(const SqueezedModeSet& modes) {
    modes.validate();
    double mean = 0.0;
    double excess = 0.0;
    for (double r : modes.squeeze_params) {
        const double s = std::sinh(r) * std::sinh(r);
        mean += s;
        excess += 2.0 * s * s + 2.0 * s;
    }
    return {mean, excess + mean * mean};
}

double g2_from_moments(const MomentPair& m) {
    if (!(m.mean > 0.0))
        throw_invalid("g2 requires a positive mean photon number");
    return (m.second_moment - m.mean) / (m.mean * m.mean);
}

double g2_equal_modes(double nbar, double modes) {
    if (!(nbar > 0.0) || !(modes > 0.0))
        throw_invalid("g2_equal_modes requires nbar > 0 and modes > 0");
    return 1.0 + 2.0 / modes + 1.0 / nbar;
}

double per_mode_mean(double nbar, double modes) {
    if (!(nbar > 0.0) || !(modes > 0.0))
        throw_invalid("per_mode_mean requires nbar > 0 and modes > 0");
    return nbar / modes;
}

double g2_from_per_mode(double nk, double nbar, bool exact) {
    if (!(nk > 0.0) || !(nbar > 0.0))
        throw_invalid("g2_from_per_mode requires positive inputs");
    if (nk > nbar)
        throw_invalid("per-mode mean cannot exceed the total mean");
    if (exact)
        return 1.0 + (2.0 * nk + 1.0) / nbar;
    return 1.0 + 2.0 * nk / nbar;
}

double bsv_intensity_density(double n, double nbar, double modes) {
    if (n < 0.0)
        throw_invalid("intensity must be >= 0");
    if (!(nbar > 0.0) || !(modes > 0.0))
        throw_invalid("bsv_intensity_density requires nbar > 0 and modes > 0");
    const double shape = 0.5 * modes;
    const double rate = 0.5 * modes / nbar;
    if (n == 0.0) {
        if (shape > 1.0)
            return 0.0;
        if (shape == 1.0)
            return rate;
        return std::numeric_limits<double>::infinity();
    }
    return std::exp((shape - 1.0) * std::log(n) + shape * std::log(rate) -
                    rate * n - std::lgamma(shape));
}

double modes_for_target_g2(double g2, double nbar) {
    if (!(nbar > 0.0))
        throw_invalid("modes_for_target_g2 requires nbar > 0");
    const double floor = 1.0 + 1.0 / nbar;
    if (!(g2 > floor))
        throw Error(ErrorCategory::UnattainableStatistics,
                    "g2 = " + std::to_string(g2) +
                        " is not attainable: requires g2 > 1 + 1/nbar = " +
                        std::to_string(floor));
    return 2.0 / (g2 - floor);
}

IntensitySample sample_intensities(const LightSource& source, CounterRng& rng) {
    validate(source);
    IntensitySample out;
    if (const auto* c = std::get_if<Coherent>(&source)) {
        out.per_mode = {c->intensity};
        out.total = c->intensity;
        return out;
    }
    const auto& b = std::get<Bsv>(source);
    // Snapped mode count keeps scan-derived counts like 5+1e-13 on the
    // same draw sequence as an explicit N=5 source.
    double n_int;
    const double modes = near_integer(b.modes, n_int) ? n_int : b.modes;
    const double scale = 2.0 * b.nbar / modes;
    const int full = static_cast<int>(modes);
    const double frac = modes - full;
    out.per_mode.reserve(full + 1);
    for (int k = 0; k < full; ++k) {
        const double nk = scale * rng.gamma(0.5);
        out.per_mode.push_back(nk);
        out.total += nk;
    }
    // Fractional remainder mode: shape frac/2 at the same scale, so the
    // total stays gamma(modes/2, scale).
    if (frac > 0.0) {
        const double nk = scale * rng.gamma(0.5 * frac);
        out.per_mode.push_back(nk);
        out.total += nk;
    }
    return out;
}

} // namespace sfmc
