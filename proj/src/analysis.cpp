#include "sfmc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "sfmc/errors.hpp"
#include "sfmc/special.hpp"

namespace sfmc {

namespace {

// Zero-padded moving-average smooth, then argmax.  Ties in the smoothed
// value fall back to the raw value, then to the lower index, so an isolated
// spike keeps its own bin and genuinely flat maxima resolve toward lower
// energy.
template <typename T>
int smoothed_argmax(const std::vector<T>& values, int window) {
    if (window < 1 || window % 2 == 0)
        throw_invalid("smooth_window must be odd and >= 1");
    const int n = static_cast<int>(values.size());
    const int half = window / 2;
    int best = 0;
    double best_smooth = -1.0;
    double best_raw = -1.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = std::max(0, i - half); j <= std::min(n - 1, i + half); ++j)
            acc += static_cast<double>(values[j]);
        acc /= window;
        const double raw = static_cast<double>(values[i]);
        if (acc > best_smooth ||
            (acc == best_smooth && raw > best_raw)) {
            best_smooth = acc;
            best_raw = raw;
            best = i;
        }
    }
    return best;
}

struct CountMoments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0; // raw second moment
    double var = 0.0; // unbiased
    double mu2 = 0.0, mu3 = 0.0, mu4 = 0.0; // central, population
};

CountMoments moments_from_hist(const Histogram& hist) {
    if (hist.empty())
        throw Error(ErrorCategory::UndefinedStatistic,
                    "statistic of an empty count histogram");
    CountMoments m;
    m.n = static_cast<double>(hist.total());
    for (int i = 0; i < hist.bins(); ++i) {
        const double k = hist.bin_center(i);
        const double c = static_cast<double>(hist.counts()[i]);
        m.mean += c * k;
        m.m2 += c * k * k;
    }
    m.mean /= m.n;
    m.m2 /= m.n;
    for (int i = 0; i < hist.bins(); ++i) {
        const double d = hist.bin_center(i) - m.mean;
        const double c = static_cast<double>(hist.counts()[i]);
        m.mu2 += c * d * d;
        m.mu3 += c * d * d * d;
        m.mu4 += c * d * d * d * d;
    }
    m.mu2 /= m.n;
    m.mu3 /= m.n;
    m.mu4 /= m.n;
    m.var = m.n > 1.0 ? m.mu2 * m.n / (m.n - 1.0) : 0.0;
    return m;
}

} // namespace

double find_peak(const Histogram& hist, int smooth_window) {
    if (hist.empty())
        throw Error(ErrorCategory::NoPeak, "empty histogram has no peak");
    return hist.bin_center(smoothed_argmax(hist.counts(), smooth_window));
}

double find_peak(const WeightedSpectrum& spec, int smooth_window) {
    double total = 0.0;
    for (double w : spec.weights)
        total += w;
    if (!(total > 0.0))
        throw Error(ErrorCategory::NoPeak, "empty spectrum has no peak");
    return spec.bin_center(smoothed_argmax(spec.weights, smooth_window));
}

WeightedSpectrum noiseless_spectrum(double intensity_scale,
                                    const PulseParams& pulse,
                                    const AtomTarget& atom,
                                    const EnergyBins& bins,
                                    int samples_per_cycle,
                                    int phase_samples) {
    pulse.validate();
    atom.validate();
    if (intensity_scale < 0.0)
        throw_invalid("intensity_scale must be >= 0");
    const TimeGrid grid = make_time_grid(pulse, samples_per_cycle);
    WeightedSpectrum spec;
    spec.min_ev = bins.min_ev;
    spec.max_ev = bins.max_ev;
    spec.weights.assign(bins.bins, 0.0);

    const double eps = pulse.ellipticity;
    const double omega = pulse.omega_au();
    const double beta = 2.0 * atom.alpha / 3.0;
    const double a2_prefactor = intensity_scale * pulse.peak_field *
                                pulse.peak_field /
                                (omega * omega * (1.0 + eps * eps));
    const double bin_width = (bins.max_ev - bins.min_ev) / bins.bins;
    for (int j = 0; j < phase_samples; ++j) {
        const double phi = 2.0 * constants::pi * (j + 0.5) / phase_samples;
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        const double field_mod = eps * eps + (1.0 - eps * eps) * c * c;
        const double a_mod = s * s + eps * eps * c * c;
        for (std::size_t i = 0; i < grid.t_fs.size(); ++i) {
            const double ninst = intensity_scale * grid.envelope_sq[i] *
                                 2.0 * field_mod / (1.0 + eps * eps);
            if (!(ninst > 0.0))
                continue;
            const double w =
                atom.prefactor * std::exp(-beta / std::sqrt(ninst));
            const double ke_ev = 0.5 * a2_prefactor * grid.envelope_sq[i] *
                                 a_mod * constants::hartree_ev;
            const int bin =
                static_cast<int>((ke_ev - bins.min_ev) / bin_width);
            if (ke_ev >= bins.min_ev && bin >= 0 && bin < bins.bins)
                spec.weights[bin] += w;
        }
    }
    return spec;
}

IntensityCalibration::IntensityCalibration(std::vector<double> scales,
                                           std::vector<double> peaks)
    : scales_(std::move(scales)), peaks_(std::move(peaks)) {
    if (scales_.size() != peaks_.size() || scales_.size() < 2)
        throw_invalid("calibration needs >= 2 (scale, peak) pairs");
    for (std::size_t i = 1; i < peaks_.size(); ++i)
        if (peaks_[i] < peaks_[i - 1])
            throw Error(ErrorCategory::NumericFailure,
                        "calibration peaks are not monotone");
}

double IntensityCalibration::invert(double peak_energy_ev) const {
    if (peak_energy_ev < 0.0)
        throw_invalid("peak energy must be >= 0");
    if (peak_energy_ev == 0.0)
        return 0.0;
    if (peak_energy_ev > peaks_.back())
        throw Error(ErrorCategory::OutOfRange,
                    "peak energy above calibration range");
    // Below the first grid point, interpolate toward the origin.
    if (peak_energy_ev <= peaks_.front()) {
        return scales_.front() * peak_energy_ev / peaks_.front();
    }
    const auto it =
        std::lower_bound(peaks_.begin(), peaks_.end(), peak_energy_ev);
    const std::size_t hi = static_cast<std::size_t>(it - peaks_.begin());
    const std::size_t lo = hi - 1;
    const double span = peaks_[hi] - peaks_[lo];
    const double f = span > 0.0 ? (peak_energy_ev - peaks_[lo]) / span : 0.0;
    return scales_[lo] + f * (scales_[hi] - scales_[lo]);
}

IntensityCalibration
build_intensity_calibration(const PulseParams& pulse, const AtomTarget& atom,
                            double scale_min, double scale_max, int points,
                            const EnergyBins& bins, int samples_per_cycle) {
    if (!(scale_min > 0.0) || !(scale_max > scale_min) || points < 2)
        throw_invalid("calibration grid requires 0 < scale_min < scale_max "
                      "and >= 2 points");
    std::vector<double> scales(points), peaks(points);
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        scales[i] = scale_min * std::pow(scale_max / scale_min, f);
        peaks[i] = find_peak(noiseless_spectrum(scales[i], pulse, atom, bins,
                                                samples_per_cycle));
    }
    // Tiny non-monotone steps from binning are flattened.
    for (int i = 1; i < points; ++i)
        peaks[i] = std::max(peaks[i], peaks[i - 1]);
    return IntensityCalibration(std::move(scales), std::move(peaks));
}

double peak_to_intensity(double peak_energy_ev, const PulseParams& pulse) {
    pulse.validate();
    if (peak_energy_ev < 0.0)
        throw_invalid("peak energy must be >= 0");
    if (pulse.ellipticity != 1.0)
        throw_invalid("closed-form inversion requires circular polarization; "
                      "build an IntensityCalibration for elliptical pulses");
    const double omega = pulse.omega_au();
    const double e_au = peak_energy_ev / constants::hartree_ev;
    return 4.0 * omega * omega * e_au /
           (pulse.peak_field * pulse.peak_field);
}

LinearFit fit_linear(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw Error(ErrorCategory::DegenerateFit,
                    "linear fit needs >= 2 points");
    const double n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0)
        throw Error(ErrorCategory::DegenerateFit,
                    "all x values are identical");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - (fit.slope * x + fit.intercept);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

double sample_g2(const std::vector<std::uint64_t>& counts) {
    if (counts.empty())
        throw Error(ErrorCategory::UndefinedStatistic, "no counts");
    double m1 = 0.0, m2 = 0.0;
    for (std::uint64_t k : counts) {
        const double kd = static_cast<double>(k);
        m1 += kd;
        m2 += kd * kd;
    }
    m1 /= counts.size();
    m2 /= counts.size();
    if (!(m1 > 0.0))
        throw Error(ErrorCategory::UndefinedStatistic,
                    "g2 undefined for all-zero counts");
    return (m2 - m1) / (m1 * m1);
}

double sample_g2(const Histogram& count_hist) {
    const CountMoments m = moments_from_hist(count_hist);
    if (!(m.mean > 0.0))
        throw Error(ErrorCategory::UndefinedStatistic,
                    "g2 undefined for all-zero counts");
    return (m.m2 - m.mean) / (m.mean * m.mean);
}

double fano_factor(const std::vector<std::uint64_t>& counts) {
    if (counts.empty())
        throw Error(ErrorCategory::UndefinedStatistic, "no counts");
    double mean = 0.0;
    for (std::uint64_t k : counts)
        mean += static_cast<double>(k);
    mean /= counts.size();
    if (!(mean > 0.0))
        throw Error(ErrorCategory::UndefinedStatistic,
                    "Fano factor undefined for all-zero counts");
    double ss = 0.0;
    for (std::uint64_t k : counts) {
        const double d = static_cast<double>(k) - mean;
        ss += d * d;
    }
    const double var = counts.size() > 1 ? ss / (counts.size() - 1.0) : 0.0;
    return var / mean;
}

double fano_factor(const Histogram& count_hist) {
    const CountMoments m = moments_from_hist(count_hist);
    if (!(m.mean > 0.0))
        throw Error(ErrorCategory::UndefinedStatistic,
                    "Fano factor undefined for all-zero counts");
    return m.var / m.mean;
}

double fano_factor_se(const Histogram& count_hist) {
    const CountMoments m = moments_from_hist(count_hist);
    if (!(m.mean > 0.0))
        throw Error(ErrorCategory::UndefinedStatistic,
                    "Fano factor undefined for all-zero counts");
    // Delta method on F = s^2 / mean with Var(s^2) ~ (mu4 - mu2^2)/n,
    // Var(mean) = mu2/n, Cov(s^2, mean) = mu3/n.
    const double var_s2 = (m.mu4 - m.mu2 * m.mu2) / m.n;
    const double var_mean = m.mu2 / m.n;
    const double cov = m.mu3 / m.n;
    const double f = m.mu2 / m.mean;
    const double v = var_s2 / (m.mean * m.mean) +
                     f * f * var_mean / (m.mean * m.mean) -
                     2.0 * f * cov / (m.mean * m.mean);
    return std::sqrt(std::max(v, 0.0));
}

namespace {

constexpr double kOracleTol = 1e-8;

double poisson_mean_at(double n, const AtomTarget& atom) {
    return atom.prefactor * adk_rate(n, atom.alpha);
}

} // namespace

std::vector<double> count_pmf_oracle(const LightSource& source,
                                     const AtomTarget& atom, int k_max) {
    validate(source);
    atom.validate();
    if (k_max < 1)
        throw_invalid("k_max must be >= 1");
    std::vector<double> pmf(k_max + 1, 0.0);
    if (const auto* c = std::get_if<Coherent>(&source)) {
        const double mu = poisson_mean_at(c->intensity, atom);
        for (int k = 0; k <= k_max; ++k)
            pmf[k] = poisson_pmf(k, mu);
        return pmf;
    }
    const auto& b = std::get<Bsv>(source);
    for (int k = 0; k <= k_max; ++k) {
        auto integrand = [&](double n) {
            const double mu = poisson_mean_at(n, atom);
            return bsv_intensity_density(n, b.nbar, b.modes) *
                   poisson_pmf(k, mu);
        };
        pmf[k] = integrate_half_line(integrand, b.nbar, kOracleTol);
    }
    return pmf;
}

double count_mean_oracle(const LightSource& source, const AtomTarget& atom) {
    validate(source);
    atom.validate();
    if (const auto* c = std::get_if<Coherent>(&source))
        return poisson_mean_at(c->intensity, atom);
    const auto& b = std::get<Bsv>(source);
    auto integrand = [&](double n) {
        return bsv_intensity_density(n, b.nbar, b.modes) *
               poisson_mean_at(n, atom);
    };
    return integrate_half_line(integrand, b.nbar, kOracleTol);
}

std::vector<ScanPoint>
scan_points(const std::vector<std::pair<double, Histogram>>& scan,
            const SimConfig& cfg, int smooth_window) {
    std::vector<ScanPoint> out;
    out.reserve(scan.size());
    const bool circular = cfg.pulse.ellipticity == 1.0;
    std::unique_ptr<IntensityCalibration> cal;
    if (!circular && !scan.empty()) {
        const auto* bsv = std::get_if<Bsv>(&cfg.source);
        const double nbar = bsv ? bsv->nbar : 1.0;
        cal = std::make_unique<IntensityCalibration>(build_intensity_calibration(
            cfg.pulse, cfg.atom, 1e-3 * nbar, 4.0 * nbar, 40, cfg.energy,
            cfg.time_grid));
    }
    for (const auto& [g2, hist] : scan) {
        ScanPoint p;
        p.g2 = g2;
        p.peak_energy_ev = find_peak(hist, smooth_window);
        p.i_eff = circular ? peak_to_intensity(p.peak_energy_ev, cfg.pulse)
                           : cal->invert(p.peak_energy_ev);
        out.push_back(p);
    }
    return out;
}

} // namespace sfmc
