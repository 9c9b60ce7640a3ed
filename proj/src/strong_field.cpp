#include "sfmc/strong_field.hpp"

#include <cmath>

#include "sfmc/errors.hpp"

namespace sfmc {

void PulseParams::validate() const {
    if (!(wavelength_nm > 0.0))
        throw_invalid("wavelength_nm must be > 0");
    if (!(fwhm_fs > 0.0))
        throw_invalid("fwhm_fs must be > 0");
    if (!(ellipticity > 0.0) || ellipticity > 1.0)
        throw_invalid("ellipticity must be in (0, 1]");
    if (!(peak_field > 0.0))
        throw_invalid("peak_field must be > 0");
}

void AtomTarget::validate() const {
    if (!(ip_ev > 0.0))
        throw_invalid("ip_ev must be > 0");
    if (!(alpha >= 0.0))
        throw_invalid("alpha must be >= 0");
    if (!(prefactor > 0.0))
        throw_invalid("prefactor must be > 0");
}

double adk_rate(double n, double alpha) {
    if (n < 0.0 || alpha < 0.0)
        throw_invalid("adk_rate requires n >= 0 and alpha >= 0");
    if (alpha == 0.0)
        return 1.0;
    if (n == 0.0)
        return 0.0;
    return std::exp(-2.0 * alpha / (3.0 * std::sqrt(n)));
}

FieldPoint field_and_potential(double t_fs, double cep, double intensity_scale,
                               const PulseParams& pulse) {
    pulse.validate();
    if (intensity_scale < 0.0)
        throw_invalid("intensity_scale must be >= 0");
    const double eps = pulse.ellipticity;
    const double omega = pulse.omega_au();
    const double envelope =
        std::exp(-2.0 * std::log(2.0) * t_fs * t_fs /
                 (pulse.fwhm_fs * pulse.fwhm_fs));
    const double amp = std::sqrt(intensity_scale) * pulse.peak_field *
                       envelope / std::sqrt(1.0 + eps * eps);
    const double phase = omega * t_fs / constants::au_time_fs + cep;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    FieldPoint out;
    out.e_field = {amp * c, amp * eps * s};
    out.vector_potential = {-amp / omega * s, amp / omega * eps * c};
    out.e_magnitude = amp * std::sqrt(c * c + eps * eps * s * s);
    return out;
}

StreakSample streak(double t0_fs, double cep, double intensity_scale,
                    const PulseParams& pulse) {
    const FieldPoint fp =
        field_and_potential(t0_fs, cep, intensity_scale, pulse);
    StreakSample out;
    out.t0_fs = t0_fs;
    out.momentum = {-fp.vector_potential[0], -fp.vector_potential[1]};
    const double p2 = out.momentum[0] * out.momentum[0] +
                      out.momentum[1] * out.momentum[1];
    out.kinetic_energy_ev = 0.5 * p2 * constants::hartree_ev;
    return out;
}

double alpha_from_ip(double ip_ev, double field_per_sqrt_photon) {
    if (!(ip_ev > 0.0) || !(field_per_sqrt_photon > 0.0))
        throw_invalid("alpha_from_ip requires positive inputs");
    const double ip_au = ip_ev / constants::hartree_ev;
    return std::pow(2.0 * ip_au, 1.5) / field_per_sqrt_photon;
}

} // namespace sfmc
