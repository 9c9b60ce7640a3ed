#pragma once

#include <array>

#include "sfmc/constants.hpp"

namespace sfmc {

using Vec2 = std::array<double, 2>;

/// Elliptically polarized Gaussian pulse.  peak_field is the field amplitude
/// in a.u. at unit intensity scale; a per-shot intensity multiplies the
/// squared field linearly.
struct PulseParams {
    double wavelength_nm = 1580.0;
    double fwhm_fs = 70.0;       // intensity-envelope FWHM
    double ellipticity = 0.8;    // in (0, 1]
    double peak_field = 0.0173;  // a.u. per sqrt(photon)

    double omega_au() const {
        return constants::omega_au_nm / wavelength_nm;
    }
    double cycle_fs() const {
        return wavelength_nm / constants::c_nm_per_fs;
    }
    void validate() const;
};

/// Ionization target: potential in eV, tunneling coupling strength in the
/// sqrt-photon-number normalization, and a rate prefactor in electrons per
/// shot.
struct AtomTarget {
    double ip_ev = 5.14;
    double alpha = 13.4;
    double prefactor = 0.01;

    void validate() const;
};

/// Final state of one streaked photoelectron.
struct StreakSample {
    double t0_fs = 0.0;       // ionization instant relative to envelope peak
    Vec2 momentum{0.0, 0.0};  // a.u., polarization plane
    double kinetic_energy_ev = 0.0;
};

struct FieldPoint {
    Vec2 e_field{0.0, 0.0};        // a.u.
    Vec2 vector_potential{0.0, 0.0};
    double e_magnitude = 0.0;
};

/// Relative tunneling rate exp(-2 alpha / (3 sqrt(n))) in [0, 1].
double adk_rate(double n, double alpha);

/// Field and vector potential at time t (fs from the envelope peak) under
/// the slowly-varying-envelope approximation.
FieldPoint field_and_potential(double t_fs, double cep, double intensity_scale,
                               const PulseParams& pulse);

/// Map an ionization instant to the final photoelectron momentum
/// p = -A(t0); Coulomb attraction after tunneling is neglected.
StreakSample streak(double t0_fs, double cep, double intensity_scale,
                    const PulseParams& pulse);

/// Coupling strength from the ionization potential and the field produced
/// per sqrt(photon): alpha = (2 Ip[a.u.])^(3/2) / kappa.
double alpha_from_ip(double ip_ev, double field_per_sqrt_photon);

} // namespace sfmc
