#pragma once

namespace sfmc::constants {

/// Hartree energy in electronvolts.
inline constexpr double hartree_ev = 27.2114;

/// One atomic unit of time in femtoseconds.
inline constexpr double au_time_fs = 0.02418884326585747;

/// Angular frequency in a.u. for a 1 nm wavelength: omega = this / lambda[nm].
inline constexpr double omega_au_nm = 45.5636;

/// Speed of light in nm/fs, used to convert wavelength to cycle period.
inline constexpr double c_nm_per_fs = 299.792458;

inline constexpr double pi = 3.14159265358979323846;

} // namespace sfmc::constants
