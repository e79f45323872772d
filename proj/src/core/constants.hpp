#pragma once

// Physical constants and unit conversions, CODATA 2018. Pinned here as the
// single source of truth; the CLI `constants` subcommand dumps this table.

namespace tcq::constants {

inline constexpr const char* version = "CODATA-2018";

inline constexpr double hartree_to_ev = 27.211386245988;
inline constexpr double angstrom_to_bohr = 1.8897259886;
inline constexpr double hartree_to_joule = 4.3597447222071e-18;
inline constexpr double amu_to_kg = 1.66053906660e-27;
inline constexpr double speed_of_light_cm_s = 2.99792458e10;
inline constexpr double invcm_to_ev = 1.2398419843320026e-4;

// Atomic masses (amu): relative isotopic masses of 1H and 7Li.
inline constexpr double mass_h1 = 1.00782503207;
inline constexpr double mass_li7 = 7.016003437;

inline constexpr double pi = 3.14159265358979323846;

}  // namespace tcq::constants
