#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tcq {

struct pec_point {
  double r = 0.0;       // bond length, angstrom
  double energy = 0.0;  // hartree
};

enum class curvature_site { fit_min, grid_min };

curvature_site curvature_site_from_string(const std::string& s);

struct spectroscopy_options {
  int window = 7;
  curvature_site curvature_at = curvature_site::fit_min;
  // When absent the dissociation limit is the energy at the largest R, which
  // must sit on a plateau (R >= 8 and the last two energies within 1e-5).
  std::optional<double> reference_energy;
  double mass1_amu = 0.0;
  double mass2_amu = 0.0;
};

struct spectroscopy_result {
  double r_e = 0.0;          // angstrom
  double e_min = 0.0;        // hartree
  double k = 0.0;            // chosen curvature, hartree / angstrom^2
  double k_fit_min = 0.0;
  double k_grid_min = 0.0;
  double omega_cm1 = 0.0;    // from the chosen curvature
  double omega_fit_min = 0.0;
  double omega_grid_min = 0.0;
  double d_e_ev = 0.0;
  double d0_ev = 0.0;
  double zpe_ev = 0.0;
  double fit_residual = 0.0;  // max |fit - data| over the window, hartree
};

double reduced_mass_amu(double m1, double m2);
double harmonic_wavenumber_cm1(double k_hartree_ang2, double mu_amu);

// Quartic least-squares fit over a window centered on the grid minimum
// (clamped at the edges), expanded around the grid-minimum abscissa.
spectroscopy_result analyze_curve(std::vector<pec_point> points,
                                  const spectroscopy_options& opt);

}  // namespace tcq
