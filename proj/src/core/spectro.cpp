#include "core/spectro.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/constants.hpp"

namespace tcq {

curvature_site curvature_site_from_string(const std::string& s) {
  if (s == "fit-min") return curvature_site::fit_min;
  if (s == "grid-min") return curvature_site::grid_min;
  throw std::invalid_argument("unknown curvature site: " + s);
}

double reduced_mass_amu(double m1, double m2) {
  if (m1 <= 0.0 || m2 <= 0.0) throw std::invalid_argument("masses must be positive");
  return m1 * m2 / (m1 + m2);
}

double harmonic_wavenumber_cm1(double k_hartree_ang2, double mu_amu) {
  if (k_hartree_ang2 < 0.0)
    throw std::runtime_error("negative curvature at the potential minimum");
  const double k_si = k_hartree_ang2 * constants::hartree_to_joule / 1e-20;
  const double mu_si = mu_amu * constants::amu_to_kg;
  return std::sqrt(k_si / mu_si) / (2.0 * constants::pi * constants::speed_of_light_cm_s);
}

namespace {

// Real roots of c0 + c1 x + c2 x^2 + c3 x^3 via the companion matrix.
std::vector<double> real_cubic_roots(double c0, double c1, double c2, double c3) {
  std::vector<double> out;
  if (std::abs(c3) < 1e-300) throw std::runtime_error("degenerate quartic fit");
  Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  comp(0, 2) = -c0 / c3;
  comp(1, 2) = -c1 / c3;
  comp(2, 2) = -c2 / c3;
  Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
  for (int i = 0; i < 3; ++i) {
    const std::complex<double> r = es.eigenvalues()(i);
    if (std::abs(r.imag()) <= 1e-10) out.push_back(r.real());
  }
  return out;
}

}  // namespace

spectroscopy_result analyze_curve(std::vector<pec_point> points,
                                  const spectroscopy_options& opt) {
  std::sort(points.begin(), points.end(),
            [](const pec_point& a, const pec_point& b) { return a.r < b.r; });
  const int n = static_cast<int>(points.size());
  if (n == 0) throw std::invalid_argument("empty potential curve");
  int im = 0;
  for (int i = 1; i < n; ++i)
    if (points[static_cast<std::size_t>(i)].energy <
        points[static_cast<std::size_t>(im)].energy)
      im = i;
  if (im == 0 || im == n - 1) throw std::runtime_error("minimum at grid boundary");
  if (opt.window < 5)
    throw std::invalid_argument("fit window must cover at least 5 points");
  if (n < opt.window)
    throw std::invalid_argument("fit window exceeds the number of scan points");

  const int half = opt.window / 2;
  const int lo = std::max(0, std::min(im - half, n - opt.window));
  const double r0 = points[static_cast<std::size_t>(im)].r;
  Eigen::MatrixXd v(opt.window, 5);
  Eigen::VectorXd y(opt.window);
  for (int i = 0; i < opt.window; ++i) {
    const double x = points[static_cast<std::size_t>(lo + i)].r - r0;
    double pw = 1.0;
    for (int j = 0; j < 5; ++j) {
      v(i, j) = pw;
      pw *= x;
    }
    y(i) = points[static_cast<std::size_t>(lo + i)].energy;
  }
  const Eigen::VectorXd c = v.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
  const auto poly = [&](double x) {
    return c(0) + x * (c(1) + x * (c(2) + x * (c(3) + x * c(4))));
  };
  const auto curv = [&](double x) {
    return 2.0 * c(2) + 6.0 * c(3) * x + 12.0 * c(4) * x * x;
  };

  const double xlo = points[static_cast<std::size_t>(lo)].r - r0;
  const double xhi = points[static_cast<std::size_t>(lo + opt.window - 1)].r - r0;
  bool found = false;
  double best_x = 0.0, best_e = 0.0, best_k = 0.0;
  for (double x : real_cubic_roots(c(1), 2.0 * c(2), 3.0 * c(3), 4.0 * c(4))) {
    if (x < xlo - 1e-9 || x > xhi + 1e-9) continue;
    const double k = curv(x);
    if (k <= 0.0) continue;
    const double e = poly(x);
    if (!found || e < best_e) {
      found = true;
      best_x = x;
      best_e = e;
      best_k = k;
    }
  }
  if (!found) throw std::runtime_error("no interior minimum in the fit window");

  spectroscopy_result out;
  out.r_e = r0 + best_x;
  out.e_min = best_e;
  out.k_fit_min = best_k;
  out.k_grid_min = 2.0 * c(2);
  out.k = opt.curvature_at == curvature_site::fit_min ? out.k_fit_min : out.k_grid_min;
  const double mu = reduced_mass_amu(opt.mass1_amu, opt.mass2_amu);
  out.omega_fit_min = harmonic_wavenumber_cm1(out.k_fit_min, mu);
  out.omega_grid_min = harmonic_wavenumber_cm1(out.k_grid_min, mu);
  out.omega_cm1 = opt.curvature_at == curvature_site::fit_min ? out.omega_fit_min
                                                              : out.omega_grid_min;
  for (int i = 0; i < opt.window; ++i) {
    const double x = points[static_cast<std::size_t>(lo + i)].r - r0;
    out.fit_residual = std::max(out.fit_residual, std::abs(poly(x) - y(i)));
  }

  double e_ref;
  if (opt.reference_energy) {
    e_ref = *opt.reference_energy;
  } else {
    if (points[static_cast<std::size_t>(n - 1)].r < 8.0)
      throw std::runtime_error(
          "scan does not reach the dissociation plateau; supply a reference energy");
    if (std::abs(points[static_cast<std::size_t>(n - 1)].energy -
                 points[static_cast<std::size_t>(n - 2)].energy) >= 1e-5)
      throw std::runtime_error(
          "tail energies have not plateaued; supply a reference energy");
    e_ref = points[static_cast<std::size_t>(n - 1)].energy;
  }
  out.d_e_ev = (e_ref - out.e_min) * constants::hartree_to_ev;
  out.zpe_ev = 0.5 * out.omega_cm1 * constants::invcm_to_ev;
  out.d0_ev = out.d_e_ev - out.zpe_ev;
  return out;
}

}  // namespace tcq
