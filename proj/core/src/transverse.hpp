#pragma once

// Helpers shared by the statistics sources.

#include <vector>

#include "milneqed/r_distribution.hpp"
#include "milneqed/spin_algebra.hpp"
#include "milneqed/statistics.hpp"

namespace milneqed::stats::detail {

/// COM tetrad at (R, k); falls back to the other basis spinor when nu is
/// degenerate for k (the x-y plane, and hence every transverse form, does not
/// depend on nu).
spin::MinkowskiTetrad com_tetrad(const FourVector& R, const FourVector& k, const spin::Spinor& nu);

/// Transverse projections (x_R . w_m, y_R . w_m) for every R node along one
/// direction, stored row-major as px[r * M + m].
struct Projections {
  std::size_t M = 0;
  std::vector<double> weight;
  std::vector<double> px, py;

  /// sum_R w_R (px_m px_l + py_m py_l)
  double averaged(std::size_t m, std::size_t l) const;
};

/// Uses the R nodes aligned with the direction (1, n); order 0 means
/// env.spec.angular_order.
Projections project(const Vec3& n, const Environment& env, const std::vector<FourVector>& w, int order = 0);

struct ExponentEstimate {
  double value;
  double error;
};

/// mean_exponent with its quadrature error, including the R-rule error
/// (orders p and 3p/2 compared) for extended distributions.
ExponentEstimate mean_exponent_estimate(double tau, const Trajectory& traj, const Environment& env);

/// Throws DivergentIntegral when chi(0) > 0, for integrands ~ 1/(k.u)^2.
void require_infrared_regular(const CutoffProfile& profile, const char* what);

}  // namespace milneqed::stats::detail
