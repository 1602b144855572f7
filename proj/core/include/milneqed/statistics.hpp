#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milneqed/cutoff.hpp"
#include "milneqed/lightcone.hpp"
#include "milneqed/quadrature.hpp"
#include "milneqed/r_distribution.hpp"
#include "milneqed/spin_algebra.hpp"
#include "milneqed/trajectory.hpp"

namespace milneqed::stats {

/// Number N of four-dimensional oscillators; infinity gives Poisson statistics.
class OscillatorCount {
 public:
  static OscillatorCount finite(long n);
  static OscillatorCount infinite() { return OscillatorCount(0); }

  bool is_infinite() const { return n_ == 0; }
  long value() const { return n_; }
  std::string label() const { return is_infinite() ? "inf" : std::to_string(n_); }

 private:
  explicit OscillatorCount(long n) : n_(n) {}
  long n_;
};

struct PhotonDistribution {
  std::vector<double> probs;  // p(0..n_max)
  OscillatorCount n = OscillatorCount::infinite();
  double mean = 0.0;        // sum n p(n) over the computed range
  double exponent = 0.0;    // mu = E[F], the Poisson mean of the N -> infinity law
  bool floored = false;     // some p(n) < 1e-300 were reported as 0
};

struct GeneratingSample {
  double lambda;
  double value;
};

/// Everything except the current: cutoff, R distribution, charge and rules.
struct Environment {
  CutoffProfile profile = CutoffProfile::step(0.0, 1.0);
  RDistribution dist = RDistribution::point_mass();
  double q_ren = 1.0;
  QuadratureSpec spec{};
  spin::Spinor nu{1.0, 0.0};
};

/// q_ren^2 sin^2(k.u tau / 2) / (k.u / 2)^2.
double uniform_spectrum(const FourVector& u, double tau, const FourVector& k, double q_ren);

/// <x_a x_b> + <y_a y_b> (covariant indices) of the centre-of-mass tetrads,
/// averaged over the R distribution.
Eigen::Matrix4d transverse_tensor(const FourVector& k, const RDistribution& dist, const spin::Spinor& nu,
                                  const QuadratureSpec& spec = {});

/// F(R, k) = q_ren^2 (|x.I|^2 + |y.I|^2), I^a = int_0^tau ds dX^a/ds e^{ik.X(s)}.
double mode_exponent(const Trajectory& traj, double tau, const FourVector& k, const FourVector& R, double q_ren,
                     const spin::Spinor& nu = {1.0, 0.0});

/// Direction symmetry shared by trajectory, cutoff and R distribution.
AngularSymmetry detect_symmetry(const std::vector<FourVector>& velocities, const Environment& env);

/// E[F] = int d~k chi <F>_R, the mean of the N -> infinity law.
double mean_exponent(double tau, const Trajectory& traj, const Environment& env);

/// C(lambda, tau, N). Finite N: (E[e^{lambda F / (N Z)}])^N with E over
/// Z0(k) Z1(R) d~k d~R (F / Z is the bare-charge exponent); N = inf:
/// exp(lambda E[F]).
double generating_function(double lambda, double tau, OscillatorCount N, const Trajectory& traj,
                           const Environment& env);

/// p(n) = (1/n!) d^n C / d lambda^n at lambda = -1 from the moments
/// a_j = E[(F/NZ)^j e^{-F/NZ}] / j! and the power-series recurrence for
/// (sum a_j t^j)^N. n_max <= 400, else MomentOverflow.
PhotonDistribution photon_probabilities(double tau, OscillatorCount N, int n_max, const Trajectory& traj,
                                        const Environment& env);

/// 0.5 sum |p - q| including the mass beyond the computed ranges.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

enum class BremsMode { FiniteTimes, Tau1Limit, SMatrix };

struct BremsResult {
  double value = 0.0;     // C(-1, tau1 + dtau, inf)
  double exponent = 0.0;  // -ln C
  double error = 0.0;     // on the exponent
};

/// Velocity change u -> v at tau1, observed dtau later. Tau1Limit drops the
/// terms oscillating in tau1, SMatrix also those in dtau. The limiting modes
/// throw DivergentIntegral when chi(0) > 0.
BremsResult brems_generating(double tau1, double dtau, const FourVector& u, const FourVector& v,
                             const Environment& env, BremsMode mode);

struct MeanPhotons {
  double total = 0.0;
  double inertial_part = 0.0;
  double brems_part = 0.0;
  double error = 0.0;
};

MeanPhotons mean_photons(const FourVector& u, const FourVector& v, const Environment& env);

struct CovarianceResult {
  double c_unboosted = 0.0;
  /// current, cutoff argument and R distribution all transformed
  double c_boosted = 0.0;
  /// current transformed alone
  double c_current_only = 0.0;
  double error = 0.0;  // combined bound on |c_boosted - c_unboosted|
};

/// Uniform motion: C(-1, tau, inf) for (u, chi, Z1) against
/// (Lambda u, chi(Lambda^{-1} .), Z1(Lambda^{-1} .)).
CovarianceResult covariance_check(const FourVector& u, const spin::SL2CTransform& boost, double tau,
                                  const Environment& env);

}  // namespace milneqed::stats
