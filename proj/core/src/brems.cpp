#include <cmath>
#include <memory>

#include "milneqed/error.hpp"
#include "milneqed/statistics.hpp"
#include "transverse.hpp"

namespace milneqed::stats {

namespace {

void check_velocity(const FourVector& u, const char* name) {
  if (!u.is_finite() || u.t() <= 0.0 || std::abs(dot(u, u) - 1.0) > 1e-10)
    throw Error(Errc::NonTimelikeR, std::string(name) + " must be a future-pointing unit timelike vector");
}

// T_uu, T_vv, T_uv averaged over R along direction n.
struct PairTensor {
  double uu, vv, uv;
};

PairTensor pair_tensor(const Vec3& n, const Environment& env, const FourVector& u, const FourVector& v) {
  const auto p = detail::project(n, env, {u, v});
  return {p.averaged(0, 0), p.averaged(1, 1), p.averaged(0, 1)};
}

}  // namespace

BremsResult brems_generating(double tau1, double dtau, const FourVector& u, const FourVector& v,
                             const Environment& env, BremsMode mode) {
  env.spec.validate();
  check_velocity(u, "u");
  check_velocity(v, "v");
  if (!std::isfinite(tau1) || !std::isfinite(dtau)) throw Error(Errc::NonFinite, "times must be finite");
  if (tau1 < 0.0 || dtau < 0.0) throw Error(Errc::NegativeTau, "tau1 and dtau must be non-negative");
  if (mode != BremsMode::FiniteTimes) detail::require_infrared_regular(env.profile, "the limiting exponent");

  const double q2 = env.q_ren * env.q_ren;
  auto g = [&](const Vec3& n) {
    const auto T = pair_tensor(n, env, u, v);
    const FourVector khat = FourVector::null(1.0, n);
    const double ku = dot(khat, u), kv = dot(khat, v);
    double omega = 0.0;
    if (mode == BremsMode::FiniteTimes) omega = ku * tau1 + kv * dtau;
    if (mode == BremsMode::Tau1Limit) omega = kv * dtau;
    return RadialIntegrand{[=](double k, std::span<double> out) {
                             const double a = k * ku * tau1, b = k * kv * dtau;
                             const double uu = T.uu / (k * k * ku * ku), vv = T.vv / (k * k * kv * kv);
                             const double uv = T.uv / (k * k * ku * kv);
                             double s = 0.0;
                             switch (mode) {
                               case BremsMode::FiniteTimes: {
                                 // 1 - cos x = 2 sin^2(x/2) avoids cancellation at small k
                                 const double ca = 2.0 * std::pow(std::sin(0.5 * a), 2);
                                 const double cb = 2.0 * std::pow(std::sin(0.5 * b), 2);
                                 s = uu * ca + vv * cb - uv * (ca * cb - std::sin(a) * std::sin(b));
                                 break;
                               }
                               case BremsMode::Tau1Limit: {
                                 const double cb = 2.0 * std::pow(std::sin(0.5 * b), 2);
                                 s = uu + (vv - uv) * cb;
                                 break;
                               }
                               case BremsMode::SMatrix:
                                 s = uu + vv - uv;
                                 break;
                             }
                             out[0] = 2.0 * q2 * s;
                           },
                           omega};
  };
  const auto r = lightcone_integral(g, 1, env.profile, env.spec, detect_symmetry({u, v}, env), LightconeWeight::Chi);
  BremsResult out;
  out.exponent = r.value[0];
  out.error = r.error[0];
  out.value = std::exp(-out.exponent);
  return out;
}

MeanPhotons mean_photons(const FourVector& u, const FourVector& v, const Environment& env) {
  env.spec.validate();
  check_velocity(u, "u");
  check_velocity(v, "v");
  detail::require_infrared_regular(env.profile, "the mean photon number");

  const double q2 = env.q_ren * env.q_ren;
  auto g = [&](const Vec3& n) {
    const auto T = pair_tensor(n, env, u, v);
    const FourVector khat = FourVector::null(1.0, n);
    const double ku = dot(khat, u), kv = dot(khat, v);
    return RadialIntegrand{[=](double k, std::span<double> out) {
                             const double uu = T.uu / (ku * ku), vv = T.vv / (kv * kv), uv = T.uv / (ku * kv);
                             const double k2 = k * k;
                             out[0] = q2 * (uu + vv) / k2;
                             out[1] = q2 * (uu + vv - 2.0 * uv) / k2;
                           },
                           0.0};
  };
  const auto r = lightcone_integral(g, 2, env.profile, env.spec, detect_symmetry({u, v}, env), LightconeWeight::Chi);
  MeanPhotons m;
  m.inertial_part = r.value[0];
  m.brems_part = r.value[1];
  m.total = m.inertial_part + m.brems_part;
  m.error = r.error[0] + r.error[1];
  return m;
}

CovarianceResult covariance_check(const FourVector& u, const spin::SL2CTransform& boost, double tau,
                                  const Environment& env) {
  check_velocity(u, "u");
  const SO13Matrix lambda = spin::so13_from_sl2c(boost);
  const FourVector bu = lambda.apply(u);

  Environment boosted = env;
  boosted.profile = env.profile.boosted(lambda);
  boosted.dist = env.dist.boosted(lambda);

  const auto e0 = detail::mean_exponent_estimate(tau, Trajectory::uniform(u), env);
  const auto e1 = detail::mean_exponent_estimate(tau, Trajectory::uniform(bu), boosted);
  const auto e2 = detail::mean_exponent_estimate(tau, Trajectory::uniform(bu), env);

  CovarianceResult r;
  r.c_unboosted = std::exp(-e0.value);
  r.c_boosted = std::exp(-e1.value);
  r.c_current_only = std::exp(-e2.value);
  r.error = r.c_unboosted * e0.error + r.c_boosted * e1.error;
  return r;
}

}  // namespace milneqed::stats
