#include "milneqed/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "milneqed/error.hpp"
#include "transverse.hpp"

namespace milneqed::stats {

namespace detail {

spin::MinkowskiTetrad com_tetrad(const FourVector& R, const FourVector& k, const spin::Spinor& nu) {
  try {
    return spin::minkowski_tetrad(spin::com_spin_frame(R, k, nu));
  } catch (const Error& e) {
    if (e.code() != Errc::DegenerateNu) throw;
    const spin::Spinor other{-std::conj(nu.xi1), std::conj(nu.xi0)};
    return spin::minkowski_tetrad(spin::com_spin_frame(R, k, other));
  }
}

double Projections::averaged(std::size_t m, std::size_t l) const {
  double acc = 0.0;
  for (std::size_t r = 0; r < weight.size(); ++r)
    acc += weight[r] * (px[r * M + m] * px[r * M + l] + py[r * M + m] * py[r * M + l]);
  return acc;
}

Projections project(const Vec3& n, const Environment& env, const std::vector<FourVector>& w, int order) {
  const FourVector khat = FourVector::null(1.0, n);
  const auto nodes = r_nodes(env.dist, order > 0 ? order : env.spec.angular_order, khat);
  const spin::Spinor& nu = env.nu;
  Projections p;
  p.M = w.size();
  p.weight.reserve(nodes.size());
  p.px.reserve(nodes.size() * w.size());
  p.py.reserve(nodes.size() * w.size());
  for (const auto& node : nodes) {
    const auto tet = com_tetrad(node.R, khat, nu);
    p.weight.push_back(node.weight);
    for (const auto& v : w) {
      p.px.push_back(dot(tet.x, v));
      p.py.push_back(dot(tet.y, v));
    }
  }
  return p;
}

void require_infrared_regular(const CutoffProfile& profile, const char* what) {
  if (profile.chi_at_origin() > 0.0)
    throw Error(Errc::DivergentIntegral,
                std::string(what) + " diverges in the infrared: the cutoff has chi(0) > 0 (needs k1 > 0)");
}

}  // namespace detail

namespace {

constexpr double kPi = std::numbers::pi;

bool small(double x, double scale) { return std::abs(x) <= 1e-13 * std::max(1.0, scale); }

bool axial_matrix(const Eigen::Matrix4d& m) {
  const double s = m.cwiseAbs().maxCoeff();
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 0}, {2, 0}, {3, 1}, {3, 2}, {1, 3}, {2, 3}})
    if (!small(m(i, j), s)) return false;
  return true;
}

bool rotation_matrix(const Eigen::Matrix4d& m) {
  const double s = m.cwiseAbs().maxCoeff();
  return small(m(0, 0) - 1.0, s) && small(m(0, 1), s) && small(m(0, 2), s) && small(m(0, 3), s);
}

std::vector<FourVector> velocities(const Trajectory& traj) {
  std::vector<FourVector> v;
  for (const auto& s : traj.segments()) v.push_back(s.u);
  return v;
}

void check_env(const Environment& env) {
  env.spec.validate();
  if (!std::isfinite(env.q_ren)) throw Error(Errc::NonFinite, "charge must be finite");
}

// Per-direction F values for every R node: F_R = q^2 (|sum_j px_j c_j|^2 + |sum_j py_j c_j|^2).
void node_exponents(const detail::Projections& p, const std::vector<cplx>& c, double q2, std::vector<double>& F) {
  const std::size_t nR = p.weight.size();
  F.resize(nR);
  for (std::size_t r = 0; r < nR; ++r) {
    cplx ix = 0.0, iy = 0.0;
    for (std::size_t j = 0; j < p.M; ++j) {
      ix += p.px[r * p.M + j] * c[j];
      iy += p.py[r * p.M + j] * c[j];
    }
    F[r] = q2 * (std::norm(ix) + std::norm(iy));
  }
}

double phase_rate(const Vec3& n, const Trajectory& traj, double tau) {
  return std::max(0.0, dot(FourVector::null(1.0, n), traj.position(tau)));
}

}  // namespace

namespace detail {

ExponentEstimate mean_exponent_estimate(double tau, const Trajectory& traj, const Environment& env) {
  check_env(env);
  if (tau < 0.0) throw Error(Errc::NegativeTau, "tau must be non-negative");
  if (tau == 0.0 || env.q_ren == 0.0) return {0.0, 0.0};
  const auto vel = velocities(traj);
  const double q2 = env.q_ren * env.q_ren;
  const bool extended = env.dist.kind() != RDistribution::Kind::PointMass;
  const int order = std::max(env.spec.angular_order, 4);
  const std::size_t dim = extended ? 2 : 1;
  auto g = [&](const Vec3& n) {
    // T[r][m * M + l]: rule r (fine first) of the R-averaged transverse form
    const std::size_t M = vel.size();
    auto T = std::make_shared<std::vector<std::vector<double>>>();
    for (int o : {order + order / 2, order}) {
      if (T->size() == dim) break;
      const auto proj = project(n, env, vel, o);
      auto& t = T->emplace_back(M * M);
      for (std::size_t m = 0; m < M; ++m)
        for (std::size_t l = 0; l < M; ++l) t[m * M + l] = proj.averaged(m, l);
    }
    return RadialIntegrand{[&traj, tau, n, T, M, q2](double k, std::span<double> out) {
                             const auto c = traj.segment_integrals(FourVector::null(k, n), tau);
                             for (std::size_t r = 0; r < T->size(); ++r) {
                               double acc = 0.0;
                               for (std::size_t m = 0; m < M; ++m)
                                 for (std::size_t l = 0; l < M; ++l)
                                   acc += (*T)[r][m * M + l] * (c[m] * std::conj(c[l])).real();
                               out[r] = q2 * acc;
                             }
                           },
                           phase_rate(n, traj, tau)};
  };
  auto r = lightcone_integral(g, dim, env.profile, env.spec, detect_symmetry(vel, env), LightconeWeight::Chi);
  if (extended) r.error[0] += std::abs(r.value[0] - r.value[1]);
  if (r.value[0] < -std::max(1e-300, r.error[0]))
    throw Error(Errc::InvalidArgument, "negative mean exponent: transverse form is not positive");
  return {r.value[0], r.error[0]};
}

}  // namespace detail

namespace {

// E over Z0 Z1 of per-node functions of f = F / (N Z); `fill` maps f to dim values.
template <class Fill>
std::vector<double> bare_moments(double tau, long N, const Trajectory& traj, const Environment& env,
                                 std::size_t dim, Fill fill) {
  const auto vel = velocities(traj);
  const double q2 = env.q_ren * env.q_ren / (env.profile.Z() * static_cast<double>(N));
  auto g = [&](const Vec3& n) {
    auto proj = std::make_shared<detail::Projections>(detail::project(n, env, vel));
    return RadialIntegrand{[&traj, tau, n, proj, q2, dim, fill](double k, std::span<double> out) {
                             const auto c = traj.segment_integrals(FourVector::null(k, n), tau);
                             thread_local std::vector<double> F, tmp;
                             node_exponents(*proj, c, q2, F);
                             tmp.assign(dim, 0.0);
                             std::fill(out.begin(), out.end(), 0.0);
                             for (std::size_t r = 0; r < F.size(); ++r) {
                               fill(F[r], std::span<double>(tmp));
                               for (std::size_t i = 0; i < dim; ++i) out[i] += proj->weight[r] * tmp[i];
                             }
                           },
                           phase_rate(n, traj, tau)};
  };
  return lightcone_integral(g, dim, env.profile, env.spec, detect_symmetry(vel, env), LightconeWeight::Z0).value;
}

std::vector<double> series_power(const std::vector<double>& a, long N) {
  const std::size_t n = a.size();
  auto mul = [n](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; i + j < n; ++j) z[i + j] += x[i] * y[j];
    return z;
  };
  std::vector<double> result(n, 0.0), base = a;
  result[0] = 1.0;
  for (long e = N; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    if (e > 1) base = mul(base, base);
  }
  return result;
}

}  // namespace

OscillatorCount OscillatorCount::finite(long n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "N must be a positive integer");
  return OscillatorCount(n);
}

double uniform_spectrum(const FourVector& u, double tau, const FourVector& k, double q_ren) {
  if (tau < 0.0) throw Error(Errc::NegativeTau, "tau must be non-negative");
  const double x = 0.5 * dot(k, u) * tau;
  const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return q_ren * q_ren * tau * tau * sinc * sinc;
}

Eigen::Matrix4d transverse_tensor(const FourVector& k, const RDistribution& dist, const spin::Spinor& nu,
                                  const QuadratureSpec& spec) {
  spin::pi_from_k(k);  // validates k
  return r_average(
      [&](const FourVector& R) -> Eigen::Matrix4d {
        const auto tet = detail::com_tetrad(R, k, nu);
        const FourVector xl = tet.x.lowered(), yl = tet.y.lowered();
        const Eigen::Vector4d x(xl[0], xl[1], xl[2], xl[3]), y(yl[0], yl[1], yl[2], yl[3]);
        return x * x.transpose() + y * y.transpose();
      },
      dist, spec, k);
}

double mode_exponent(const Trajectory& traj, double tau, const FourVector& k, const FourVector& R, double q_ren,
                     const spin::Spinor& nu) {
  const auto tet = detail::com_tetrad(R, k, nu);
  const auto c = traj.segment_integrals(k, tau);
  cplx ix = 0.0, iy = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    ix += dot(tet.x, traj.segments()[j].u) * c[j];
    iy += dot(tet.y, traj.segments()[j].u) * c[j];
  }
  return q_ren * q_ren * (std::norm(ix) + std::norm(iy));
}

AngularSymmetry detect_symmetry(const std::vector<FourVector>& vel, const Environment& env) {
  const Eigen::Matrix4d& cut = env.profile.inverse_boost().matrix();
  const Eigen::Matrix4d& frame = env.dist.frame().matrix();
  const bool point = env.dist.kind() == RDistribution::Kind::PointMass;
  const FourVector& R0 = env.dist.R0();

  bool iso = rotation_matrix(cut) && (point ? small(R0.spatial_norm(), R0.t()) : rotation_matrix(frame));
  for (const auto& u : vel) iso = iso && small(u.spatial_norm(), u.t());
  if (iso) return AngularSymmetry::Isotropic;

  bool ax = axial_matrix(cut) && (point ? small(R0.x(), R0.t()) && small(R0.y(), R0.t()) : axial_matrix(frame));
  for (const auto& u : vel) ax = ax && small(u.x(), u.t()) && small(u.y(), u.t());
  return ax ? AngularSymmetry::Axial : AngularSymmetry::General;
}

double mean_exponent(double tau, const Trajectory& traj, const Environment& env) {
  return detail::mean_exponent_estimate(tau, traj, env).value;
}

double generating_function(double lambda, double tau, OscillatorCount N, const Trajectory& traj,
                           const Environment& env) {
  if (!std::isfinite(lambda)) throw Error(Errc::NonFinite, "lambda must be finite");
  check_env(env);
  if (tau < 0.0) throw Error(Errc::NegativeTau, "tau must be non-negative");
  if (lambda == 0.0 || tau == 0.0) return 1.0;
  if (N.is_infinite()) return std::exp(lambda * mean_exponent(tau, traj, env));
  const double n = static_cast<double>(N.value());
  const auto m = bare_moments(tau, N.value(), traj, env, 1,
                              [lambda](double f, std::span<double> o) { o[0] = std::expm1(lambda * f); });
  // m[0] = E[e^{lambda f}] - 1, using int d~k Z0 = 1
  if (!(m[0] > -1.0)) throw Error(Errc::NonFinite, "generating function average is not positive");
  return std::exp(n * std::log1p(m[0]));
}

PhotonDistribution photon_probabilities(double tau, OscillatorCount N, int n_max, const Trajectory& traj,
                                        const Environment& env) {
  check_env(env);
  if (n_max < 0) throw Error(Errc::InvalidArgument, "n_max must be non-negative");
  if (n_max > 400) throw Error(Errc::MomentOverflow, "n_max above 400 is not supported");
  if (tau < 0.0) throw Error(Errc::NegativeTau, "tau must be non-negative");

  PhotonDistribution out;
  out.n = N;
  out.probs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  out.exponent = mean_exponent(tau, traj, env);

  if (N.is_infinite()) {
    const double mu = out.exponent;
    for (int k = 0; k <= n_max; ++k) {
      if (mu == 0.0) {
        out.probs[k] = k == 0 ? 1.0 : 0.0;
        continue;
      }
      out.probs[k] = std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0));
    }
  } else if (tau == 0.0 || env.q_ren == 0.0) {
    out.probs[0] = 1.0;
  } else {
    const long n = N.value();
    const std::size_t dim = static_cast<std::size_t>(n_max) + 1;
    // a_0 - 1 = E[expm1(-f)], a_j = E[f^j e^{-f}] / j!
    auto a = bare_moments(tau, n, traj, env, dim, [dim](double f, std::span<double> o) {
      o[0] = std::expm1(-f);
      double t = std::exp(-f);
      for (std::size_t j = 1; j < dim; ++j) {
        t *= f / static_cast<double>(j);
        o[j] = t;
      }
    });
    const double a0m1 = a[0];
    a[0] = 1.0 + a0m1;
    if (!(a[0] > 0.0)) throw Error(Errc::NonFinite, "vacuum moment is not positive");
    auto& c = out.probs;
    if (n == 1) {
      c = a;
    } else if (n_max <= n + 1) {
      // Power-series recurrence for (sum_j a_j t^j)^N; every term is non-negative here.
      c[0] = std::exp(static_cast<double>(n) * std::log1p(a0m1));
      for (int k = 1; k <= n_max; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += ((n + 1.0) * j - k) * a[j] * c[k - j];
        c[k] = acc / (k * a[0]);
      }
    } else {
      c = series_power(a, n);
      c[0] = std::exp(static_cast<double>(n) * std::log1p(a0m1));
    }
  }
  for (auto& p : out.probs) {
    if (!std::isfinite(p)) throw Error(Errc::MomentOverflow, "photon probability is not finite");
    if (p < 1e-300) {
      if (p != 0.0) out.floored = true;
      p = 0.0;
    }
  }
  for (std::size_t k = 0; k < out.probs.size(); ++k) out.mean += static_cast<double>(k) * out.probs[k];
  return out;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double d = 0.0, sp = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    d += std::abs(a - b);
    sp += a;
    sq += b;
  }
  d += std::abs((1.0 - sp) - (1.0 - sq));
  return 0.5 * d;
}

}  // namespace milneqed::stats
