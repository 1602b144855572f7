#include "milneqed/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "milneqed/error.hpp"
#include "milneqed/sine_integral.hpp"

namespace milneqed {

namespace {

constexpr double kPi = std::numbers::pi;

void require_step(const CutoffProfile& p, const char* what) {
  if (p.kind() != CutoffProfile::Kind::Step || p.is_boosted())
    throw Error(Errc::InvalidArgument, std::string(what) + " requires an unboosted sharp-step profile");
}

double sinc(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 1e-3) return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  return std::sin(x) / x;
}

// int_{k1}^{k2} k^m cos(b k) dk for m = 0, 2.
double cos_moment(int m, double b, double k1, double k2) {
  if (std::abs(b) * k2 < 0.1) {
    double sum = 0.0, fact = 1.0, bp = 1.0;
    for (int n = 0; n < 12; ++n) {
      if (n > 0) {
        fact *= (2.0 * n - 1.0) * (2.0 * n);
        bp *= -b * b;
      }
      const int e = 2 * n + m + 1;
      sum += bp * (std::pow(k2, e) - std::pow(k1, e)) / (fact * e);
    }
    return sum;
  }
  auto F = [&](double k) {
    const double s = std::sin(b * k), c = std::cos(b * k);
    if (m == 0) return s / b;
    return k * k * s / b + 2.0 * k * c / (b * b) - 2.0 * s / (b * b * b);
  };
  return F(k2) - F(k1);
}

// (sin x - x cos x) / r^3 with x = k r.
double g3(double k, double r) {
  const double x = k * r;
  if (x < 0.1) {
    const double x2 = x * x;
    return k * k * k * (1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0);
  }
  return (std::sin(x) - x * std::cos(x)) / (r * r * r);
}

QuadratureSpec field_spec(const QuadratureSpec& base, const CutoffProfile& p) {
  QuadratureSpec s = base;
  s.abs_tol = std::max(base.abs_tol, 1e-14 * p.support_max());
  return s;
}

void check_tau_r(double tau, double r) {
  if (!std::isfinite(tau) || !std::isfinite(r)) throw Error(Errc::NonFinite, "tau and r must be finite");
  if (tau < 0.0) throw Error(Errc::NegativeTau, "tau must be non-negative");
  if (r < 0.0) throw Error(Errc::NonPositiveR, "r must be non-negative");
}

}  // namespace

StaticChargeParams StaticChargeParams::from_renormalized(double q_ren, const CutoffProfile& profile) {
  if (!std::isfinite(q_ren)) throw Error(Errc::NonFinite, "charge must be finite");
  return {q_ren / std::sqrt(profile.Z()), profile};
}

double potential_irreducible(double tau, double r, double q) {
  check_tau_r(tau, r);
  if (r == 0.0) throw Error(Errc::NonPositiveR, "r must be positive");
  return tau == 0.0 ? 0.0 : q / (4.0 * kPi * r);
}

double potential_A0_origin(double tau, const StaticChargeParams& p) {
  require_step(p.profile, "potential_A0_origin");
  if (tau < 0.0) throw Error(Errc::NegativeTau, "tau must be non-negative");
  const double k1 = p.profile.k1(), k2 = p.profile.k2();
  return p.q_ren() / (2.0 * kPi * kPi) * (cos_moment(0, 0.0, k1, k2) - cos_moment(0, tau, k1, k2));
}

double potential_A0_si_terms(double tau, double r, const StaticChargeParams& p) {
  require_step(p.profile, "potential_A0_si_terms");
  check_tau_r(tau, r);
  if (r == 0.0) throw Error(Errc::NonPositiveR, "r must be positive");
  const double x0 = std::hypot(tau, r);
  const double a = tau == 0.0 ? x0 : r * r / (x0 + tau);  // x0 - tau
  auto S = [&](double k) {
    return (sine_integral(k * (r + a)) - sine_integral(k * (r + x0))) +
           (sine_integral(k * (r - a)) - sine_integral(k * (r - x0)));
  };
  return p.q_ren() / (4.0 * kPi * kPi * r) * (S(p.profile.k2()) - S(p.profile.k1()));
}

double potential_A0(double tau, double r, const StaticChargeParams& p) {
  check_tau_r(tau, r);
  const CutoffProfile& prof = p.profile;
  const double x0 = std::hypot(tau, r);
  const double a = tau == 0.0 ? x0 : r * r / (x0 + tau);
  const double pref = p.q_ren() / (2.0 * kPi * kPi);
  if (prof.kind() == CutoffProfile::Kind::Step && !prof.is_boosted()) {
    const double k1 = prof.k1(), k2 = prof.k2();
    if (k2 * r >= 1e-4) return potential_A0_si_terms(tau, r, p);
    // sinc(kr) = 1 - (kr)^2/6 + O((kr)^4)
    return pref * ((cos_moment(0, a, k1, k2) - cos_moment(0, x0, k1, k2)) -
                   r * r / 6.0 * (cos_moment(2, a, k1, k2) - cos_moment(2, x0, k1, k2)));
  }
  if (prof.is_boosted()) throw Error(Errc::InvalidArgument, "static potential needs an unboosted profile");
  if (tau == 0.0) return 0.0;
  const auto res = integrate_oscillatory(
      [&](double k) { return prof.chi_radial(k) * (std::cos(k * a) - std::cos(k * x0)) * sinc(k * r); },
      prof.support_min(), prof.support_max(), x0 + r, field_spec({}, prof), prof.breaks());
  return pref * res.value;
}

double potential_asymptotic(double r, const StaticChargeParams& p, const QuadratureSpec& spec) {
  if (!std::isfinite(r)) throw Error(Errc::NonFinite, "r must be finite");
  if (!(r > 0.0)) throw Error(Errc::NonPositiveR, "r must be positive");
  const CutoffProfile& prof = p.profile;
  if (prof.is_boosted()) throw Error(Errc::InvalidArgument, "static potential needs an unboosted profile");
  const double pref = p.q_ren() / (2.0 * kPi * kPi);
  if (prof.kind() == CutoffProfile::Kind::Step) {
    const double k1 = prof.k1(), k2 = prof.k2();
    if (k2 * r < 1e-4) return pref * ((k2 - k1) - r * r * (k2 * k2 * k2 - k1 * k1 * k1) / 18.0);
    return pref * (sine_integral(k2 * r) - sine_integral(k1 * r)) / r;
  }
  const auto res = integrate_oscillatory([&](double k) { return prof.chi_radial(k) * sinc(k * r); },
                                         prof.support_min(), prof.support_max(), r, field_spec(spec, prof),
                                         prof.breaks());
  return pref * res.value;
}

RhoParts rho_eff_parts(double r, const StaticChargeParams& p) {
  require_step(p.profile, "rho_eff");
  if (!std::isfinite(r)) throw Error(Errc::NonFinite, "r must be finite");
  if (r < 0.0) throw Error(Errc::NonPositiveR, "r must be non-negative");
  const double pref = p.q_ren() / (2.0 * kPi * kPi);
  RhoParts out;
  out.k2_part = pref * g3(p.profile.k2(), r);
  out.k1_part = p.profile.k1() > 0.0 ? -pref * g3(p.profile.k1(), r) : 0.0;
  out.total = out.k2_part + out.k1_part;
  return out;
}

double rho_eff(double r, const StaticChargeParams& p) { return rho_eff_parts(r, p).total; }

double rho_general(double r, const StaticChargeParams& p, const QuadratureSpec& spec) {
  if (!std::isfinite(r)) throw Error(Errc::NonFinite, "r must be finite");
  if (r < 0.0) throw Error(Errc::NonPositiveR, "r must be non-negative");
  const CutoffProfile& prof = p.profile;
  if (prof.is_boosted()) throw Error(Errc::InvalidArgument, "static density needs an unboosted profile");
  const double kmax = prof.support_max();
  QuadratureSpec s = spec;
  s.abs_tol = std::max(spec.abs_tol, 1e-14 * kmax * kmax * kmax);
  const auto res = integrate_oscillatory([&](double k) { return prof.chi_radial(k) * k * k * sinc(k * r); },
                                         prof.support_min(), kmax, r, s, prof.breaks());
  return p.q_ren() / (2.0 * kPi * kPi) * res.value;
}

DerivativeEstimate radial_laplacian(const std::function<double(double)>& A, double r, std::optional<double> h_rel) {
  if (!(r > 0.0) || (h_rel && !(*h_rel > 0.0 && *h_rel < 0.25)))
    throw Error(Errc::InvalidArgument, "need r > 0, 0 < h_rel < 1/4");
  auto u = [&](double s) { return s * A(s); };
  const double u0 = u(r);
  auto at = [&](double hr) {
    const double h = hr * r;
    auto D = [&](double s) { return (u(r + s) - 2.0 * u0 + u(r - s)) / (s * s); };
    const double d1 = D(h), d2 = D(0.5 * h), d3 = D(0.25 * h);
    const double r1a = (4.0 * d2 - d1) / 3.0;
    const double r1b = (4.0 * d3 - d2) / 3.0;
    const double r2 = (16.0 * r1b - r1a) / 15.0;
    // Rounding: the extrapolation weights amplify a few-ulp error in u by
    // about 100 / h^2; 400 allows for A itself being accurate to ~4 ulp.
    const double rounding = 400.0 * std::numeric_limits<double>::epsilon() * std::abs(u0) / (h * h);
    return DerivativeEstimate{-r2 / r, (std::abs(r2 - r1b) + rounding) / r};
  };
  if (h_rel) return at(*h_rel);
  DerivativeEstimate best{0.0, std::numeric_limits<double>::infinity()};
  for (double hr : {0.2, 0.1, 0.05, 0.02, 1e-2, 5e-3, 2e-3, 1e-3}) {
    const auto d = at(hr);
    if (d.error < best.error) best = d;
  }
  return best;
}

std::string_view to_string(ChargeVerdict v) {
  switch (v) {
    case ChargeVerdict::Zero: return "Q=0";
    case ChargeVerdict::Renormalized: return "Q=q_ren";
    case ChargeVerdict::Indeterminate: return "indeterminate";
    case ChargeVerdict::Oscillating: return "oscillating";
  }
  return "indeterminate";
}

ChargeResult total_charge(const StaticChargeParams& params, double r_max, std::optional<double> smoothing,
                          const QuadratureSpec& spec) {
  if (!std::isfinite(r_max)) throw Error(Errc::NonFinite, "r_max must be finite");
  if (!(r_max > 0.0)) throw Error(Errc::NonPositiveR, "r_max must be positive");
  StaticChargeParams p = params;
  if (smoothing && p.profile.kind() == CutoffProfile::Kind::Step)
    p = StaticChargeParams::from_renormalized(params.q_ren(),
                                              CutoffProfile::smoothed(p.profile.k1(), p.profile.k2(), *smoothing));
  const CutoffProfile& prof = p.profile;
  if (prof.is_boosted()) throw Error(Errc::InvalidArgument, "static charge needs an unboosted profile");

  ChargeResult out;
  out.q_ren = p.q_ren();
  const double q = out.q_ren;

  if (prof.kind() == CutoffProfile::Kind::Step) {
    const double k1 = prof.k1(), k2 = prof.k2();
    auto closed = [&](double R) {
      return 2.0 / kPi * q *
             (std::sin(k1 * R) - std::sin(k2 * R) + sine_integral(k2 * R) - sine_integral(k1 * R));
    };
    QuadratureSpec s = spec;
    s.abs_tol = std::max(spec.abs_tol, 1e-15 * std::abs(q));
    const auto res = integrate_oscillatory([&](double r) { return 4.0 * kPi * r * r * rho_eff(r, p); }, 0.0, r_max,
                                           k2, s);
    out.Q = res.value;
    out.error = res.error;
    out.closed_form = closed(r_max);
    const double period = 2.0 * kPi / k2;
    double lo = out.Q, hi = out.Q;
    for (int i = 0; i <= 64; ++i) {
      const double R = std::max(0.0, r_max - period * i / 64.0);
      lo = std::min(lo, closed(R));
      hi = std::max(hi, closed(R));
    }
    out.spread = hi - lo;
    out.converged = false;
    out.verdict = ChargeVerdict::Oscillating;
    return out;
  }

  QuadratureSpec s = spec;
  s.rel_tol = std::min(spec.rel_tol, 1e-10);
  auto enclosed = [&](double R, double* err) {
    // sin(kR)/k - R cos(kR) = R (sinc(kR) - cos(kR))
    const auto res = integrate_oscillatory(
        [&](double k) {
          const double x = k * R;
          const double x2 = x * x;
          const double d = x < 1e-2 ? x2 / 3.0 - x2 * x2 / 30.0 : std::sin(x) / x - std::cos(x);
          return prof.chi_radial(k) * R * d;
        },
        prof.support_min(), prof.support_max(), R, s, prof.breaks());
    if (err) *err = 2.0 / kPi * std::abs(q) * res.error;
    return 2.0 / kPi * q * res.value;
  };
  out.Q = enclosed(r_max, &out.error);
  double lo = out.Q, hi = out.Q;
  for (double f : {1.25, 1.5, 1.75, 2.0}) {
    const double v = enclosed(f * r_max, nullptr);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.spread = hi - lo;
  const double tol = 1e-3 * std::abs(q);
  out.converged = out.spread + out.error < tol;
  if (!out.converged)
    out.verdict = ChargeVerdict::Oscillating;
  else if (std::abs(out.Q) < tol)
    out.verdict = ChargeVerdict::Zero;
  else if (std::abs(out.Q - q) < tol)
    out.verdict = ChargeVerdict::Renormalized;
  else
    out.verdict = ChargeVerdict::Indeterminate;
  return out;
}

FreeFieldAverage::FreeFieldAverage(const CoherentAmplitudes& amps, const StaticChargeParams& p,
                                   const RDistribution& dist, const QuadratureSpec& spec, const spin::Spinor& nu) {
  spec.validate();
  if (!amps.alpha_plus || !amps.alpha_minus) throw Error(Errc::InvalidArgument, "amplitudes must be callable");
  const CutoffProfile& prof = p.profile;
  const int n = spec.angular_order;
  const auto [xc, wc] = gauss_legendre(n);
  const auto [xk, wk] = gauss_legendre(2 * n);
  const int nphi = 2 * n;

  std::vector<double> edges{prof.support_min()};
  for (double b : prof.breaks()) edges.push_back(b);
  edges.push_back(prof.support_max());

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const cplx I(0.0, 1.0);
  double kmax = 0.0;
  for (std::size_t ic = 0; ic < xc.size(); ++ic) {
    const double ct = xc[ic], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int ip = 0; ip < nphi; ++ip) {
      const double ph = 2.0 * kPi * ip / nphi;
      const Vec3 dir{st * std::cos(ph), st * std::sin(ph), ct};
      const double s = prof.radial_scale(dir);
      const double ang_w = wc[ic] * 2.0 * kPi / nphi;

      // R-averaged transverse legs depend on the direction only.
      FourVector xbar, ybar;
      const FourVector khat = FourVector::null(1.0, dir);
      for (const auto& rn : r_nodes(dist, std::max(2, n), khat)) {
        const auto tet = spin::minkowski_tetrad(spin::com_spin_frame(rn.R, khat, nu));
        xbar = xbar + rn.weight * tet.x;
        ybar = ybar + rn.weight * tet.y;
      }
      const FourVector xl = xbar.lowered(), yl = ybar.lowered();

      for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double a = edges[e] / s, b = edges[e + 1] / s;
        for (std::size_t ik = 0; ik < xk.size(); ++ik) {
          const double kap = 0.5 * (a + b) + 0.5 * (b - a) * xk[ik];
          const FourVector k = FourVector::null(kap, dir);
          const double z0 = prof.z0(k);
          if (z0 == 0.0) continue;
          const double w = z0 * kap / (16.0 * kPi * kPi * kPi) * 0.5 * (b - a) * wk[ik] * ang_w;
          const cplx ap = amps.alpha_plus(k), am = amps.alpha_minus(k);
          if (!std::isfinite(std::abs(ap)) || !std::isfinite(std::abs(am)))
            throw Error(Errc::NonFinite, "coherent amplitude is not finite");
          norm_ += w * (std::norm(ap) + std::norm(am));
          const cplx a1 = inv_sqrt2 * (ap + am);
          const cplx a2 = -I * inv_sqrt2 * (ap - am);
          std::array<cplx, 4> c;
          for (int i = 0; i < 4; ++i) c[i] = I * w * (-xl[i] * a1 - yl[i] * a2);
          k_.push_back(k);
          c_.push_back(c);
          for (const auto& v : c) scale_ += 2.0 * std::abs(v);
          kmax = std::max(kmax, kap);
        }
      }
    }
  }
  if (!std::isfinite(norm_)) throw Error(Errc::NonFinite, "amplitudes are not square-integrable on the support");
  kmax_ = kmax;
  h_ = kmax > 0.0 ? 0.05 / kmax : 1.0;
}

FourVector FreeFieldAverage::potential(const FourVector& x) const {
  std::array<double, 4> acc{};
  for (std::size_t n = 0; n < k_.size(); ++n) {
    const double ph = dot(k_[n], x);
    const cplx e(std::cos(ph), -std::sin(ph));
    for (int a = 0; a < 4; ++a) acc[a] += 2.0 * (c_[n][a] * e).real();
  }
  return {acc[0], acc[1], acc[2], acc[3]};
}

std::pair<Eigen::Matrix4d, Eigen::Matrix4d> FreeFieldAverage::gradient(const FourVector& x) const {
  Eigen::Matrix4d val, err;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int b = 0; b < 4; ++b) {
    auto D = [&](double h) {
      FourVector xp = x, xm = x;
      xp[b] += h;
      xm[b] -= h;
      const FourVector ap = potential(xp), am = potential(xm);
      Eigen::Vector4d d;
      for (int a = 0; a < 4; ++a) d[a] = (ap[a] - am[a]) / (2.0 * h);
      return d;
    };
    const Eigen::Vector4d d1 = D(h_), d2 = D(0.5 * h_), d3 = D(0.25 * h_);
    const Eigen::Vector4d r1a = (4.0 * d2 - d1) / 3.0;
    const Eigen::Vector4d r1b = (4.0 * d3 - d2) / 3.0;
    const Eigen::Vector4d r2 = (16.0 * r1b - r1a) / 15.0;
    // worst-case rounding of the sums (phase error grows with k.x), amplified
    // by the extrapolation weights
    const double reach = std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) + std::abs(x[3]);
    const double floor = 8.0 * eps * scale_ * (1.0 + kmax_ * reach) / h_;
    for (int a = 0; a < 4; ++a) {
      val(b, a) = r2[a];
      err(b, a) = std::abs(r2[a] - r1b[a]) + floor;
    }
  }
  return {val, err};
}

Eigen::Matrix4d FreeFieldAverage::field_tensor(const FourVector& x) const {
  const auto g = gradient(x).first;
  return g - g.transpose();
}

DerivativeEstimate FreeFieldAverage::lorenz_residual(const FourVector& x) const {
  const auto [g, e] = gradient(x);
  const double div = g(0, 0) - g(1, 1) - g(2, 2) - g(3, 3);
  return {std::abs(div), e(0, 0) + e(1, 1) + e(2, 2) + e(3, 3)};
}

FourVector free_potential_average(const CoherentAmplitudes& amps, const StaticChargeParams& p,
                                  const RDistribution& dist, const FourVector& x, const QuadratureSpec& spec) {
  return FreeFieldAverage(amps, p, dist, spec).potential(x);
}

}  // namespace milneqed
