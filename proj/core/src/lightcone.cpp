#include "milneqed/lightcone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "milneqed/error.hpp"

namespace milneqed {

namespace {

constexpr double kPi = std::numbers::pi;

// Radial integral along n including the weight k w(k) / (16 pi^3).
void radial(const DirectionalIntegrand& g, std::size_t dim, const CutoffProfile& profile, const QuadratureSpec& spec,
            LightconeWeight weight, const Vec3& n, std::span<double> out, std::span<double> err) {
  const double s = profile.radial_scale(n);
  if (!(s > 0.0)) throw Error(Errc::InvalidArgument, "cutoff boost maps a null direction outside the light cone");
  const double lo = profile.support_min() / s, hi = profile.support_max() / s;
  std::vector<double> breaks;
  for (double b : profile.breaks()) breaks.push_back(b / s);

  const RadialIntegrand ri = g(n);
  const double scale = weight == LightconeWeight::Z0 ? profile.Z() : 1.0;
  auto f = [&](double k, std::span<double> o) {
    const double w = k * scale * profile.chi_radial(k * s) / (16.0 * kPi * kPi * kPi);
    if (w == 0.0) {
      std::fill(o.begin(), o.end(), 0.0);
      return;
    }
    ri.f(k, o);
    for (auto& v : o) v *= w;
  };
  const auto r = integrate_oscillatory(f, dim, lo, hi, ri.omega, spec, breaks);
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] = r.value[i];
    err[i] = r.error[i];
  }
}

Vec3 direction(double ct, double phi) {
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  return {st * std::cos(phi), st * std::sin(phi), ct};
}

}  // namespace

LightconeResult lightcone_integral(const DirectionalIntegrand& g, std::size_t dim, const CutoffProfile& profile,
                                   const QuadratureSpec& spec, AngularSymmetry symmetry, LightconeWeight weight) {
  spec.validate();
  const QuadratureSpec inner = spec.tightened(0.1);
  LightconeResult res;
  res.value.assign(dim, 0.0);
  res.error.assign(dim, 0.0);
  std::vector<double> v(dim), e(dim);

  if (symmetry == AngularSymmetry::Isotropic) {
    radial(g, dim, profile, inner, weight, {0.0, 0.0, 1.0}, v, e);
    for (std::size_t i = 0; i < dim; ++i) {
      res.value[i] = 4.0 * kPi * v[i];
      res.error[i] = 4.0 * kPi * e[i];
    }
    return res;
  }

  const int nphi = symmetry == AngularSymmetry::Axial ? 1 : 2 * spec.angular_order;
  const double phi_weight = 2.0 * kPi / nphi;
  std::vector<double> inner_err(dim, 0.0);
  auto ring = [&](double ct, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (int j = 0; j < nphi; ++j) {
      radial(g, dim, profile, inner, weight, direction(ct, 2.0 * kPi * j / nphi), v, e);
      for (std::size_t i = 0; i < dim; ++i) {
        out[i] += phi_weight * v[i];
        inner_err[i] = std::max(inner_err[i], phi_weight * e[i]);
      }
    }
  };
  const auto r = integrate_vector(ring, dim, -1.0, 1.0, spec);
  for (std::size_t i = 0; i < dim; ++i) {
    res.value[i] = r.value[i];
    // inner errors enter the outer integral over a cos(theta) range of length 2
    res.error[i] = r.error[i] + 2.0 * nphi * inner_err[i];
  }
  return res;
}

QuadResult lightcone_integral(const std::function<double(const FourVector&)>& f, const CutoffProfile& profile,
                              const QuadratureSpec& spec, AngularSymmetry symmetry, LightconeWeight weight) {
  auto g = [&f](const Vec3& n) {
    return RadialIntegrand{[&f, n](double k, std::span<double> out) { out[0] = f(FourVector::null(k, n)); }, 0.0};
  };
  const auto r = lightcone_integral(g, 1, profile, spec, symmetry, weight);
  return {r.value[0], r.error[0], 0};
}

}  // namespace milneqed
