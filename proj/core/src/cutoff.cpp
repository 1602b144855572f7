#include "milneqed/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "milneqed/error.hpp"
#include "milneqed/quadrature.hpp"

namespace milneqed {

namespace {
constexpr double kPi = std::numbers::pi;

void check_band(double k1, double k2) {
  if (!std::isfinite(k1) || !std::isfinite(k2)) throw Error(Errc::NonFinite, "cutoff bounds must be finite");
  if (k1 < 0.0) throw Error(Errc::InvalidArgument, "k1 must be non-negative");
  if (!(k2 > k1)) throw Error(Errc::EmptySupport, "cutoff support is empty (k2 <= k1)");
}
}  // namespace

CutoffProfile CutoffProfile::step(double k1, double k2) {
  check_band(k1, k2);
  CutoffProfile p;
  p.kind_ = Kind::Step;
  p.k1_ = k1;
  p.k2_ = k2;
  p.lo_ = k1;
  p.hi_ = k2;
  p.Z_ = 8.0 * kPi * kPi / (k2 * k2 - k1 * k1);
  return p;
}

CutoffProfile CutoffProfile::smoothed(double k1, double k2, double eps) {
  check_band(k1, k2);
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::InvalidArgument, "smoothing width must be positive");
  if (k1 > 0.0 && k1 + eps > k2 - eps) throw Error(Errc::InvalidArgument, "smoothing edges overlap");
  if (k1 == 0.0 && eps >= k2) throw Error(Errc::InvalidArgument, "smoothing width exceeds k2");
  CutoffProfile p;
  p.kind_ = Kind::Smoothed;
  p.k1_ = k1;
  p.k2_ = k2;
  p.eps_ = eps;
  p.lo_ = k1 > 0.0 ? std::max(0.0, k1 - eps) : 0.0;
  p.hi_ = k2 + eps;
  if (k1 > 0.0) {
    if (k1 - eps > 0.0) p.breaks_.push_back(k1 - eps);
    p.breaks_.push_back(k1 + eps);
  }
  p.breaks_.push_back(k2 - eps);
  p.normalise();
  return p;
}

CutoffProfile CutoffProfile::custom(std::function<double(double)> shape, double k_max, std::vector<double> breaks) {
  if (!(k_max > 0.0) || !std::isfinite(k_max)) throw Error(Errc::EmptySupport, "custom profile needs k_max > 0");
  CutoffProfile p;
  p.kind_ = Kind::Custom;
  p.shape_ = std::make_shared<const std::function<double(double)>>(std::move(shape));
  p.lo_ = 0.0;
  p.hi_ = k_max;
  std::sort(breaks.begin(), breaks.end());
  for (double b : breaks)
    if (b > 0.0 && b < k_max) p.breaks_.push_back(b);
  p.k2_ = k_max;

  double peak = 0.0;
  auto probe = [&](double k) {
    const double v = (*p.shape_)(k);
    if (!std::isfinite(v) || v < 0.0) throw Error(Errc::InvalidArgument, "custom profile must be finite and >= 0");
    peak = std::max(peak, v);
  };
  constexpr int grid = 20000;
  for (int i = 0; i <= grid; ++i) probe(k_max * i / grid);
  for (double b : p.breaks_) probe(b);
  if (!(peak > 0.0)) throw Error(Errc::EmptySupport, "custom profile vanishes identically");
  p.shape_scale_ = 1.0 / peak;
  p.normalise();
  return p;
}

void CutoffProfile::normalise() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = 1e-300;
  spec.max_subdivisions = 5000;
  const auto r = integrate_vector([this](double k, std::span<double> out) { out[0] = k * chi_radial(k); }, 1, lo_,
                                  hi_, spec, breaks_);
  if (!(r.value[0] > 0.0)) throw Error(Errc::EmptySupport, "cutoff profile has zero weight");
  // d~k integral of chi for isotropic chi is (1 / 4 pi^2) int k chi dk.
  Z_ = 4.0 * kPi * kPi / r.value[0];
}

double CutoffProfile::chi_radial(double k) const {
  if (!(k >= lo_) || !(k <= hi_)) return 0.0;
  switch (kind_) {
    case Kind::Step:
      return 1.0;
    case Kind::Smoothed: {
      double v = 1.0;
      if (k1_ > 0.0 && k < k1_ + eps_) v = 0.5 * (1.0 + std::sin(0.5 * kPi * (k - k1_) / eps_));
      if (k > k2_ - eps_) v = 0.5 * (1.0 - std::sin(0.5 * kPi * (k - k2_) / eps_));
      return v;
    }
    case Kind::Custom:
      return std::min(1.0, shape_scale_ * (*shape_)(k));
  }
  return 0.0;
}

double CutoffProfile::chi(const FourVector& k) const {
  if (!boosted_) return chi_radial(k.t());
  return chi_radial(inverse_.apply(k).t());
}

double CutoffProfile::radial_scale(const Vec3& n) const {
  if (!boosted_) return 1.0;
  const auto& m = inverse_.matrix();
  return m(0, 0) + m(0, 1) * n[0] + m(0, 2) * n[1] + m(0, 3) * n[2];
}

CutoffProfile CutoffProfile::boosted(const SO13Matrix& lambda) const {
  if (lambda.metric_defect() > 1e-10 || lambda(0, 0) < 1.0 - 1e-12)
    throw Error(Errc::InvalidArgument, "boost is not an orthochronous Lorentz matrix");
  CutoffProfile p = *this;
  p.inverse_ = inverse_ * lambda.inverse();
  p.boosted_ = true;
  return p;
}

double q_renormalized(double q, const CutoffProfile& profile) {
  if (!std::isfinite(q)) throw Error(Errc::NonFinite, "charge must be finite");
  return std::sqrt(profile.Z()) * q;
}

}  // namespace milneqed
