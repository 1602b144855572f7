#include "milneqed/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "milneqed/error.hpp"

namespace milneqed {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1 || angular_order < 1)
    throw Error(Errc::InvalidArgument, "quadrature tolerances and orders must be positive");
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec s = *this;
  s.rel_tol *= factor;
  s.abs_tol *= factor;
  return s;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

namespace {

struct Interval {
  double a, b;
  std::vector<double> value, error;
  std::vector<double> magnitude;  // integral of |f|
  std::vector<double> floor;      // rounding limit of the error estimate
};

// Applies the 21-point Kronrod rule and the embedded 10-point Gauss rule.
void gk21(const VectorFn& f, std::size_t dim, double a, double b, Interval& out, std::vector<double>& buf) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using G = boost::math::quadrature::gauss<double, 10>;
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);

  std::vector<double> kron(dim, 0.0), gauss(dim, 0.0), rabs(dim, 0.0);
  auto sample = [&](double x) {
    f(x, std::span<double>(buf.data(), dim));
    for (std::size_t i = 0; i < dim; ++i)
      if (!std::isfinite(buf[i]))
        throw Error(Errc::NonFinite, "integrand is not finite at x = " + std::to_string(x));
  };

  sample(c);
  for (std::size_t i = 0; i < dim; ++i) {
    kron[i] = wk[0] * buf[i];
    rabs[i] = wk[0] * std::abs(buf[i]);
  }
  std::vector<double> fl(dim);
  for (std::size_t j = 1; j < xk.size(); ++j) {
    sample(c - h * xk[j]);
    std::copy_n(buf.begin(), dim, fl.begin());
    sample(c + h * xk[j]);
    for (std::size_t i = 0; i < dim; ++i) {
      const double s = fl[i] + buf[i];
      kron[i] += wk[j] * s;
      rabs[i] += wk[j] * (std::abs(fl[i]) + std::abs(buf[i]));
      if (j % 2 == 1) gauss[i] += wg[j / 2] * s;
    }
  }
  out.a = a;
  out.b = b;
  out.value.resize(dim);
  out.error.resize(dim);
  out.floor.resize(dim);
  out.magnitude.resize(dim);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < dim; ++i) {
    out.value[i] = h * kron[i];
    out.magnitude[i] = std::abs(h) * rabs[i];
    out.floor[i] = 50.0 * eps * out.magnitude[i];
    out.error[i] = std::max(std::abs(h * (kron[i] - gauss[i])), out.floor[i]);
  }
}

enum class Scale { Value, Magnitude };

// rel_tol applies to |integral f| (Value) or to integral |f| (Magnitude).
VectorQuadResult adaptive(const VectorFn& f, std::size_t dim, double a, double b, const QuadratureSpec& spec,
                          std::span<const double> breaks, Scale scale) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(Errc::NonFinite, "integration limits must be finite");
  VectorQuadResult res;
  res.value.assign(dim, 0.0);
  res.error.assign(dim, 0.0);
  if (a == b || dim == 0) return res;

  std::vector<double> pts{a};
  for (double x : breaks)
    if ((x - a) * (x - b) < 0.0) pts.push_back(x);
  std::sort(pts.begin() + 1, pts.end(), [&](double u, double v) { return (u - v) * (b - a) < 0.0; });
  pts.push_back(b);

  std::vector<double> buf(dim);
  std::vector<Interval> ivs;
  ivs.reserve(static_cast<std::size_t>(spec.max_subdivisions) + pts.size());
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    Interval iv;
    gk21(f, dim, pts[p], pts[p + 1], iv, buf);
    ivs.push_back(std::move(iv));
  }

  // Errors at the rounding floor cannot be reduced by subdivision; the
  // floor is accepted (and still reported) when it exceeds the tolerance.
  std::vector<double> tol(dim), floor(dim), mag(dim);
  auto totals = [&] {
    std::fill(res.value.begin(), res.value.end(), 0.0);
    std::fill(res.error.begin(), res.error.end(), 0.0);
    std::fill(floor.begin(), floor.end(), 0.0);
    std::fill(mag.begin(), mag.end(), 0.0);
    for (const auto& iv : ivs)
      for (std::size_t i = 0; i < dim; ++i) {
        res.value[i] += iv.value[i];
        res.error[i] += iv.error[i];
        floor[i] += iv.floor[i];
        mag[i] += iv.magnitude[i];
      }
    bool ok = true;
    for (std::size_t i = 0; i < dim; ++i) {
      const double ref = scale == Scale::Value ? std::abs(res.value[i]) : mag[i];
      tol[i] = std::max({spec.abs_tol, spec.rel_tol * ref, 2.0 * floor[i]});
      ok = ok && res.error[i] <= tol[i];
    }
    return ok;
  };

  while (!totals()) {
    if (static_cast<int>(ivs.size()) >= spec.max_subdivisions)
      throw Error(Errc::ToleranceNotMet, "adaptive quadrature exceeded " + std::to_string(spec.max_subdivisions) +
                                             " subintervals on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    std::size_t worst = 0;
    double worst_ratio = -1.0;
    for (std::size_t n = 0; n < ivs.size(); ++n) {
      double r = 0.0;
      for (std::size_t i = 0; i < dim; ++i) r = std::max(r, ivs[n].error[i] / tol[i]);
      if (r > worst_ratio) {
        worst_ratio = r;
        worst = n;
      }
    }
    const double lo = ivs[worst].a, hi = ivs[worst].b, mid = 0.5 * (lo + hi);
    if (!(std::abs(hi - lo) > 1e-14 * (std::abs(lo) + std::abs(hi))))
      throw Error(Errc::ToleranceNotMet, "adaptive quadrature reached the resolution limit near x = " +
                                             std::to_string(mid));
    Interval left, right;
    gk21(f, dim, lo, mid, left, buf);
    gk21(f, dim, mid, hi, right, buf);
    ivs[worst] = std::move(left);
    ivs.push_back(std::move(right));
  }
  res.intervals = static_cast<int>(ivs.size());
  return res;
}

}  // namespace

VectorQuadResult integrate_vector(const VectorFn& f, std::size_t dim, double a, double b, const QuadratureSpec& spec,
                                  std::span<const double> breaks) {
  return adaptive(f, dim, a, b, spec, breaks, Scale::Value);
}

QuadResult integrate(const ScalarFn& f, double a, double b, const QuadratureSpec& spec) {
  const auto r = integrate_vector([&](double x, std::span<double> out) { out[0] = f(x); }, 1, a, b, spec);
  return {r.value[0], r.error[0], r.intervals};
}

VectorQuadResult integrate_oscillatory(const VectorFn& f, std::size_t dim, double a, double b, double omega,
                                       const QuadratureSpec& spec, std::span<const double> breaks) {
  spec.validate();
  if (!(b > a)) return adaptive(f, dim, a, b, spec, breaks, Scale::Magnitude);
  std::vector<double> pts{a, b};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  if (omega > 0.0) {
    const double half = std::numbers::pi / omega;
    const double first = std::ceil(a / half);
    const double last = std::floor(b / half);
    if (last - first > 5e6) throw Error(Errc::InvalidArgument, "too many oscillation panels");
    for (double n = first; n <= last; n += 1.0) {
      const double x = n * half;
      if (x > a && x < b) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<CompensatedSum> sums(dim);
  VectorQuadResult res;
  res.error.assign(dim, 0.0);
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    if (!(pts[p + 1] - pts[p] > 1e-15 * std::abs(pts[p + 1]))) continue;
    const auto r = adaptive(f, dim, pts[p], pts[p + 1], spec, {}, Scale::Magnitude);
    for (std::size_t i = 0; i < dim; ++i) {
      sums[i].add(r.value[i]);
      res.error[i] += r.error[i];
    }
    res.intervals += r.intervals;
  }
  res.value.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) res.value[i] = sums[i].value();
  return res;
}

QuadResult integrate_oscillatory(const ScalarFn& f, double a, double b, double omega, const QuadratureSpec& spec,
                                 std::span<const double> breaks) {
  const auto r = integrate_oscillatory([&](double x, std::span<double> out) { out[0] = f(x); }, 1, a, b, omega, spec,
                                       breaks);
  return {r.value[0], r.error[0], r.intervals};
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "Gauss-Legendre order must be positive");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

}  // namespace milneqed
