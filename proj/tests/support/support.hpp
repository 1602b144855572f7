#pragma once

// Random Lorentz data and independent oracles shared by the unit and
// acceptance tests. Oracles avoid the library's own integrators and formulas.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "milneqed/minkowski.hpp"
#include "milneqed/spin_algebra.hpp"

namespace milneqed::testing {

inline constexpr double kPi = std::numbers::pi;

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

  Vec3 direction() {
    std::normal_distribution<double> n;
    Vec3 d{};
    double s = 0.0;
    while (s < 1e-12) {
      d = {n(rng_), n(rng_), n(rng_)};
      s = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    }
    return {d[0] / s, d[1] / s, d[2] / s};
  }

  FourVector null(double kmin = 0.1, double kmax = 10.0) { return FourVector::null(log_uniform(kmin, kmax), direction()); }
  FourVector unit_timelike(double max_rapidity) { return FourVector::from_rapidity(uniform(0.0, max_rapidity), direction()); }

  /// Rotation about a random axis followed by a boost of rapidity <= max_rapidity.
  spin::SL2CTransform lorentz(double max_rapidity) {
    const auto rot = spin::sl2c_element(spin::TransformKind::Rotation, direction(), uniform(-kPi, kPi));
    const auto boost = spin::sl2c_element(spin::TransformKind::Boost, direction(), uniform(0.0, max_rapidity));
    return boost * rot;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Si(x) by one 61-point Gauss-Kronrod rule per panel of width <= pi; sin(t)/t
/// is entire, so a single rule per panel is exact to rounding.
inline double si_oracle(double x) {
  using boost::math::quadrature::gauss_kronrod;
  const double a = std::abs(x);
  const int panels = std::max(1, static_cast<int>(std::ceil(a / kPi)));
  double sum = 0.0, comp = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a * i / panels, hi = a * (i + 1) / panels;
    const double v = gauss_kronrod<double, 61>::integrate(
        [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, lo, hi, 0, 0.0);
    const double y = v - comp, t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return x < 0.0 ? -sum : sum;
}

/// Adaptive Gauss-Kronrod from the reference library, for oracle integrals.
/// The depth cap bounds the cost when tol sits below the rounding floor.
template <class F>
double gk(F f, double a, double b, double tol = 1e-13, unsigned max_depth = 10) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol);
}

/// x_a x_b + y_a y_b of the centre-of-mass tetrad at (R, k), contracted
/// with a and b: the plane orthogonal to R and k, written through the
/// projector onto span(R, k). R must be unit timelike.
inline double transverse_form(const FourVector& R, const FourVector& k, const FourVector& a, const FourVector& b) {
  const double rk = dot(R, k);
  return (dot(a, R) * dot(b, k) + dot(a, k) * dot(b, R)) / rk - dot(a, k) * dot(b, k) / (rk * rk) - dot(a, b);
}

}  // namespace milneqed::testing
