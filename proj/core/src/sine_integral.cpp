#include "milneqed/sine_integral.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace milneqed {

namespace {

// Power series sum_n (-1)^n x^{2n+1} / ((2n+1)(2n+1)!).
double si_series(double x) {
  const double x2 = x * x;
  double term = x;  // (-1)^n x^{2n+1}/(2n+1)!
  double sum = x;
  for (int n = 1; n < 60; ++n) {
    term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
    const double add = term / (2.0 * n + 1.0);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// E1(ix) by its continued fraction (modified Lentz); Si = pi/2 + Im(e^{-ix} h).
double si_continued_fraction(double x) {
  using C = std::complex<double>;
  constexpr double tiny = 1e-300;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  C b(1.0, x);
  C c = 1.0 / tiny;
  C d = 1.0 / b;
  C h = d;
  for (int i = 2; i < 1000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const C del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) break;
  }
  h *= C(std::cos(x), -std::sin(x));
  return 0.5 * std::numbers::pi + h.imag();
}

}  // namespace

double sine_integral(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  if (std::isinf(ax)) return std::copysign(0.5 * std::numbers::pi, x);
  const double v = ax <= 4.0 ? si_series(ax) : si_continued_fraction(ax);
  return std::copysign(v, x);
}

}  // namespace milneqed
