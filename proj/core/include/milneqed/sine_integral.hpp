#pragma once

namespace milneqed {

/// Si(x) = integral_0^x sin(t)/t dt, odd, Si(+inf) = pi/2.
/// Absolute error below 1e-12 for |x| <= 1e6.
double sine_integral(double x);

}  // namespace milneqed
