#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace milneqed {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  /// Point count of fixed angular rules (phi trapezoid, R-distribution nodes).
  int angular_order = 16;

  /// Throws InvalidArgument for non-positive tolerances or orders.
  void validate() const;
  QuadratureSpec tightened(double factor) const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

struct VectorQuadResult {
  std::vector<double> value;
  std::vector<double> error;
  int intervals = 0;
};

using ScalarFn = std::function<double(double)>;
/// Writes dim values at x into out.
using VectorFn = std::function<void(double x, std::span<double> out)>;

/// Adaptive 21-point Gauss-Kronrod on [a, b]. Throws ToleranceNotMet when the
/// subdivision budget runs out and NonFinite on a NaN/inf sample.
QuadResult integrate(const ScalarFn& f, double a, double b, const QuadratureSpec& spec);

/// Vector-valued version; every component must meet
/// err_i <= max(abs_tol, rel_tol |I_i|). `breaks` are interior points where
/// the integrand is known to be non-smooth.
VectorQuadResult integrate_vector(const VectorFn& f, std::size_t dim, double a, double b, const QuadratureSpec& spec,
                                  std::span<const double> breaks = {});

/// Splits [a, b] at multiples of pi / omega (plus `breaks`) and integrates each
/// panel adaptively, with rel_tol measured against the panel's integral of
/// |f| so that panels cancelling internally stay cheap. Panels are summed
/// with compensated summation. omega <= 0 means no splitting.
VectorQuadResult integrate_oscillatory(const VectorFn& f, std::size_t dim, double a, double b, double omega,
                                       const QuadratureSpec& spec, std::span<const double> breaks = {});
QuadResult integrate_oscillatory(const ScalarFn& f, double a, double b, double omega, const QuadratureSpec& spec,
                                 std::span<const double> breaks = {});

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace milneqed
