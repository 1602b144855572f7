#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace milneqed {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Contravariant components (t, x, y, z) in natural units; all contractions
/// use the metric diag(+1, -1, -1, -1).
struct FourVector {
  std::array<double, 4> c{};

  constexpr FourVector() = default;
  constexpr FourVector(double t, double x, double y, double z) : c{t, x, y, z} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr double t() const { return c[0]; }
  constexpr double x() const { return c[1]; }
  constexpr double y() const { return c[2]; }
  constexpr double z() const { return c[3]; }
  constexpr Vec3 spatial() const { return {c[1], c[2], c[3]}; }
  double spatial_norm() const { return std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]); }

  /// Covariant components v_a = g_ab v^b.
  constexpr FourVector lowered() const { return {c[0], -c[1], -c[2], -c[3]}; }

  bool is_finite() const {
    return std::isfinite(c[0]) && std::isfinite(c[1]) && std::isfinite(c[2]) && std::isfinite(c[3]);
  }

  /// Null vector |k|(1, n) for a unit 3-direction n.
  static constexpr FourVector null(double kmag, const Vec3& n) {
    return {kmag, kmag * n[0], kmag * n[1], kmag * n[2]};
  }
  /// Unit timelike vector with rapidity eta along the unit direction n.
  static FourVector from_rapidity(double eta, const Vec3& n) {
    const double s = std::sinh(eta);
    return {std::cosh(eta), s * n[0], s * n[1], s * n[2]};
  }
};

constexpr FourVector operator+(const FourVector& a, const FourVector& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
constexpr FourVector operator-(const FourVector& a, const FourVector& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
constexpr FourVector operator*(double s, const FourVector& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
constexpr FourVector operator-(const FourVector& a) { return {-a[0], -a[1], -a[2], -a[3]}; }

constexpr double dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

/// Four complex contravariant components; used for m^a, omega^a of a null tetrad.
struct ComplexFourVector {
  std::array<cplx, 4> c{};

  cplx& operator[](std::size_t i) { return c[i]; }
  const cplx& operator[](std::size_t i) const { return c[i]; }

  ComplexFourVector conj() const {
    return {{std::conj(c[0]), std::conj(c[1]), std::conj(c[2]), std::conj(c[3])}};
  }
  FourVector real() const { return {c[0].real(), c[1].real(), c[2].real(), c[3].real()}; }
};

inline cplx dot(const ComplexFourVector& a, const ComplexFourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}
inline cplx dot(const ComplexFourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

inline const Eigen::Matrix4d& metric() {
  static const Eigen::Matrix4d g = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return g;
}

/// Real 4x4 matrix acting on contravariant components, v'^a = L^a_b v^b.
class SO13Matrix {
 public:
  SO13Matrix() : m_(Eigen::Matrix4d::Identity()) {}
  explicit SO13Matrix(const Eigen::Matrix4d& m) : m_(m) {}

  static SO13Matrix identity() { return SO13Matrix(); }

  const Eigen::Matrix4d& matrix() const { return m_; }
  double operator()(int a, int b) const { return m_(a, b); }

  FourVector apply(const FourVector& v) const {
    const Eigen::Vector4d r = m_ * Eigen::Vector4d(v[0], v[1], v[2], v[3]);
    return {r[0], r[1], r[2], r[3]};
  }
  /// Inverse of a Lorentz matrix, g L^T g.
  SO13Matrix inverse() const { return SO13Matrix(metric() * m_.transpose() * metric()); }

  /// max |L g L^T - g|
  double metric_defect() const { return (m_ * metric() * m_.transpose() - metric()).cwiseAbs().maxCoeff(); }

  friend SO13Matrix operator*(const SO13Matrix& a, const SO13Matrix& b) { return SO13Matrix(a.m_ * b.m_); }

 private:
  Eigen::Matrix4d m_;
};

}  // namespace milneqed
