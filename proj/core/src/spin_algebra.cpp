#include "milneqed/spin_algebra.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "milneqed/error.hpp"

namespace milneqed::spin {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const cplx I{0.0, 1.0};

void require_future_null(const FourVector& k, double tol) {
  if (!k.is_finite()) throw Error(Errc::NonFinite, "momentum has non-finite components");
  const double k0sq = k.t() * k.t();
  if (std::abs(dot(k, k)) > tol * std::max(k0sq, 1e-300) || k0sq == 0.0)
    throw Error(Errc::NotNull, "momentum is not null");
  if (k.t() <= 0.0) throw Error(Errc::NotFuturePointing, "momentum is not future-pointing");
}

Eigen::Vector2cd as_vec(const Spinor& s) { return {s.xi0, s.xi1}; }
Spinor as_spinor(const Eigen::Vector2cd& v) { return {v[0], v[1]}; }

}  // namespace

bool Spinor::is_finite() const {
  return std::isfinite(xi0.real()) && std::isfinite(xi0.imag()) && std::isfinite(xi1.real()) &&
         std::isfinite(xi1.imag());
}

Spinor operator*(cplx s, const Spinor& a) { return {s * a.xi0, s * a.xi1}; }
Spinor operator+(const Spinor& a, const Spinor& b) { return {a.xi0 + b.xi0, a.xi1 + b.xi1}; }

cplx inner(const Spinor& a, const Spinor& b) { return a.xi0 * b.xi1 - a.xi1 * b.xi0; }

Eigen::Matrix2cd hermitian_from_vector(const FourVector& v) {
  Eigen::Matrix2cd h;
  h(0, 0) = kInvSqrt2 * (v.t() + v.z());
  h(0, 1) = kInvSqrt2 * cplx(v.x(), v.y());
  h(1, 0) = kInvSqrt2 * cplx(v.x(), -v.y());
  h(1, 1) = kInvSqrt2 * (v.t() - v.z());
  return h;
}

namespace {
ComplexFourVector complex_from_matrix(const Eigen::Matrix2cd& h) {
  ComplexFourVector v;
  v[0] = kInvSqrt2 * (h(0, 0) + h(1, 1));
  v[1] = kInvSqrt2 * (h(0, 1) + h(1, 0));
  v[2] = kInvSqrt2 * I * (h(1, 0) - h(0, 1));
  v[3] = kInvSqrt2 * (h(0, 0) - h(1, 1));
  return v;
}
}  // namespace

FourVector vector_from_hermitian(const Eigen::Matrix2cd& h) { return complex_from_matrix(h).real(); }

ComplexFourVector outer(const Spinor& a, const Spinor& b) {
  return complex_from_matrix(as_vec(a) * as_vec(b).adjoint());
}

FourVector flagpole(const Spinor& a) { return outer(a, a).real(); }

SL2CTransform SL2CTransform::from_matrix(const Eigen::Matrix2cd& m) {
  const double scale = std::max(1.0, m.squaredNorm());
  if (!m.allFinite() || std::abs(m.determinant() - 1.0) > 1e-12 * scale)
    throw Error(Errc::InvalidArgument, "matrix is not in SL(2,C)");
  return SL2CTransform(m);
}

Spinor SL2CTransform::apply(const Spinor& s) const { return as_spinor(m_ * as_vec(s)); }

SL2CTransform SL2CTransform::inverse() const {
  Eigen::Matrix2cd inv;
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return SL2CTransform(inv);
}

SL2CTransform SL2CTransform::operator-() const { return SL2CTransform(-m_); }

SL2CTransform operator*(const SL2CTransform& a, const SL2CTransform& b) { return SL2CTransform(a.m_ * b.m_); }

SL2CTransform sl2c_element(TransformKind kind, const Vec3& axis, double parameter) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::ZeroAxis, "transformation axis is zero");
  if (!std::isfinite(parameter)) throw Error(Errc::NonFinite, "transformation parameter is not finite");
  const double nx = axis[0] / n, ny = axis[1] / n, nz = axis[2] / n;
  // n . (sigma_x, -sigma_y, sigma_z)
  Eigen::Matrix2cd ns;
  ns << nz, cplx(nx, ny), cplx(nx, -ny), -nz;
  Eigen::Matrix2cd m;
  if (kind == TransformKind::Rotation) {
    m = std::cos(0.5 * parameter) * Eigen::Matrix2cd::Identity() + I * std::sin(0.5 * parameter) * ns;
  } else {
    m = std::cosh(0.5 * parameter) * Eigen::Matrix2cd::Identity() + std::sinh(0.5 * parameter) * ns;
  }
  return SL2CTransform::from_matrix(m);
}

SO13Matrix so13_from_sl2c(const SL2CTransform& lambda) {
  const Eigen::Matrix2cd& m = lambda.matrix();
  Eigen::Matrix4d L;
  for (int b = 0; b < 4; ++b) {
    FourVector e;
    e[b] = 1.0;
    const FourVector col = vector_from_hermitian(m * hermitian_from_vector(e) * m.adjoint());
    for (int a = 0; a < 4; ++a) L(a, b) = col[a];
  }
  return SO13Matrix(L);
}

Spinor pi_from_k(const FourVector& k, double tol) {
  require_future_null(k, tol);
  const double a = kInvSqrt2 * (k.t() + k.z());
  const double b = kInvSqrt2 * (k.t() - k.z());
  const cplx c = kInvSqrt2 * cplx(k.x(), -k.y());
  if (a >= 1e-3 * k.t()) {
    const double sa = std::sqrt(a);
    return {sa, c / sa};
  }
  const double sb = std::sqrt(b);
  return {std::conj(c) / sb, sb};
}

Spinor default_nu(const FourVector& k) {
  if (k.t() + k.z() < 1e-3 * k.t()) return {0.0, 1.0};
  return {1.0, 0.0};
}

SpinFrame com_spin_frame(const FourVector& R, const FourVector& k, const Spinor& nu_lower) {
  if (!R.is_finite() || R.t() <= 0.0 || dot(R, R) <= 0.0)
    throw Error(Errc::NonTimelikeR, "R must be future-pointing timelike");
  require_future_null(k, 1e-12);
  const Eigen::Matrix2cd K = hermitian_from_vector(k);
  const Eigen::Vector2cd nu = as_vec(nu_lower);
  const Eigen::Vector2cd nubar = nu.conjugate();
  const double den = (nu.transpose() * K * nubar)(0).real();
  if (!(den > 1e-14 * k.t() * nu.squaredNorm()))
    throw Error(Errc::DegenerateNu, "nu flagpole is parallel to k");
  const Spinor pi = as_spinor(K * nubar / std::sqrt(den));

  const FourVector Rn = (1.0 / std::sqrt(dot(R, R))) * R;
  const Eigen::Vector2cd pibar_lower = as_vec(pi.lowered()).conjugate();
  const Spinor omega = as_spinor(-hermitian_from_vector(Rn) * pibar_lower / dot(Rn, k));
  return {pi, omega, nu_lower, Rn};
}

SpinFrame standard_spin_frame(const FourVector& k, const Spinor& nu_lower) {
  const Spinor pi = pi_from_k(k);
  const Spinor nu = Spinor::raised_from(nu_lower);
  const cplx s = inner(nu, pi);
  if (std::abs(s) <= 1e-7 * std::sqrt(k.t()) * std::hypot(std::abs(nu.xi0), std::abs(nu.xi1)))
    throw Error(Errc::DegenerateNu, "nu is proportional to pi");
  return {pi, (1.0 / s) * nu, nu_lower, std::nullopt};
}

const FourVector& MinkowskiTetrad::operator[](int i) const {
  switch (i) {
    case 0: return t;
    case 1: return x;
    case 2: return y;
    default: return z;
  }
}

std::pair<NullTetrad, MinkowskiTetrad> tetrads_from_frame(const SpinFrame& f) {
  NullTetrad n;
  n.omega = outer(f.omega, f.omega);
  n.m = outer(f.omega, f.pi);
  n.mbar = outer(f.pi, f.omega);
  n.k = flagpole(f.pi);
  return {n, minkowski_tetrad(f)};
}

MinkowskiTetrad minkowski_tetrad(const SpinFrame& f) {
  const FourVector w = flagpole(f.omega);
  const FourVector k = flagpole(f.pi);
  const ComplexFourVector m = outer(f.omega, f.pi);
  MinkowskiTetrad t;
  t.t = kInvSqrt2 * (w + k);
  t.z = kInvSqrt2 * (w - k);
  const double s2 = std::sqrt(2.0);
  for (int a = 0; a < 4; ++a) {
    t.x[a] = s2 * m[a].real();   // (m + mbar)/sqrt2
    t.y[a] = -s2 * m[a].imag();  // i(m - mbar)/sqrt2
  }
  return t;
}

FrameField FrameField::standard(const Spinor& nu_lower) {
  return FrameField([nu_lower](const FourVector& k, const FourVector&) { return standard_spin_frame(k, nu_lower); },
                    FourVector{1.0, 0.0, 0.0, 0.0}, false);
}

FrameField FrameField::com(const FourVector& R, const Spinor& nu_lower) {
  return FrameField(
      [nu_lower](const FourVector& k, const FourVector& r) { return com_spin_frame(r, k, nu_lower); }, R, true);
}

FrameField FrameField::custom(Fn fn, const FourVector& R, bool transforms_R) {
  return FrameField(std::move(fn), R, transforms_R);
}

SpinFrame FrameField::at(const FourVector& k) const {
  try {
    return fn_(k, R_);
  } catch (const Error& e) {
    throw Error(Errc::FrameUndefined, std::string("frame field undefined: ") + e.what());
  }
}

FrameField FrameField::pulled_back(const SO13Matrix& lambda_inverse) const {
  if (!transforms_R_) return *this;
  return FrameField(fn_, lambda_inverse.apply(R_), true);
}

WignerData wigner_data(const SL2CTransform& lambda, const FrameField& field, const FourVector& k) {
  const SO13Matrix Linv = so13_from_sl2c(lambda.inverse());
  const SpinFrame here = field.at(k);
  const SpinFrame there = field.pulled_back(Linv).at(Linv.apply(k));
  const Spinor lpi = lambda.apply(there.pi);
  const Spinor lomega = lambda.apply(there.omega);

  const cplx eith = inner(lomega, here.pi);
  const double theta = std::arg(eith);
  const cplx phase = std::polar(1.0, -theta);
  const cplx phi = phase * inner(here.omega, lomega);

  const Spinor expect = phase * here.pi;
  const double scale = std::hypot(std::abs(here.pi.xi0), std::abs(here.pi.xi1));
  const double dev = std::hypot(std::abs(lpi.xi0 - expect.xi0), std::abs(lpi.xi1 - expect.xi1));
  if (!(dev <= 1e-10 * scale))
    throw Error(Errc::InvalidArgument, "transformed pi is not a phase multiple of pi");

  WignerData w;
  w.theta = theta;
  w.phi_abs = std::abs(phi);
  w.xi = w.phi_abs > 0.0 ? std::arg(phi) : 0.0;
  return w;
}

SO13Matrix l_matrix_standard(const WignerData& w) {
  const double p = w.phi_abs, p2 = 0.5 * p * p;
  const double c2 = std::cos(2.0 * w.theta), s2 = std::sin(2.0 * w.theta);
  const double cx = std::cos(w.xi), sx = std::sin(w.xi);
  const double cx2 = std::cos(w.xi + 2.0 * w.theta), sx2 = std::sin(w.xi + 2.0 * w.theta);
  Eigen::Matrix4d L;
  L << 1.0 + p2, -p * cx2, p * sx2, -p2,
       -p * cx, c2, -s2, p * cx,
       p * sx, s2, c2, -p * sx,
       p2, -p * cx2, p * sx2, 1.0 - p2;
  return SO13Matrix(L);
}

SO13Matrix l_matrix_com(double theta) {
  const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
  Eigen::Matrix4d L = Eigen::Matrix4d::Identity();
  L(1, 1) = c2;
  L(1, 2) = -s2;
  L(2, 1) = s2;
  L(2, 2) = c2;
  return SO13Matrix(L);
}

Eigen::Matrix4cd triangular_transform(const WignerData& w) {
  const cplx phi = w.phi();
  const cplx e2 = std::polar(1.0, 2.0 * w.theta);
  Eigen::Matrix4cd A = Eigen::Matrix4cd::Zero();
  A(0, 0) = 1.0;
  A(0, 1) = -phi * e2;
  A(0, 2) = -std::conj(phi) * std::conj(e2);
  A(0, 3) = -std::norm(phi);
  A(1, 1) = e2;
  A(1, 3) = std::conj(phi);
  A(2, 2) = std::conj(e2);
  A(2, 3) = phi;
  A(3, 3) = 1.0;
  return A;
}

std::array<Eigen::Matrix4d, 3> e2_generators() {
  std::array<Eigen::Matrix4d, 3> M;
  M[0] << 0, 0, 1, 0,
          0, 0, 0, 0,
          1, 0, 0, -1,
          0, 0, 1, 0;
  M[1] << 0, -1, 0, 0,
          -1, 0, 0, 1,
          0, 0, 0, 0,
          0, -1, 0, 0;
  M[2] = Eigen::Matrix4d::Zero();
  M[2](1, 2) = -1.0;
  M[2](2, 1) = 1.0;
  return M;
}

SO13Matrix v_matrix(double theta, double phi_abs, double xi) {
  // L depends on Theta only through 2 Theta, so fold into (-pi/2, pi/2] where
  // Theta / sin Theta stays bounded.
  double th = std::remainder(theta, std::numbers::pi);
  if (th <= -0.5 * std::numbers::pi) th += std::numbers::pi;
  const double ratio = std::abs(th) < 1e-8 ? 1.0 + th * th / 6.0 : th / std::sin(th);
  const double a1 = ratio * phi_abs * std::sin(xi + th);
  const double a2 = ratio * phi_abs * std::cos(xi + th);
  const double a3 = 2.0 * th;
  const auto M = e2_generators();
  const Eigen::Matrix4d A = a1 * M[0] + a2 * M[1] + a3 * M[2];
  return SO13Matrix(A.exp());
}

bool ccr_form_preserved(const SO13Matrix& L, double tol) {
  if (!L.matrix().allFinite()) return false;
  return L.metric_defect() <= tol;
}

}  // namespace milneqed::spin
