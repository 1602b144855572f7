#pragma once

// Two-component spinors, spin-frames and the Lorentz-group matrices built
// from them. Conventions:
//   * Spinor components are contravariant (xi^0, xi^1) unless a parameter is
//     documented as covariant. Indices are lowered with eps_01 = +1, so
//     xi_0 = -xi^1, xi_1 = xi^0, and a_A b^A = a^0 b^1 - a^1 b^0.
//   * Vector <-> Hermitian matrix map uses the 1/sqrt(2) Infeld-van der
//     Waerden symbols: k^{AA'} = [[k0+k3, k1+i k2], [k1-i k2, k0-k3]] / sqrt(2).
//   * Minkowski tetrad from a spin-frame: t = (w+k)/sqrt2, x = (m+mbar)/sqrt2,
//     y = i(m-mbar)/sqrt2, z = (w-k)/sqrt2 with w = omega omegabar,
//     m = omega pibar, k = pi pibar.

#include <array>
#include <functional>
#include <optional>
#include <utility>

#include "milneqed/minkowski.hpp"

namespace milneqed::spin {

struct Spinor {
  cplx xi0{};
  cplx xi1{};

  /// Covariant components (xi_0, xi_1).
  Spinor lowered() const { return {-xi1, xi0}; }
  /// Contravariant components from covariant ones.
  static Spinor raised_from(const Spinor& lower) { return {lower.xi1, -lower.xi0}; }
  Spinor conj() const { return {std::conj(xi0), std::conj(xi1)}; }
  bool is_finite() const;
};

Spinor operator*(cplx s, const Spinor& a);
Spinor operator+(const Spinor& a, const Spinor& b);

/// a_A b^A for two contravariant spinors.
cplx inner(const Spinor& a, const Spinor& b);

Eigen::Matrix2cd hermitian_from_vector(const FourVector& v);
FourVector vector_from_hermitian(const Eigen::Matrix2cd& h);
/// Complex vector with spinor components a^A conj(b^A').
ComplexFourVector outer(const Spinor& a, const Spinor& b);
/// Flagpole a^A conj(a^A').
FourVector flagpole(const Spinor& a);

/// Element of SL(2,C) acting on contravariant spinors.
class SL2CTransform {
 public:
  SL2CTransform() : m_(Eigen::Matrix2cd::Identity()) {}
  /// Throws InvalidArgument unless |det - 1| <= 1e-12 * max(1, |m|^2).
  static SL2CTransform from_matrix(const Eigen::Matrix2cd& m);

  const Eigen::Matrix2cd& matrix() const { return m_; }
  Spinor apply(const Spinor& s) const;
  SL2CTransform inverse() const;
  SL2CTransform operator-() const;
  friend SL2CTransform operator*(const SL2CTransform& a, const SL2CTransform& b);

 private:
  explicit SL2CTransform(const Eigen::Matrix2cd& m) : m_(m) {}
  Eigen::Matrix2cd m_;
};

enum class TransformKind { Boost, Rotation };

/// Rotation by `parameter` radians (right-handed, active) or boost with
/// rapidity `parameter` along `axis`. Non-unit axes are normalised; a zero
/// axis throws ZeroAxis.
SL2CTransform sl2c_element(TransformKind kind, const Vec3& axis, double parameter);

/// Covering map SL(2,C) -> SO+(1,3); Lambda and -Lambda have the same image.
SO13Matrix so13_from_sl2c(const SL2CTransform& lambda);

/// pi with pi pibar = k. Phase convention: pi = (sqrt(a), c/sqrt(a)) with
/// a = (k0+k3)/sqrt2, c = (k1-i k2)/sqrt2, switching to the column built from
/// b = (k0-k3)/sqrt2 when a < 1e-3 k0.
/// Throws NotNull when |k.k| > tol k0^2 and NotFuturePointing when k0 <= 0.
Spinor pi_from_k(const FourVector& k, double tol = 1e-12);

struct SpinFrame {
  Spinor pi;
  Spinor omega;
  /// Covariant components nu_A of the k-independent seed spinor.
  std::optional<Spinor> nu;
  /// Unit timelike label of a centre-of-mass frame.
  std::optional<FourVector> R;

  bool is_com() const { return R.has_value(); }
};

/// Default seed nu_A = (1, 0); (0, 1) when k is within the 1e-3 cone of -z.
Spinor default_nu(const FourVector& k);

/// Centre-of-mass spin-frame
///   pi^A  = k^{AA'} nubar_A' / sqrt(k^{BB'} nu_B nubar_B')
///   omega^A = -R^{AA'} pibar_A' / (R.k)
/// `nu_lower` holds covariant components. R need not be normalised
/// (omega is homogeneous of degree zero in R); it is stored normalised.
/// Throws NonTimelikeR, DegenerateNu, NotNull, NotFuturePointing.
SpinFrame com_spin_frame(const FourVector& R, const FourVector& k, const Spinor& nu_lower);

/// Standard-form frame: pi from pi_from_k, omega^A = nu^A / (nu_B pi^B).
SpinFrame standard_spin_frame(const FourVector& k, const Spinor& nu_lower);

struct NullTetrad {
  ComplexFourVector omega;
  ComplexFourVector m;
  ComplexFourVector mbar;
  FourVector k;
};

struct MinkowskiTetrad {
  FourVector t;
  FourVector x;
  FourVector y;
  FourVector z;

  const FourVector& operator[](int i) const;
};

std::pair<NullTetrad, MinkowskiTetrad> tetrads_from_frame(const SpinFrame& frame);
/// Minkowski legs only; cheaper than tetrads_from_frame when m, mbar are not needed.
MinkowskiTetrad minkowski_tetrad(const SpinFrame& frame);

/// A spin-frame field k -> (pi(k), omega(k)). Centre-of-mass fields carry a
/// label R that is transformed together with k.
class FrameField {
 public:
  using Fn = std::function<SpinFrame(const FourVector& k, const FourVector& R)>;

  /// omega from a fixed nu (default nu_A = (1,0)).
  static FrameField standard(const Spinor& nu_lower = {1.0, 0.0});
  static FrameField com(const FourVector& R, const Spinor& nu_lower = {1.0, 0.0});
  /// `transforms_R` marks fields whose R label must be pulled back with k.
  static FrameField custom(Fn fn, const FourVector& R, bool transforms_R);

  /// Throws FrameUndefined if the field cannot be evaluated at k.
  SpinFrame at(const FourVector& k) const;
  /// The field used to evaluate frames at Lambda^{-1} k.
  FrameField pulled_back(const SO13Matrix& lambda_inverse) const;
  const FourVector& label() const { return R_; }

 private:
  FrameField(Fn fn, const FourVector& R, bool transforms_R)
      : fn_(std::move(fn)), R_(R), transforms_R_(transforms_R) {}

  Fn fn_;
  FourVector R_;
  bool transforms_R_ = false;
};

struct WignerData {
  double theta = 0.0;    // principal value in (-pi, pi]
  double phi_abs = 0.0;  // |phi|
  double xi = 0.0;       // arg(phi), 0 when phi vanishes

  cplx phi() const { return std::polar(phi_abs, xi); }
};

/// e^{i Theta} = pi^A(k) (Lambda omega)_A(k),
/// phi = e^{-i Theta} omega_A(k) (Lambda omega)^A(k),
/// with (Lambda omega)(k) = Lambda omega(Lambda^{-1} k). Also checks
/// Lambda pi(k) = e^{-i Theta} pi(k) to 1e-10 and throws InvalidArgument if not.
WignerData wigner_data(const SL2CTransform& lambda, const FrameField& field, const FourVector& k);

/// Transformation matrix in the tetrad basis for a standard-form frame,
/// acting on (a0^dagger, a1, a2, a3).
SO13Matrix l_matrix_standard(const WignerData& w);
/// identity (+) rotation by 2 Theta in the 1-2 block.
SO13Matrix l_matrix_com(double theta);

/// Momentum-space action on (b+, a+, a-, b-); upper triangular, diagonal
/// phases when phi = 0.
Eigen::Matrix4cd triangular_transform(const WignerData& w);

/// Adjoint actions M_j of the E(2) generators L_1, L_2, L_3 on
/// (a0^dagger, a1, a2, a3): i[L_j, X_b] = sum_c (M_j)_bc X_c.
std::array<Eigen::Matrix4d, 3> e2_generators();

/// exp(alpha_1 M_1 + alpha_2 M_2 + alpha_3 M_3) with
/// alpha_{1,2} = (Theta / sin Theta) |phi| {sin, cos}(xi + Theta), alpha_3 = 2 Theta.
SO13Matrix v_matrix(double theta, double phi_abs, double xi);

/// True iff L g L^T = g within tol, i.e. the Bogoliubov mixing
/// b = L (a0^dagger, a1, a2, a3) keeps the oscillator commutators.
bool ccr_form_preserved(const SO13Matrix& L, double tol = 1e-12);

}  // namespace milneqed::spin
