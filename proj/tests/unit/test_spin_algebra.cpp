#include <gtest/gtest.h>

#include <cmath>

#include "milneqed/error.hpp"
#include "milneqed/spin_algebra.hpp"
#include "support.hpp"

using namespace milneqed;
using namespace milneqed::spin;
using milneqed::testing::kPi;
using milneqed::testing::Random;

namespace {

// k^{AA'} from the 1/sqrt2 symbols, written out by hand.
Eigen::Matrix2cd ivdw(const FourVector& k) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  m << s * (k.t() + k.z()), s * cplx(k.x(), k.y()), s * cplx(k.x(), -k.y()), s * (k.t() - k.z());
  return m;
}

Eigen::Matrix2cd spinor_outer(const Spinor& a) {
  Eigen::Matrix2cd m;
  m << a.xi0 * std::conj(a.xi0), a.xi0 * std::conj(a.xi1), a.xi1 * std::conj(a.xi0), a.xi1 * std::conj(a.xi1);
  return m;
}

double max_diff(const FourVector& a, const FourVector& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void expect_error(Errc code, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(PiFromK, AlongPlusZ) {
  const Spinor p = pi_from_k({1.0, 0.0, 0.0, 1.0});
  EXPECT_NEAR(std::abs(p.xi0 - std::pow(2.0, 0.25)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.xi1), 0.0, 1e-15);
  EXPECT_LT((spinor_outer(p) - ivdw({1.0, 0.0, 0.0, 1.0})).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PiFromK, AlongMinusZ) {
  const Spinor p = pi_from_k({1.0, 0.0, 0.0, -1.0});
  EXPECT_NEAR(std::abs(p.xi0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.xi1 - std::pow(2.0, 0.25)), 0.0, 1e-15);
}

TEST(PiFromK, ReproducesHermitianMatrix) {
  Random rng(11);
  for (int i = 0; i < 500; ++i) {
    const FourVector k = rng.null(1e-3, 1e3);
    const double scale = k.t();
    EXPECT_LT((spinor_outer(pi_from_k(k)) - ivdw(k)).cwiseAbs().maxCoeff(), 1e-12 * scale);
  }
}

TEST(PiFromK, RejectsTimelikeAndPastPointing) {
  expect_error(Errc::NotNull, [] { pi_from_k({1.0, 0.0, 0.0, 0.0}); });
  expect_error(Errc::NotFuturePointing, [] { pi_from_k({-1.0, 0.0, 0.0, 1.0}); });
}

TEST(HermitianMap, RoundTrip) {
  Random rng(12);
  for (int i = 0; i < 100; ++i) {
    const FourVector v{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    EXPECT_LT((hermitian_from_vector(v) - ivdw(v)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(max_diff(vector_from_hermitian(hermitian_from_vector(v)), v), 1e-14);
    // det k^{AA'} = k.k / 2 with the 1/sqrt2 symbols
    EXPECT_NEAR(hermitian_from_vector(v).determinant().real(), 0.5 * dot(v, v), 1e-12);
  }
}

TEST(ComSpinFrame, NormalisationAndHomogeneity) {
  Random rng(13);
  for (int i = 0; i < 500; ++i) {
    const FourVector k = rng.null(), R = rng.unit_timelike(2.0);
    const auto f = com_spin_frame(R, k, {1.0, 0.0});
    EXPECT_NEAR(std::abs(inner(f.omega, f.pi) - 1.0), 0.0, 1e-12);
    const auto g = com_spin_frame(2.0 * R, k, {1.0, 0.0});
    EXPECT_LT(std::abs(g.omega.xi0 - f.omega.xi0) + std::abs(g.omega.xi1 - f.omega.xi1), 1e-13);
  }
}

TEST(ComSpinFrame, HandEvaluatedRestFrame) {
  // R = (1,0,0,0), k = (1,0,0,1), nu_A = (1,0): |pi^0| = 2^{1/4}, |omega^1| = 2^{-1/4}
  const FourVector R{1.0, 0.0, 0.0, 0.0}, k{1.0, 0.0, 0.0, 1.0};
  const auto f = com_spin_frame(R, k, {1.0, 0.0});
  EXPECT_NEAR(dot(R, k), 1.0, 0.0);
  EXPECT_LT((spinor_outer(f.pi) - ivdw(k)).cwiseAbs().maxCoeff(), 1e-15);
  // omega^A = -R^{AA'} pibar_A' / (R.k), evaluated by hand with pibar_A' = (-conj pi^1, conj pi^0)
  const Eigen::Matrix2cd Rm = ivdw(R);
  const Eigen::Vector2cd pibar_lower(-std::conj(f.pi.xi1), std::conj(f.pi.xi0));
  const Eigen::Vector2cd omega = -Rm * pibar_lower / dot(R, k);
  EXPECT_LT(std::abs(omega(0) - f.omega.xi0) + std::abs(omega(1) - f.omega.xi1), 1e-15);
  EXPECT_NEAR(std::abs(f.omega.xi1), std::pow(2.0, -0.25), 1e-15);
}

TEST(ComSpinFrame, Errors) {
  expect_error(Errc::NonTimelikeR, [] { com_spin_frame({0.0, 1.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 1.0}, {1.0, 0.0}); });
  // nu_A = (1,0) has k^{BB'} nu_B nubar_B' = (k0 - k3)/sqrt2 = 0 along +z
  expect_error(Errc::DegenerateNu, [] { com_spin_frame({1.0, 0.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 1.0}, {0.0, 1.0}); });
}

TEST(Tetrads, Orthonormality) {
  Random rng(14);
  for (int i = 0; i < 300; ++i) {
    const FourVector k = rng.null();
    const SpinFrame f = i % 2 ? com_spin_frame(rng.unit_timelike(1.5), k, {1.0, 0.0})
                              : standard_spin_frame(k, default_nu(k));
    const auto [nt, mt] = tetrads_from_frame(f);
    double leg = 1.0;
    for (int a = 0; a < 4; ++a) leg = std::max({leg, std::abs(mt.t[a]), std::abs(mt.x[a]), std::abs(mt.y[a]), std::abs(mt.z[a])});
    const double s = leg * leg;
    // Minkowski legs orthonormal and reconstruct the metric
    const FourVector legs[4] = {mt.t, mt.x, mt.y, mt.z};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double expected = a != b ? 0.0 : (a == 0 ? 1.0 : -1.0);
        EXPECT_NEAR(dot(legs[a], legs[b]), expected, 1e-12 * s);
      }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double g = mt.t[a] * mt.t[b] - mt.x[a] * mt.x[b] - mt.y[a] * mt.y[b] - mt.z[a] * mt.z[b];
        EXPECT_NEAR(g, metric()(a, b), 1e-12 * s);
      }
    // null tetrad relations
    EXPECT_LT(max_diff(nt.k, k), 1e-12 * s);
    EXPECT_LT(max_diff((1.0 / std::sqrt(2.0)) * (mt.t - mt.z), k), 1e-12 * s);
    EXPECT_NEAR(std::abs(dot(nt.m, nt.m)), 0.0, 1e-12 * s);
    EXPECT_NEAR(dot(nt.m, nt.mbar).real(), -1.0, 1e-12 * s);
    EXPECT_NEAR(dot(nt.omega, k).real(), 1.0, 1e-12 * s);
    EXPECT_NEAR(std::abs(dot(nt.omega, nt.omega)), 0.0, 1e-12 * s);
    for (int a = 0; a < 4; ++a) EXPECT_NEAR(std::abs(nt.mbar[a] - std::conj(nt.m[a])), 0.0, 1e-15 * s);
  }
}

TEST(Tetrads, ZAlignedFrame) {
  const double s = 1.0 / std::sqrt(2.0);
  const Spinor pi = pi_from_k({s, 0.0, 0.0, s});
  EXPECT_NEAR(std::abs(pi.xi0 - 1.0) + std::abs(pi.xi1), 0.0, 1e-15);
  const SpinFrame f{pi, {0.0, -1.0}, std::nullopt, std::nullopt};
  ASSERT_NEAR(std::abs(inner(f.omega, f.pi) - 1.0), 0.0, 1e-15);
  const auto mt = minkowski_tetrad(f);
  EXPECT_LT(max_diff(mt.t, {1.0, 0.0, 0.0, 0.0}), 1e-15);
  // z = (w - k)/sqrt2 points against the photon direction
  EXPECT_LT(max_diff(mt.z, {0.0, 0.0, 0.0, -1.0}), 1e-15);
  EXPECT_NEAR(std::abs(mt.x.x()) + std::abs(mt.y.y()), 2.0, 1e-15);
}

TEST(Sl2c, IdentityDoubleCoverAndBoost) {
  for (auto kind : {TransformKind::Boost, TransformKind::Rotation})
    EXPECT_LT((sl2c_element(kind, {0.3, -0.2, 0.9}, 0.0).matrix() - Eigen::Matrix2cd::Identity()).norm(), 1e-15);

  const auto full = sl2c_element(TransformKind::Rotation, {0.0, 1.0, 0.0}, 2.0 * kPi);
  EXPECT_LT((full.matrix() + Eigen::Matrix2cd::Identity()).norm(), 1e-14);
  EXPECT_LT((so13_from_sl2c(full).matrix() - Eigen::Matrix4d::Identity()).norm(), 1e-14);

  const double chi = 0.7;
  const FourVector kb = so13_from_sl2c(sl2c_element(TransformKind::Boost, {0.0, 0.0, 1.0}, chi)).apply({1, 0, 0, 1});
  EXPECT_LT(max_diff(kb, {std::exp(chi), 0.0, 0.0, std::exp(chi)}), 1e-14);

  expect_error(Errc::ZeroAxis, [] { sl2c_element(TransformKind::Boost, {0.0, 0.0, 0.0}, 1.0); });
}

TEST(Sl2c, CoveringMapIsTwoToOneHomomorphism) {
  Random rng(15);
  for (int i = 0; i < 200; ++i) {
    const auto a = rng.lorentz(2.0), b = rng.lorentz(2.0);
    EXPECT_NEAR(std::abs(a.matrix().determinant() - 1.0), 0.0, 1e-12);
    const auto La = so13_from_sl2c(a);
    EXPECT_EQ((La.matrix() - so13_from_sl2c(-a).matrix()).cwiseAbs().maxCoeff(), 0.0);
    const double s = std::max(1.0, La.matrix().cwiseAbs().maxCoeff());
    EXPECT_LT(La.metric_defect(), 1e-12 * s * s);
    const Eigen::Matrix4d prod = (so13_from_sl2c(a) * so13_from_sl2c(b)).matrix();
    EXPECT_LT((so13_from_sl2c(a * b).matrix() - prod).cwiseAbs().maxCoeff(), 1e-11 * prod.cwiseAbs().maxCoeff());
    // SL(2,C) acts on k^{AA'} by conjugation: Lambda k Lambda^dagger
    const FourVector k = rng.null();
    const Eigen::Matrix2cd h = a.matrix() * hermitian_from_vector(k) * a.matrix().adjoint();
    EXPECT_LT(max_diff(vector_from_hermitian(h), La.apply(k)), 1e-11 * std::max(1.0, La.apply(k).t()));
  }
}

TEST(WignerData, IdentityGivesZero) {
  Random rng(16);
  const FourVector k = rng.null();
  for (const auto& field : {FrameField::standard(), FrameField::com({1.0, 0.0, 0.0, 0.0})}) {
    const auto w = wigner_data(SL2CTransform(), field, k);
    EXPECT_NEAR(w.theta, 0.0, 1e-14);
    EXPECT_NEAR(w.phi_abs, 0.0, 1e-14);
  }
}

TEST(WignerData, ComFramesHaveNoPhi) {
  Random rng(17);
  for (int i = 0; i < 500; ++i) {
    const auto w = wigner_data(rng.lorentz(2.0), FrameField::com(rng.unit_timelike(1.5)), rng.null());
    EXPECT_LT(w.phi_abs, 1e-10);
  }
}

TEST(WignerData, RotationAboutMomentum) {
  // rotating k = (1,0,0,1) about z by alpha: |Theta| = alpha / 2
  for (double alpha : {0.3, 1.0, 2.5}) {
    const auto L = sl2c_element(TransformKind::Rotation, {0.0, 0.0, 1.0}, alpha);
    const auto w = wigner_data(L, FrameField::standard(), {1.0, 0.0, 0.0, 1.0});
    EXPECT_NEAR(std::abs(w.theta), alpha / 2.0, 1e-13);
    EXPECT_NEAR(w.phi_abs, 0.0, 1e-13);
  }
}

TEST(WignerData, ThetaCocycleForComFrames) {
  Random rng(18);
  for (int i = 0; i < 300; ++i) {
    const auto a = rng.lorentz(1.5), b = rng.lorentz(1.5);
    const auto field = FrameField::com(rng.unit_timelike(1.0));
    const FourVector k = rng.null();
    const FourVector kb = so13_from_sl2c(a).inverse().apply(k);
    const double d = wigner_data(a * b, field, k).theta - wigner_data(a, field, k).theta -
                     wigner_data(b, field, kb).theta;
    EXPECT_LT(std::abs(std::remainder(d, 2.0 * kPi)), 1e-9);
  }
}

TEST(LMatrix, IdentityAndComReduction) {
  EXPECT_LT((l_matrix_standard({0.0, 0.0, 0.0}).matrix() - Eigen::Matrix4d::Identity()).norm(), 1e-15);
  for (double th : {-1.2, 0.4, 2.9}) {
    EXPECT_LT((l_matrix_standard({th, 0.0, 0.7}).matrix() - l_matrix_com(th).matrix()).norm(), 1e-15);
    // identity (+) rotation by 2 Theta in the 1-2 block
    const auto L = l_matrix_com(th).matrix();
    EXPECT_NEAR(L(0, 0), 1.0, 0.0);
    EXPECT_NEAR(L(3, 3), 1.0, 0.0);
    EXPECT_NEAR(L(1, 1), std::cos(2 * th), 1e-15);
    EXPECT_NEAR(std::abs(L(1, 2)), std::abs(std::sin(2 * th)), 1e-15);
  }
}

TEST(LMatrix, MatchesTetradContractions) {
  // L_ij = e_i(k) . Lambda e_j(Lambda^{-1} k), signed by the metric of leg j
  Random rng(19);
  const auto field = FrameField::standard();
  for (int i = 0; i < 300; ++i) {
    const auto a = rng.lorentz(1.0);
    const FourVector k = rng.null();
    const SO13Matrix L = so13_from_sl2c(a);
    const FourVector kb = L.inverse().apply(k);
    const auto e = minkowski_tetrad(field.at(k));
    const auto eb = minkowski_tetrad(field.at(kb));
    const auto formula = l_matrix_standard(wigner_data(a, field, k)).matrix();
    const double s = std::max(1.0, formula.cwiseAbs().maxCoeff());
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const double oracle = dot(e[r], L.apply(eb[c])) * (c == 0 ? 1.0 : -1.0);
        EXPECT_NEAR(formula(r, c), oracle, 1e-9 * s) << "entry " << r << c;
      }
  }
}

TEST(LMatrix, CcrFormPreserved) {
  EXPECT_TRUE(ccr_form_preserved(SO13Matrix::identity()));
  Random rng(20);
  for (int i = 0; i < 200; ++i)
    EXPECT_TRUE(ccr_form_preserved(l_matrix_standard({rng.uniform(-3, 3), rng.uniform(0, 1), rng.uniform(-3, 3)})));
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(1, 2) += 1e-3;
  EXPECT_FALSE(ccr_form_preserved(SO13Matrix(m)));
}

TEST(TriangularTransform, IdentityAndDiagonalPhases) {
  EXPECT_LT((triangular_transform({0.0, 0.0, 0.0}) - Eigen::Matrix4cd::Identity()).norm(), 1e-15);
  const double th = 0.8;
  const auto T = triangular_transform({th, 0.0, 0.0});
  Eigen::Matrix4cd d = Eigen::Matrix4cd::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = std::polar(1.0, 2 * th);
  d(2, 2) = std::polar(1.0, -2 * th);
  d(3, 3) = 1.0;
  EXPECT_LT((T - d).norm(), 1e-15);
  const auto U = triangular_transform({th, 0.6, 1.1});
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < r; ++c) EXPECT_EQ(std::abs(U(r, c)), 0.0) << r << c;
}

TEST(TriangularTransform, ComposesWithProductTransform) {
  // T(Lambda1 Lambda2, k) = T(Lambda1, k) T(Lambda2, Lambda1^{-1} k)
  Random rng(21);
  const auto field = FrameField::standard();
  for (int i = 0; i < 200; ++i) {
    const auto a = rng.lorentz(0.8), b = rng.lorentz(0.8);
    const FourVector k = rng.null();
    const FourVector kb = so13_from_sl2c(a).inverse().apply(k);
    const Eigen::Matrix4cd lhs = triangular_transform(wigner_data(a * b, field, k));
    const Eigen::Matrix4cd rhs =
        triangular_transform(wigner_data(a, field, k)) * triangular_transform(wigner_data(b, field, kb));
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, lhs.cwiseAbs().maxCoeff()));
  }
}

TEST(VMatrix, ZeroAndPureRotation) {
  EXPECT_LT((v_matrix(0.0, 0.0, 0.0).matrix() - Eigen::Matrix4d::Identity()).norm(), 1e-15);
  for (double th : {-1.0, 0.3, 1.4}) {
    Eigen::Matrix4d rot = Eigen::Matrix4d::Identity();
    rot(1, 1) = rot(2, 2) = std::cos(2 * th);
    rot(1, 2) = -std::sin(2 * th);
    rot(2, 1) = std::sin(2 * th);
    const auto V = v_matrix(th, 0.0, 0.0).matrix();
    // closed-form exponential of the 1-2 rotation generator, either orientation
    const double d = std::min((V - rot).norm(), (V - rot.transpose()).norm());
    EXPECT_LT(d, 1e-14);
    EXPECT_LT((V - l_matrix_com(th).matrix()).norm(), 1e-14);
  }
}

TEST(VMatrix, MatchesClosedFormForRandomData) {
  Random rng(22);
  for (int i = 0; i < 1000; ++i) {
    const double th = rng.uniform(-kPi / 2, kPi / 2), pa = rng.uniform(0.0, 3.0), xi = rng.uniform(-kPi, kPi);
    const auto L = l_matrix_standard({th, pa, xi}).matrix();
    EXPECT_LT((v_matrix(th, pa, xi).matrix() - L).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, L.cwiseAbs().maxCoeff()));
  }
}

TEST(VMatrix, GeneratorsCloseOnE2) {
  // [M1, M2] = 0 and [M3, M1], [M3, M2] stay in span(M1, M2)
  const auto M = e2_generators();
  EXPECT_LT((M[0] * M[1] - M[1] * M[0]).norm(), 1e-15);
  for (int j : {0, 1}) {
    const Eigen::Matrix4d c = M[2] * M[j] - M[j] * M[2];
    Eigen::Matrix<double, 16, 2> A;
    A.col(0) = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(M[0].data());
    A.col(1) = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(M[1].data());
    const Eigen::Matrix<double, 16, 1> b = Eigen::Map<const Eigen::Matrix<double, 16, 1>>(c.data());
    const Eigen::Vector2d x = A.colPivHouseholderQr().solve(b);
    EXPECT_LT((A * x - b).norm(), 1e-14);
  }
}

TEST(FrameField, UndefinedFrameIsReported) {
  const auto bad = FrameField::custom(
      [](const FourVector&, const FourVector&) -> SpinFrame { throw Error(Errc::NonFinite, "no frame"); },
      {1.0, 0.0, 0.0, 0.0}, false);
  expect_error(Errc::FrameUndefined, [&] { bad.at({1.0, 0.0, 0.0, 1.0}); });
}
