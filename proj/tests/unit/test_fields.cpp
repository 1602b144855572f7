#include <gtest/gtest.h>

#include <cmath>

#include "milneqed/error.hpp"
#include "milneqed/fields.hpp"
#include "support.hpp"

using namespace milneqed;
using milneqed::testing::gk;
using milneqed::testing::kPi;
using milneqed::testing::Random;
using milneqed::testing::si_oracle;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

StaticChargeParams unit_charge(const CutoffProfile& prof) { return StaticChargeParams::from_renormalized(1.0, prof); }

// int_lo^hi g on panels no wider than `width`.
template <class G>
double paneled(G g, double lo, double hi, double width) {
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += gk(g, lo + (hi - lo) * i / n, lo + (hi - lo) * (i + 1) / n, 1e-14);
  return s;
}

// Integral representation of A0 for q_ren = 1, integrated directly.
double a0_oracle(double tau, double r, const CutoffProfile& prof) {
  const double x0 = std::hypot(tau, r);
  auto g = [&](double k) {
    return k == 0.0 ? 0.0 : prof.chi_radial(k) * (std::cos(k * (x0 - tau)) - std::cos(k * x0)) * std::sin(k * r) / k;
  };
  return paneled(g, prof.support_min(), prof.support_max(), kPi / (x0 + r)) / (2.0 * kPi * kPi * r);
}

double asymptotic_oracle(double r, const CutoffProfile& prof) {
  auto g = [&](double k) { return k == 0.0 ? r : prof.chi_radial(k) * std::sin(k * r) / k; };
  return paneled(g, prof.support_min(), prof.support_max(), kPi / r) / (2.0 * kPi * kPi * r);
}

double rho_oracle(double r, double k1, double k2) {
  return paneled([&](double k) { return k * std::sin(k * r); }, k1, k2, kPi / r) / (2.0 * kPi * kPi * r);
}

}  // namespace

TEST(Potential, IrreducibleBaseline) {
  EXPECT_EQ(potential_irreducible(0.0, 1.0, 2.0), 0.0);
  EXPECT_NEAR(potential_irreducible(1e-9, 0.5, 2.0), 1.0 / kPi, 1e-15);
  EXPECT_EQ(code_of([] { potential_irreducible(1.0, 0.0, 1.0); }), Errc::NonPositiveR);
}

TEST(Potential, VanishesAtTauZero) {
  for (double k1 : {0.0, 150.0}) {
    const auto p = unit_charge(CutoffProfile::step(k1, 1e3));
    for (double r : {1e-8, 1e-3, 0.1, 10.0}) EXPECT_NEAR(potential_A0(0.0, r, p), 0.0, 1e-12) << r;
  }
  EXPECT_EQ(potential_A0(0.0, 0.01, unit_charge(CutoffProfile::smoothed(100.0, 1e3, 50.0))), 0.0);
}

TEST(Potential, StepMatchesDirectQuadrature) {
  const double k2 = 1e3;
  for (double k1 : {0.0, 150.0}) {
    const auto p = unit_charge(CutoffProfile::step(k1, k2));
    for (double tk : {0.05, 1.0, 30.0})
      for (double rk : {1e-5, 1e-3, 0.5, 7.0, 200.0}) {
        const double tau = tk / k2, r = rk / k2;
        EXPECT_NEAR(potential_A0(tau, r, p), a0_oracle(tau, r, p.profile), 1e-10 * k2) << tk << " " << rk;
      }
  }
}

TEST(Potential, SmoothedMatchesDirectQuadrature) {
  const auto p = unit_charge(CutoffProfile::smoothed(50.0, 1e3, 40.0));
  for (double tau : {2e-4, 3e-3, 0.05})
    for (double r : {1e-4, 2e-3, 0.04}) {
      const double oracle = a0_oracle(tau, r, p.profile);
      EXPECT_NEAR(potential_A0(tau, r, p), oracle, 1e-8 * std::abs(oracle) + 1e-10) << tau << " " << r;
    }
}

TEST(Potential, SmallRExpansionJoinsSineIntegralForm) {
  const double k2 = 1e4;
  const auto p = unit_charge(CutoffProfile::step(150.0, k2));
  for (double tk : {0.3, 3.0}) {
    const double tau = tk / k2;
    const double below = potential_A0(tau, 0.999999e-4 / k2, p);
    const double above = potential_A0_si_terms(tau, 1.000001e-4 / k2, p);
    EXPECT_NEAR(below, above, 1e-9 * k2);
  }
}

TEST(Potential, OriginLimit) {
  const double k1 = 150.0, k2 = 1e3;
  const auto p = unit_charge(CutoffProfile::step(k1, k2));
  for (double tau : {1e-5, 1e-3, 0.1}) {
    // (1/2 pi^2) int (1 - cos k tau) dk
    const double hand = (k2 - k1 - (std::sin(k2 * tau) - std::sin(k1 * tau)) / tau) / (2.0 * kPi * kPi);
    EXPECT_NEAR(potential_A0_origin(tau, p), hand, 1e-12 * k2);
    EXPECT_NEAR(potential_A0(tau, 1e-9, p), hand, 1e-9 * k2);
  }
}

TEST(Potential, LongTimeLimit) {
  const double k2 = 1e4;
  for (double k1 : {0.0, 150.0}) {
    const auto p = unit_charge(CutoffProfile::step(k1, k2));
    for (double rk : {0.3, 10.0, 1e3}) {
      const double r = rk / k2;
      const double si = (si_oracle(k2 * r) - si_oracle(k1 * r)) / (2.0 * kPi * kPi * r);
      EXPECT_NEAR(potential_asymptotic(r, p), si, 1e-12 * std::abs(si));
      // the limit needs k2 r^2 / tau << 1
      EXPECT_NEAR(potential_A0(1e6 * std::max(1.0 / k2, k2 * r * r), r, p), si, 1e-4 * std::abs(si)) << rk;
    }
  }
}

TEST(Potential, AsymptoticSmoothProfile) {
  const auto p = unit_charge(CutoffProfile::smoothed(0.0, 300.0, 30.0));
  for (double r : {1e-3, 0.05, 2.0}) {
    const double oracle = asymptotic_oracle(r, p.profile);
    EXPECT_NEAR(potential_asymptotic(r, p), oracle, 1e-9 * std::abs(oracle));
  }
}

TEST(Potential, ApproachesCoulombWhenK1IsZero) {
  // Si -> pi/2, so A -> 1/(4 pi r) once k2 r >> 1
  const auto p = unit_charge(CutoffProfile::step(0.0, 1e4));
  const double r = 1.0;
  EXPECT_NEAR(potential_asymptotic(r, p) * 4.0 * kPi * r, 1.0, 1e-4);
}

TEST(Potential, Errors) {
  const auto p = unit_charge(CutoffProfile::step(0.0, 1e3));
  EXPECT_EQ(code_of([&] { potential_A0(-1.0, 1.0, p); }), Errc::NegativeTau);
  EXPECT_EQ(code_of([&] { potential_A0(1.0, -1.0, p); }), Errc::NonPositiveR);
  EXPECT_EQ(code_of([&] { potential_asymptotic(0.0, p); }), Errc::NonPositiveR);
}

TEST(ChargeDensity, StepMatchesOracle) {
  const double k1 = 150.0, k2 = 1e3;
  const auto p = unit_charge(CutoffProfile::step(k1, k2));
  for (double r : {1e-6, 1e-3, 0.02, 0.5}) {
    const auto parts = rho_eff_parts(r, p);
    const double oracle = rho_oracle(r, k1, k2);
    EXPECT_NEAR(parts.total, oracle, 1e-9 * std::abs(rho_oracle(r, 0.0, k2)));
    EXPECT_NEAR(parts.k2_part + parts.k1_part, parts.total, 1e-12 * std::abs(parts.k2_part));
    EXPECT_NEAR(parts.k2_part, rho_oracle(r, 0.0, k2), 1e-9 * std::abs(parts.k2_part) + 1e-6);
    EXPECT_NEAR(rho_general(r, p), parts.total, 1e-8 * std::abs(parts.k2_part));
  }
  // r = 0: (k2^3 - k1^3) / (6 pi^2)
  EXPECT_NEAR(rho_eff(0.0, p), (k2 * k2 * k2 - k1 * k1 * k1) / (6.0 * kPi * kPi), 1e-6);
  EXPECT_EQ(rho_eff_parts(0.3, unit_charge(CutoffProfile::step(0.0, k2))).k1_part, 0.0);
}

TEST(ChargeDensity, LaplacianOfKnownFunctions) {
  // A = e^{-r}: -laplacian A = (2 - r) e^{-r} / r
  for (double r : {0.01, 0.5, 3.0}) {
    const auto d = radial_laplacian([](double s) { return std::exp(-s); }, r);
    const double exact = (2.0 - r) * std::exp(-r) / r;
    EXPECT_NEAR(d.value, exact, 1e-7 * std::abs(exact));
    EXPECT_LE(std::abs(d.value - exact), std::max(d.error, 1e-12 * std::abs(exact)));
  }
  // Coulomb is harmonic away from the origin
  EXPECT_NEAR(radial_laplacian([](double s) { return 1.0 / s; }, 2.0, 1e-2).value, 0.0, 1e-8);
}

TEST(ChargeDensity, IsMinusLaplacianOfAsymptoticPotential) {
  const auto p = unit_charge(CutoffProfile::step(150.0, 1e3));
  for (double r : {3e-4, 5e-3}) {
    const auto d = radial_laplacian([&](double s) { return potential_asymptotic(s, p); }, r);
    EXPECT_NEAR(d.value, rho_eff(r, p), 1e-6 * std::abs(rho_eff(r, p)));
  }
}

TEST(TotalCharge, StepClosedFormAndVerdict) {
  const double k1 = 150.0, k2 = 1e3;
  const auto p = unit_charge(CutoffProfile::step(k1, k2));
  const double R = 0.37;
  const auto c = total_charge(p, R);
  const double hand =
      2.0 / kPi * (std::sin(k1 * R) - std::sin(k2 * R) + si_oracle(k2 * R) - si_oracle(k1 * R));
  ASSERT_TRUE(c.closed_form.has_value());
  EXPECT_NEAR(*c.closed_form, hand, 1e-12);
  EXPECT_NEAR(c.Q, hand, 1e-8);
  EXPECT_EQ(c.verdict, ChargeVerdict::Oscillating);
  EXPECT_FALSE(c.converged);
  EXPECT_GT(c.spread, 0.1);
}

TEST(TotalCharge, SmoothProfilesSettle) {
  const double k2 = 1e3;
  const auto zero = total_charge(unit_charge(CutoffProfile::smoothed(150.0, k2, 50.0)), 10.0);
  EXPECT_EQ(zero.verdict, ChargeVerdict::Zero);
  EXPECT_NEAR(zero.Q, 0.0, 1e-3);
  const auto full = total_charge(unit_charge(CutoffProfile::smoothed(0.0, k2, 50.0)), 10.0);
  EXPECT_EQ(full.verdict, ChargeVerdict::Renormalized);
  EXPECT_NEAR(full.Q, 1.0, 1e-3);
  // the step plus smoothing takes the same path
  const auto via = total_charge(unit_charge(CutoffProfile::step(0.0, k2)), 10.0, 50.0);
  EXPECT_NEAR(via.Q, full.Q, 1e-12);
}

TEST(TotalCharge, GaussLawAtFiniteRadius) {
  // enclosed flux against 4 pi int r^2 rho with the density from its own oracle
  const auto prof = CutoffProfile::smoothed(0.0, 40.0, 10.0);
  const auto p = unit_charge(prof);
  const double R = 0.6;
  auto rho = [&](double r) {
    return paneled([&](double k) { return prof.chi_radial(k) * k * std::sin(k * r); }, 0.0, 50.0, 5.0) /
           (2.0 * kPi * kPi * r);
  };
  const double volume = gk([&](double r) { return 4.0 * kPi * r * r * rho(r); }, 1e-12, R, 1e-12);
  EXPECT_NEAR(total_charge(p, R).Q, volume, 1e-9);
}

TEST(FreeField, VanishesWithoutAmplitudes) {
  const CoherentAmplitudes zero{[](const FourVector&) { return cplx{}; }, [](const FourVector&) { return cplx{}; }};
  const auto p = unit_charge(CutoffProfile::step(1.0, 4.0));
  const FreeFieldAverage avg(zero, p, RDistribution::point_mass(), QuadratureSpec{});
  const FourVector A = avg.potential({0.3, 0.1, -0.2, 0.4});
  for (int a = 0; a < 4; ++a) EXPECT_EQ(A[a], 0.0);
  EXPECT_EQ(avg.amplitude_norm(), 0.0);
}

TEST(FreeField, ConstantAmplitudeNorm) {
  // int d~k Z0 = 1, so the norm is |alpha_+|^2 + |alpha_-|^2
  const CoherentAmplitudes amps{[](const FourVector&) { return cplx(0.6, 0.8); },
                                [](const FourVector&) { return cplx(0.0, 2.0); }};
  const auto p = unit_charge(CutoffProfile::smoothed(0.5, 4.0, 0.25));
  const FreeFieldAverage avg(amps, p, RDistribution::point_mass(), QuadratureSpec{});
  EXPECT_NEAR(avg.amplitude_norm(), 5.0, 1e-8);
}

TEST(FreeField, TransverseAndLorenz) {
  // Lorenz residual within its reported bound
  Random rng(41);
  const CoherentAmplitudes amps{[](const FourVector& k) { return cplx(std::cos(k.x()), 0.3); },
                                [](const FourVector& k) { return cplx(0.2, std::sin(k.z())); }};
  const auto p = unit_charge(CutoffProfile::smoothed(0.5, 4.0, 0.25));
  const FreeFieldAverage avg(amps, p, RDistribution::point_mass(), QuadratureSpec{});
  for (int i = 0; i < 5; ++i) {
    const FourVector x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const auto res = avg.lorenz_residual(x);
    EXPECT_LE(res.value, 10.0 * res.error + 1e-12);
    // transverse legs of a rest-frame R have no time component
    EXPECT_NEAR(avg.potential(x)[0], 0.0, 1e-14);
  }
}
