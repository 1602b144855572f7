#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "milneqed/cutoff.hpp"
#include "milneqed/minkowski.hpp"
#include "milneqed/quadrature.hpp"

namespace milneqed {

enum class AngularSymmetry {
  Isotropic,  // integrand independent of direction: one direction (z) times 4 pi
  Axial,      // independent of the azimuth about z: phi = 0 times 2 pi
  General,
};

enum class LightconeWeight { Z0, Chi };

/// Radial part along a fixed direction. `omega` > 0 marks an oscillation
/// frequency in |k| used to split the radial domain.
struct RadialIntegrand {
  VectorFn f;
  double omega = 0.0;
};

/// Called once per direction so that direction-only data (tetrads, velocity
/// projections) is computed once.
using DirectionalIntegrand = std::function<RadialIntegrand(const Vec3& n)>;

struct LightconeResult {
  std::vector<double> value;
  std::vector<double> error;
};

/// integral d~k w(k) f(k) with w = Z0 or chi, d~k = k dk dOmega / (16 pi^3).
/// cos(theta) is integrated adaptively, phi by the trapezoid rule with
/// 2 * angular_order points, |k| adaptively between the profile breaks.
LightconeResult lightcone_integral(const DirectionalIntegrand& g, std::size_t dim, const CutoffProfile& profile,
                                   const QuadratureSpec& spec, AngularSymmetry symmetry = AngularSymmetry::General,
                                   LightconeWeight weight = LightconeWeight::Z0);

QuadResult lightcone_integral(const std::function<double(const FourVector&)>& f, const CutoffProfile& profile,
                              const QuadratureSpec& spec, AngularSymmetry symmetry = AngularSymmetry::General,
                              LightconeWeight weight = LightconeWeight::Z0);

}  // namespace milneqed
