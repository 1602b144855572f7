#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "milneqed/error.hpp"
#include "milneqed/minkowski.hpp"
#include "milneqed/quadrature.hpp"

namespace milneqed {

/// Density Z1(R) on the unit hyperboloid, normalised against
/// d~R = d^3R / ((2 pi)^3 2 R^0).
class RDistribution {
 public:
  enum class Kind { PointMass, RapidityGaussian };

  static RDistribution point_mass(const FourVector& R0 = {1.0, 0.0, 0.0, 0.0});
  /// Z1 proportional to exp(-eta^2 / (2 sigma^2)), eta the rapidity relative to R0.
  static RDistribution rapidity_gaussian(const FourVector& R0, double sigma);

  Kind kind() const { return kind_; }
  const FourVector& R0() const { return R0_; }
  double sigma() const { return sigma_; }
  /// Frame taking (1,0,0,0) to R0; nodes are frame * (cosh eta, sinh eta n).
  const SO13Matrix& frame() const { return frame_; }

  /// Density R -> Z1(Lambda^{-1} R).
  RDistribution boosted(const SO13Matrix& lambda) const;

 private:
  Kind kind_ = Kind::PointMass;
  FourVector R0_{1.0, 0.0, 0.0, 0.0};
  double sigma_ = 0.0;
  SO13Matrix frame_;
};

struct RNode {
  FourVector R;
  double weight;
};

/// Product rule: order/2 (at least 4) Gauss-Legendre points per eta panel of
/// width <= 2 sigma on [0, 8 sigma + 2 sigma^2], order/2 (at least 2) in
/// cos(theta), order in phi. Weights sum to 1.
/// With `axis`, the polar axis is the direction of `axis` in the rest frame
/// of R0, so integrands depending on R only through R.axis are integrated
/// exactly in phi and the rule moves rigidly with boosts of (dist, axis).
std::vector<RNode> r_nodes(const RDistribution& dist, int order, const std::optional<FourVector>& axis = {});

/// Pure boost taking (1,0,0,0) to the unit timelike R.
SO13Matrix boost_to(const FourVector& R);

/// Average of g(R) (double or Eigen matrix) over Z1 d~R. A point mass returns
/// g(R0). `axis` orients the node set as in r_nodes. Gaussians compare the rule at angular_order with one 1.5x finer and
/// throw ToleranceNotMet if they disagree beyond rel_tol / abs_tol.
template <class G>
auto r_average(G&& g, const RDistribution& dist, const QuadratureSpec& spec,
               const std::optional<FourVector>& axis = {}) {
  using T = std::decay_t<decltype(g(dist.R0()))>;
  if (dist.kind() == RDistribution::Kind::PointMass) return T(g(dist.R0()));
  spec.validate();
  auto run = [&](int order) {
    const auto nodes = r_nodes(dist, order, axis);
    T acc = T(nodes.front().weight * g(nodes.front().R));
    for (std::size_t i = 1; i < nodes.size(); ++i) acc = acc + nodes[i].weight * g(nodes[i].R);
    return acc;
  };
  const int order = std::max(spec.angular_order, 4);
  const T fine = run(order + order / 2);
  const T coarse = run(order);
  double diff, mag;
  if constexpr (std::is_arithmetic_v<T>) {
    diff = std::abs(fine - coarse);
    mag = std::abs(fine);
  } else {
    diff = (fine - coarse).cwiseAbs().maxCoeff();
    mag = fine.cwiseAbs().maxCoeff();
  }
  if (!(diff <= std::max(spec.abs_tol, spec.rel_tol * mag)))
    throw Error(Errc::ToleranceNotMet, "R average not converged at angular order " + std::to_string(order));
  return fine;
}

}  // namespace milneqed
