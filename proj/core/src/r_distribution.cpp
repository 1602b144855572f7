#include "milneqed/r_distribution.hpp"

#include <algorithm>
#include <numbers>

namespace milneqed {

SO13Matrix boost_to(const FourVector& R) {
  const double g = R.t();
  const Vec3 p = R.spatial();
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = g;
  for (int i = 0; i < 3; ++i) {
    m(0, i + 1) = m(i + 1, 0) = p[i];
    for (int j = 0; j < 3; ++j) m(i + 1, j + 1) += p[i] * p[j] / (1.0 + g);
  }
  return SO13Matrix(m);
}

namespace {
void check_unit_timelike(const FourVector& R) {
  if (!R.is_finite() || R.t() <= 0.0 || std::abs(dot(R, R) - 1.0) > 1e-10)
    throw Error(Errc::NonTimelikeR, "R0 must be unit timelike and future-pointing");
}
}  // namespace

RDistribution RDistribution::point_mass(const FourVector& R0) {
  check_unit_timelike(R0);
  RDistribution d;
  d.kind_ = Kind::PointMass;
  d.R0_ = R0;
  d.frame_ = boost_to(R0);
  return d;
}

RDistribution RDistribution::rapidity_gaussian(const FourVector& R0, double sigma) {
  check_unit_timelike(R0);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(Errc::InvalidArgument, "rapidity width must be positive");
  RDistribution d;
  d.kind_ = Kind::RapidityGaussian;
  d.R0_ = R0;
  d.sigma_ = sigma;
  d.frame_ = boost_to(R0);
  return d;
}

RDistribution RDistribution::boosted(const SO13Matrix& lambda) const {
  RDistribution d = *this;
  d.R0_ = lambda.apply(R0_);
  d.frame_ = lambda * frame_;
  return d;
}

namespace {
// Rotation taking the z axis to the unit vector n.
SO13Matrix rotation_to(const Vec3& n) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  const Eigen::Vector3d z(0.0, 0.0, 1.0), t(n[0], n[1], n[2]);
  const double c = t.dot(z);
  if (c < -1.0 + 1e-15) {
    m(1, 1) = -1.0;
    m(3, 3) = -1.0;
  } else {
    const Eigen::Vector3d v = z.cross(t);
    Eigen::Matrix3d vx;
    vx << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
    m.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() + vx + vx * vx / (1.0 + c);
  }
  return SO13Matrix(m);
}
}  // namespace

std::vector<RNode> r_nodes(const RDistribution& dist, int order, const std::optional<FourVector>& axis) {
  if (dist.kind() == RDistribution::Kind::PointMass) return {{dist.R0(), 1.0}};
  if (order < 2) throw Error(Errc::InvalidArgument, "R quadrature order must be at least 2");
  const double s = dist.sigma();
  const double eta_max = 8.0 * s + 2.0 * s * s;
  // composite rule in eta, panels of width <= 2 sigma
  const int panels = static_cast<int>(std::ceil(eta_max / (2.0 * s)));
  const auto [xg, wg] = gauss_legendre(std::max(4, order / 2));
  std::vector<double> xe, we;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < xg.size(); ++i) {
      xe.push_back(eta_max * (p + 0.5 * (xg[i] + 1.0)) / panels);
      we.push_back(wg[i]);
    }
  const auto [xc, wc] = gauss_legendre(std::max(2, order / 2));
  const int nphi = order;
  SO13Matrix frame = dist.frame();
  bool aligned = false;
  if (axis) {
    const Vec3 a = dist.frame().inverse().apply(*axis).spatial();
    const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    if (norm > 0.0) {
      frame = frame * rotation_to({a[0] / norm, a[1] / norm, a[2] / norm});
      aligned = true;
    }
  }

  std::vector<RNode> nodes;
  nodes.reserve(xe.size() * xc.size() * nphi);
  double total = 0.0;
  for (std::size_t i = 0; i < xe.size(); ++i) {
    const double eta = xe[i];
    const double sh = std::sinh(eta), ch = std::cosh(eta);
    const double radial = we[i] * sh * sh * std::exp(-0.5 * eta * eta / (s * s));
    for (std::size_t j = 0; j < xc.size(); ++j) {
      // Aligned rules use t = ln(cosh eta - sinh eta cos theta), which makes
      // powers of 1 / (R.axis) smooth in t.
      double ct = xc[j], wt = wc[j];
      if (aligned && eta > 0.0) {
        const double d = std::exp(eta * xc[j]);
        ct = std::clamp((ch - d) / sh, -1.0, 1.0);
        wt = wc[j] * eta * d / sh;
      }
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int l = 0; l < nphi; ++l) {
        const double ph = 2.0 * std::numbers::pi * (l + 0.5) / nphi;
        const FourVector local{ch, sh * st * std::cos(ph), sh * st * std::sin(ph), sh * ct};
        const double w = radial * wt;
        nodes.push_back({frame.apply(local), w});
        total += w;
      }
    }
  }
  for (auto& n : nodes) n.weight /= total;
  return nodes;
}

}  // namespace milneqed
