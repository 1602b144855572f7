#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "milneqed/minkowski.hpp"

namespace milneqed {

/// Vacuum momentum density Z0(k) = Z chi(k) with 0 <= chi <= 1, max chi = 1,
/// normalised so that the invariant integral d~k Z0 over the light cone is 1
/// (d~k = d^3k / ((2 pi)^3 2|k|)). Rest-frame profiles are isotropic; boosted
/// copies evaluate chi(Lambda^{-1} k).
class CutoffProfile {
 public:
  enum class Kind { Step, Smoothed, Custom };

  /// chi = 1 on [k1, k2]. Throws EmptySupport unless k2 > k1 >= 0.
  static CutoffProfile step(double k1, double k2);
  /// Raised-cosine edges of half-width eps centred on k1 and k2; with k1 = 0
  /// the plateau extends down to k = 0. Throws EmptySupport or
  /// InvalidArgument when the edges overlap.
  static CutoffProfile smoothed(double k1, double k2, double eps);
  /// Arbitrary non-negative radial shape supported on [0, k_max]. The shape
  /// is rescaled to unit maximum (sampled on a fine grid plus `breaks`).
  static CutoffProfile custom(std::function<double(double)> shape, double k_max, std::vector<double> breaks = {});

  Kind kind() const { return kind_; }
  double k1() const { return k1_; }
  double k2() const { return k2_; }
  double eps() const { return eps_; }
  /// Maximum of Z0; also the plateau value.
  double Z() const { return Z_; }

  /// Rest-frame chi as a function of |k|.
  double chi_radial(double kmag) const;
  /// chi(Lambda^{-1} k); k is assumed null.
  double chi(const FourVector& k) const;
  double z0(const FourVector& k) const { return Z_ * chi(k); }
  double chi_at_origin() const { return chi_radial(0.0); }

  /// Rest-frame radial support and interior non-smooth points, ascending.
  double support_min() const { return lo_; }
  double support_max() const { return hi_; }
  const std::vector<double>& breaks() const { return breaks_; }

  /// Along the unit direction n the radial argument of chi is s(n) |k| with
  /// s(n) = (Lambda^{-1}(1, n))^0; s = 1 for unboosted profiles.
  double radial_scale(const Vec3& n) const;

  /// Profile k -> chi(Lambda^{-1} k), composed with any earlier boost.
  CutoffProfile boosted(const SO13Matrix& lambda) const;
  bool is_boosted() const { return boosted_; }
  /// Lambda^{-1} of the accumulated boost (identity when unboosted).
  const SO13Matrix& inverse_boost() const { return inverse_; }

 private:
  CutoffProfile() = default;
  void normalise();

  Kind kind_ = Kind::Step;
  double k1_ = 0.0, k2_ = 0.0, eps_ = 0.0;
  double Z_ = 1.0;
  double shape_scale_ = 1.0;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> breaks_;
  std::shared_ptr<const std::function<double(double)>> shape_;
  SO13Matrix inverse_;
  bool boosted_ = false;
};

/// q_ren = Z^{1/2} q; for the sharp step q_ren = 2 sqrt(2) pi q / sqrt(k2^2 - k1^2).
double q_renormalized(double q, const CutoffProfile& profile);

}  // namespace milneqed
