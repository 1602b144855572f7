#pragma once

#include <complex>
#include <vector>

#include "milneqed/minkowski.hpp"

namespace milneqed::stats {

struct Segment {
  FourVector u;        // unit timelike, future-pointing
  double start = 0.0;  // proper time at which this velocity takes over
};

/// Piecewise-inertial worldline X(s) starting at the origin at s = 0.
class Trajectory {
 public:
  /// Throws InvalidArgument for an empty list, a first segment not starting
  /// at 0, non-increasing switch times, and NonTimelikeR for bad velocities.
  explicit Trajectory(std::vector<Segment> segments);

  static Trajectory uniform(const FourVector& u);
  /// u on [0, tau1), v afterwards.
  static Trajectory kinked(const FourVector& u, const FourVector& v, double tau1);

  const std::vector<Segment>& segments() const { return segments_; }
  FourVector position(double s) const;
  FourVector velocity(double s) const;

  /// c_j = int over the part of segment j inside [0, tau] of e^{i k.X(s)} ds;
  /// the current integral is sum_j u_j c_j.
  std::vector<std::complex<double>> segment_integrals(const FourVector& k, double tau) const;

 private:
  std::vector<Segment> segments_;
  std::vector<FourVector> starts_;  // X at each switch point
};

}  // namespace milneqed::stats
