#include "milneqed/trajectory.hpp"

#include <cmath>

#include "milneqed/error.hpp"

namespace milneqed::stats {

namespace {
void check_velocity(const FourVector& u) {
  if (!u.is_finite() || u.t() <= 0.0 || std::abs(dot(u, u) - 1.0) > 1e-10)
    throw Error(Errc::NonTimelikeR, "four-velocity must be unit timelike and future-pointing");
}
}  // namespace

Trajectory::Trajectory(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw Error(Errc::InvalidArgument, "trajectory needs at least one segment");
  if (segments_.front().start != 0.0) throw Error(Errc::InvalidArgument, "trajectory must start at s = 0");
  FourVector X;
  for (std::size_t j = 0; j < segments_.size(); ++j) {
    check_velocity(segments_[j].u);
    if (j > 0) {
      if (!(segments_[j].start > segments_[j - 1].start) || !std::isfinite(segments_[j].start))
        throw Error(Errc::InvalidArgument, "switch times must be strictly increasing");
      X = X + (segments_[j].start - segments_[j - 1].start) * segments_[j - 1].u;
    }
    starts_.push_back(X);
  }
}

Trajectory Trajectory::uniform(const FourVector& u) { return Trajectory({{u, 0.0}}); }

Trajectory Trajectory::kinked(const FourVector& u, const FourVector& v, double tau1) {
  if (tau1 == 0.0) return Trajectory({{v, 0.0}});
  return Trajectory({{u, 0.0}, {v, tau1}});
}

namespace {
std::size_t segment_at(const std::vector<Segment>& segs, double s) {
  std::size_t j = 0;
  while (j + 1 < segs.size() && segs[j + 1].start <= s) ++j;
  return j;
}
}  // namespace

FourVector Trajectory::position(double s) const {
  const std::size_t j = segment_at(segments_, s);
  return starts_[j] + (s - segments_[j].start) * segments_[j].u;
}

FourVector Trajectory::velocity(double s) const { return segments_[segment_at(segments_, s)].u; }

std::vector<std::complex<double>> Trajectory::segment_integrals(const FourVector& k, double tau) const {
  if (tau < 0.0) throw Error(Errc::NegativeTau, "tau must be non-negative");
  std::vector<std::complex<double>> c(segments_.size());
  for (std::size_t j = 0; j < segments_.size(); ++j) {
    const double s0 = segments_[j].start;
    if (s0 >= tau) break;
    const double s1 = j + 1 < segments_.size() ? std::min(segments_[j + 1].start, tau) : tau;
    const double d = s1 - s0;
    const double a = dot(k, segments_[j].u);
    const double x = 0.5 * a * d;
    const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    const double ph = dot(k, starts_[j]) + x;
    c[j] = d * sinc * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  return c;
}

}  // namespace milneqed::stats
