#include "precession/angles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "precession/errors.hpp"

namespace precession {

namespace {

constexpr double kGapTol = 1e-12;

double wrap(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

const Eigen::Matrix2d& vartheta_map() {
  static const Eigen::Matrix2d m = (Eigen::Matrix2d() << 1.0, -0.5, 0.0, std::sqrt(3.0) / 2.0).finished();
  return m;
}

}  // namespace

AngleSet canonicalize(std::span<const double> raw) {
  const size_t k = raw.size();
  if (k < 3 || k % 2 == 0) {
    std::ostringstream os;
    os << "canonicalize: need an odd number of angles >= 3, got " << k;
    throw ValidationError(os.str());
  }
  std::vector<double> t(k);
  for (size_t i = 0; i < k; ++i) {
    if (!std::isfinite(raw[i])) throw ValidationError("canonicalize: non-finite angle");
    t[i] = wrap(raw[i]);
  }
  std::sort(t.begin(), t.end());
  const double first = t[0];
  for (auto& x : t) x = wrap(x - first);
  std::sort(t.begin(), t.end());
  AngleSet out;
  out.theta_ = std::move(t);
  return out;
}

AngleSet canonicalize(std::initializer_list<double> raw) {
  return canonicalize(std::span<const double>(raw.begin(), raw.size()));
}

AngleSet theta3() { return canonicalize({0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0}); }

AngleSet three_angles(double theta1, double theta2) { return canonicalize({0.0, theta1, theta2}); }

std::string to_string(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Boundary: return "boundary";
    case Region::Outside: return "outside";
  }
  return "unknown";
}

long ClassicalMax::numerator() const {
  const long g = std::gcd(long(K - delta), long(K));
  return (K - delta) / g;
}

long ClassicalMax::denominator() const {
  const long g = std::gcd(long(K - delta), long(K));
  return K / g;
}

ClassicalMax classical_max_score(const AngleSet& angles) {
  const int K = angles.size();
  const auto& t = angles.values();
  auto gap = [&](int k, int d) { return wrap(t[(k + d) % K] - t[k]); };
  for (int d = (K - 1) / 2; d >= 0; --d) {
    bool ok = true, tight = false;
    for (int k = 0; k < K && ok; ++k) {
      const double g = d == 0 ? 0.0 : gap(k, d);
      if (g > kPi + kGapTol) ok = false;
      else if (g > kPi - kGapTol) tight = true;
    }
    if (ok) {
      Region region = Region::Outside;
      if (d == (K - 1) / 2) region = tight ? Region::Boundary : Region::Interior;
      return {d, K, region};
    }
  }
  return {0, K, Region::Outside};
}

double classical_score_at(const AngleSet& angles, double phi) {
  double s = 0.0;
  for (double th : angles.values()) {
    const double c = std::cos(th - phi);
    if (std::abs(c) < 1e-15) s += 0.5;
    else if (c > 0) s += 1.0;
  }
  return s / angles.size();
}

Eigen::Vector2d to_vartheta(const AngleSet& angles) {
  if (angles.size() != 3) throw ValidationError("to_vartheta: defined for three angles only");
  const Eigen::Vector2d d(angles[1] - 2.0 * kPi / 3.0, angles[2] - 4.0 * kPi / 3.0);
  return vartheta_map() * d;
}

AngleSet from_vartheta(const Eigen::Vector2d& vartheta) {
  const Eigen::Vector2d d = vartheta_map().inverse() * vartheta;
  return canonicalize({0.0, 2.0 * kPi / 3.0 + d[0], 4.0 * kPi / 3.0 + d[1]});
}

std::array<AngleSet, 3> equivalent_sets(const AngleSet& angles) {
  if (angles.size() != 3) throw ValidationError("equivalent_sets: defined for three angles only");
  const double t1 = angles[1], t2 = angles[2];
  return {canonicalize({0.0, t1, t2}), canonicalize({-t1, 0.0, t2 - t1}), canonicalize({-t2, t1 - t2, 0.0})};
}

AngleSet fundamental_representative(const AngleSet& angles) {
  const auto sets = equivalent_sets(angles);
  const Eigen::Vector2d v0 = to_vartheta(sets[0]);
  if (v0.norm() < 1e-14) return sets[0];
  int best = 0;
  double best_dist = 1e300;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector2d v = to_vartheta(sets[i]);
    const double arg = std::atan2(v[1], v[0]);
    if (arg >= kPi / 6.0 && arg < 5.0 * kPi / 6.0) return sets[i];
    const double dist = std::abs(std::remainder(arg - kPi / 2.0, kTwoPi));
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return sets[best];
}

}  // namespace precession
