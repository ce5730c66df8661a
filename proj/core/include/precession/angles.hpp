#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace precession {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Probing angles: first entry 0, ascending, all in [0, 2pi), odd size >= 3.
class AngleSet {
 public:
  AngleSet() = default;
  const std::vector<double>& values() const { return theta_; }
  int size() const { return int(theta_.size()); }
  double operator[](int k) const { return theta_[k]; }

 private:
  friend AngleSet canonicalize(std::span<const double> raw);
  std::vector<double> theta_;
};

// Reduce mod 2pi, sort, shift so the first angle is 0. Throws ValidationError
// unless the count is odd and at least 3.
AngleSet canonicalize(std::span<const double> raw);
AngleSet canonicalize(std::initializer_list<double> raw);

// (0, 2pi/3, 4pi/3)
AngleSet theta3();
// (0, theta1, theta2)
AngleSet three_angles(double theta1, double theta2);

enum class Region { Interior, Boundary, Outside };
std::string to_string(Region r);

struct ClassicalMax {
  int delta;  // largest admissible shift
  int K;
  Region region;
  long numerator() const;    // score = numerator / denominator, reduced
  long denominator() const;
  double value() const { return 1.0 - double(delta) / K; }
};

// Largest delta in [0, (K-1)/2] with (theta[k+delta] - theta[k]) mod 2pi <= pi
// for every k. Gaps within 1e-12 of pi count as satisfied and mark Boundary.
ClassicalMax classical_max_score(const AngleSet& angles);

// Score of the deterministic strategy whose sign flips at phi.
double classical_score_at(const AngleSet& angles, double phi);

// Centred triangle coordinates for K = 3.
Eigen::Vector2d to_vartheta(const AngleSet& angles);
AngleSet from_vartheta(const Eigen::Vector2d& vartheta);

// The three re-labellings of a K = 3 set that describe the same protocol.
std::array<AngleSet, 3> equivalent_sets(const AngleSet& angles);

// Representative whose vartheta lies in the sector with polar angle in [pi/6, 5pi/6).
AngleSet fundamental_representative(const AngleSet& angles);

}  // namespace precession
