#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "precession/angles.hpp"
#include "precession/linalg.hpp"

namespace precession {

// Spin j is passed as two_j = 2j >= 1. Basis |j, m> with m descending.
struct AngularMomentum {
  int two_j;
  RMatrix jx, jz;
  CMatrix jy;
  RVector m;  // diagonal of jz
};
AngularMomentum angular_momentum_ops(int two_j);

// Theta(J_x) with Theta(0) = 1/2, built as R Theta(J_z) R^dagger, R = exp(-i pi J_y / 2).
RMatrix theta_jx(int two_j);

// Precomputed Theta(J_x) for repeated score evaluations.
class SpinProtocol {
 public:
  explicit SpinProtocol(int two_j);
  int two_j() const { return two_j_; }
  const RMatrix& theta() const { return theta_; }
  const RVector& m() const { return m_; }

  // (1/K) sum_k e^{-i theta_k J_z} Theta(J_x) e^{i theta_k J_z}
  HermitianMatrix q(const AngleSet& angles) const;
  double max_score(const AngleSet& angles) const;
  EigenPair max_pair(const AngleSet& angles) const;

  // d lambda_max / d theta_k for k = 1..K-1 (theta_0 stays at 0), from the
  // rank-four form of [Theta(J_x), J_z].
  std::vector<double> gradient(const AngleSet& angles) const;
  // Same derivative through the dense commutator.
  std::vector<double> gradient_commutator(const AngleSet& angles) const;

  // Raw angle lists (any order, any count). The gradient covers every entry.
  HermitianMatrix q(std::span<const double> theta) const;
  std::vector<double> gradient(std::span<const double> theta) const;
  std::vector<double> gradient_commutator(std::span<const double> theta) const;

 private:
  int two_j_;
  RVector m_;
  RMatrix theta_;
  CMatrix rot_;   // exp(-i pi J_y / 2)
  RMatrix comm_;  // [Theta(J_x), J_z]
};

HermitianMatrix q_spin(int two_j, const AngleSet& angles);
std::vector<double> score_gradient(int two_j, const AngleSet& angles);

// Integer pairs (n1, n2) with angles (n1 pi / j, n2 pi / j) that resonate.
std::vector<std::pair<int, int>> resonant_angles(int two_j);
// Closed count floor(j-1/2) (1/2 + 3/2 floor(j-1/2) - floor(j)).
long resonant_count(int two_j);

// (n_G pi / j, 2 n_G pi / j)
AngleSet global_peak_guess(int two_j);
// Empirical shrink factor lambda_j of the peak positions towards theta3.
double lambda_heuristic(int two_j);

struct OptimizeOptions {
  double grad_tol = 1e-8;
  int max_iterations = 20000;
  bool project = true;  // map the result into the fundamental region (K = 3)
};

struct OptimizeResult {
  AngleSet angles;
  double value;
  double grad_norm;
  int iterations;
  bool converged;
};

// Gradient ascent with backtracking on lambda_max(Q(angles)).
OptimizeResult optimize_angles(int two_j, const AngleSet& init, const OptimizeOptions& opt = {});

// Resonant starting point for K angles: first (K-1)/2 indices at most floor(j), the rest above.
AngleSet resonant_init(int two_j, int K);
// Midpoint between theta_Delta (the resonant init) and the equally spaced set.
AngleSet midpoint_init(int two_j, int K);

struct HeatPoint {
  double vartheta1, vartheta2, score;
  int ix, iy;  // grid indices, x fastest
};
// Scores on a uniform vartheta grid (resolution points per axis) clipped to the triangle.
std::vector<HeatPoint> heatmap(int two_j, int resolution);
void write_heatmap_csv(std::ostream& os, const std::vector<HeatPoint>& pts);
// Interior grid points strictly larger than all in-triangle neighbours.
std::vector<HeatPoint> local_peaks(const std::vector<HeatPoint>& pts, int resolution);

// P3 at spin j = 3n/2 for n = 1..n_max.
std::vector<double> conjecture_sequence(int n_max);

struct ConjectureFit {
  double even_limit;  // P - b1/j - b2/j^2 on even n
  double odd_limit;   // P + sum_{l=1..4} c_l j^(-l/2) on odd n
};
ConjectureFit conjecture_fits(const std::vector<double>& seq);

}  // namespace precession
