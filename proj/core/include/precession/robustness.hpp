#pragma once

#include <vector>

#include "precession/angles.hpp"

namespace precession {

// Measurement bins [a_n, a_{n+1}) given by their endpoints. Relative index 0 is
// the bin containing 0; bins 0..n_hat score 1/2, higher bins 1, lower bins 0.
class BinningScheme {
 public:
  const std::vector<double>& endpoints() const { return e_; }
  int zero_bin() const { return zero_; }  // position of a_0 in endpoints()
  int n_hat() const { return n_hat_; }
  double a(int n) const { return e_[zero_ + n]; }
  // Relative bin index of x; throws DomainError outside [front, back).
  int bin_of(double x) const;

 private:
  friend BinningScheme validate_scheme(const std::vector<double>& endpoints);
  std::vector<double> e_;
  int zero_ = 0;
  int n_hat_ = 0;
};

// Checks ordering, locates the zero bin and the smallest n_hat >= 1 with
// a_{n_hat+1} - a_1 >= a_1 - a_0.
BinningScheme validate_scheme(const std::vector<double>& endpoints);

// Half-score band [-eps_minus, eps_plus]; needs eps_plus >= eps_minus >= 0.
// eps = 0 gives back the sharp Theta with Theta(0) = 1/2.
struct EpsilonBand {
  double eps_minus = 0.0;
  double eps_plus = 0.0;
};
EpsilonBand validate_band(double eps_minus, double eps_plus);

double coarse_theta(double value, const BinningScheme& scheme);
double coarse_theta(double value, const EpsilonBand& band);

struct CoarseSearch {
  int phi_points = 10000;
  int r_points = 241;
  double r_min_factor = 1e-3;  // times the zero-bin width (or the band width)
  double r_max_factor = 1e3;
};

struct CoarseMax {
  int half_units;  // score = half_units / 6
  double r, phi;   // lexicographically first maximiser
  double value() const { return half_units / 6.0; }
};

// Largest (1/3) sum_k coarse_theta(r cos(theta_k - phi)) over a log r grid and
// a phi grid with the candidates theta_k +- pi/2 +- 1e-9 added. Outside the
// endpoint window, values below score 0 and values above score 1.
CoarseMax classical_coarse_max(const AngleSet& angles, const BinningScheme& scheme, const CoarseSearch& cfg = {});
CoarseMax classical_coarse_max(const AngleSet& angles, const EpsilonBand& band, const CoarseSearch& cfg = {});

}  // namespace precession
