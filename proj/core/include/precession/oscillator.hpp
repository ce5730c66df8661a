#pragma once

#include <array>
#include <string>
#include <vector>

#include "precession/angles.hpp"
#include "precession/linalg.hpp"

namespace precession {

enum class BoundKind { ClosedForm, Eigensolve, Quadrature, Fit };
std::string to_string(BoundKind k);

struct BoundRecord {
  std::string name;
  double value;
  BoundKind kind;
  double tolerance;
};

// <n| Theta(X) - 1/2 |n'> for harmonic-oscillator number states.
double theta_x_element(long n, long np);

// Cached <n|Theta(X) - 1/2|n'> for 0 <= n, n' <= cutoff.
class ThetaTable {
 public:
  explicit ThetaTable(int cutoff);
  int cutoff() const { return cutoff_; }
  double operator()(int n, int np) const { return t_(n, np); }

 private:
  int cutoff_;
  RMatrix t_;
};

// Number-basis matrix of (1/K) sum_k Theta(X cos theta_k + P sin theta_k),
// truncated to levels 0..cutoff.
HermitianMatrix q_matrix(const AngleSet& angles, int cutoff);
HermitianMatrix q_matrix(const AngleSet& angles, const ThetaTable& table);

// <psi| Q(angles) |psi>. `state` is a normalised vector of number-state amplitudes.
double fock_score(const CVector& state, const AngleSet& angles);

// Block of A_3 = (Q_3 - 1/2)^2 - 1/36 on labels 6n + residue, n = 0..n_max.
// Entries are exact (the intermediate sum runs over all levels).
RMatrix a3_block(int residue, int n_max);
// <6n + r| A_3 |6n' + r>. The complex form exposes the (vanishing) imaginary part.
cplx a3_element_complex(int n, int np, int residue);
double a3_element(int n, int np, int residue);

// A_3 compressed to levels 0..6*n_hat, stored per residue class.
class A3Truncation {
 public:
  explicit A3Truncation(int n_hat_max);
  int n_hat_max() const { return n_hat_max_; }
  const RMatrix& block(int residue) const { return blocks_[residue]; }
  // Largest eigenvalue of the compression to levels 0..6*n_hat.
  double max_eigenvalue(int n_hat) const;

 private:
  int n_hat_max_;
  std::array<RMatrix, 6> blocks_;
};

// 1/2 + sqrt(lambda_max + 1/36) for the truncation to 6*n_hat + 1 levels.
BoundRecord lower_bound_p3(int n_hat);
// lower_bound_p3 for n_hat = 1..n_hat_max, sharing one assembly.
std::vector<double> lower_bound_sequence(int n_hat_max);

struct LowerBoundFit {
  double p_inf;
  double a1, a2;  // P(n) ~ p_inf - a1 (n+1)^(-1/2) - a2 (n+1)^(-3/2)
  double residual;
};
LowerBoundFit extrapolate_lower_bound(const std::vector<int>& n_hats, const std::vector<double>& values);

// tr[A_3^2] in closed form: 6 ln 2 / (18 pi)^2.
double trace_a3_squared();
// tr[A_3^2] from the angular integral left after the radial integration.
double trace_a3_squared_quadrature();
// Upper bound on the three-angle maximum from tr[A_3^2].
BoundRecord upper_bound_p3_closed();

// tr[A^2] for A = (Q - 1/2)^2 - 1/(4K^2), from the phase-space integral.
double trace_a_squared(const AngleSet& angles);
// Hilbert-Schmidt bound for a general interior angle set.
BoundRecord upper_bound_pk(const AngleSet& angles);

// Rotation-squeeze-rotation-squeeze taking the angle set to theta3.
struct SymplecticParams {
  double phi0;
  double lambda1;
  double phi2;
  double lambda3;
};
SymplecticParams symplectic_params(const AngleSet& angles);

// theta -> atan2(e^-lambda sin(theta - phi), e^lambda cos(theta - phi)) mod 2pi.
double angle_action(double theta, double phi, double lambda);
// Applies the four steps of `p` to each angle. Returns values in [0, 2pi).
std::vector<double> apply_symplectic_action(const SymplecticParams& p, const std::vector<double>& angles);

// Backflow constant implied by a maximal score p: 3p - 2.
double backflow_bound(double p);
// Rigorous interval [3 p_lower - 2, 3 p_upper - 2] and the point estimate from
// the extrapolated lower-bound sequence.
struct BackflowBounds {
  BoundRecord lower, upper, estimate;
};
BackflowBounds backflow_bounds(int n_hat = 40);

}  // namespace precession
