#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "precession/angles.hpp"
#include "precession/linalg.hpp"

namespace precession {

// (1/K) sum_k Theta(J_x cos theta_k + J_y sin theta_k) for the total angular
// momentum of independent spins (given as 2j each), Theta(0) = 1/2.
HermitianMatrix q_total_spin(const std::vector<int>& two_js, const AngleSet& angles);
HermitianMatrix q_total_spin(int two_jA, int two_jB, const AngleSet& angles);

struct SdpProblem {
  HermitianMatrix objective;  // maximise tr(C rho)
  int dimA, dimB;
};

struct SdpOptions {
  double residual_tol = 1e-7;
  double value_tol = 1e-9;  // change over `window` iterations
  int window = 50;
  int max_iterations = 200000;
  double sigma = 0.0;  // penalty; 0 picks a scale from the objective
};

struct SdpSolution {
  double value;
  HermitianMatrix state;
  double primal_residual;
  double dual_bound;         // certified upper bound on the optimum
  double dual_gap_estimate;  // dual_bound - value
  int iterations;
};

// max tr(C rho) over rho >= 0, rho^{T_B} >= 0, tr rho = 1 by ADMM with
// eigenvalue-clipping projections. Throws ConvergenceError at the cap.
SdpSolution sdp_ppt_max(const SdpProblem& problem, const SdpOptions& opt = {});

// Largest <a x b| C |a x b> over `samples` Haar-random product vectors.
double product_state_lower_bound(const HermitianMatrix& c, int dimA, int dimB, int samples = 10000,
                                 std::uint64_t seed = 0);

struct SepBound {
  int two_jA, two_jB;
  SdpSolution solution;
};

SepBound sep_bound_spin(int two_jA, int two_jB, const AngleSet& angles, const SdpOptions& opt = {});

// Maximum of the biseparable bounds over splits (j, j') with j + j' <= sum j_n
// and the parity of the total.
SepBound sep_bound_ensemble(const std::vector<int>& two_js, const AngleSet& angles, const SdpOptions& opt = {});

// Four-qubit example state and its scores on the total spin. The original
// score is at theta3, the modified one at (49pi/60, 49pi/30) after the
// rotation exp(-i 49pi/60 J_z).
CVector psi4_state();
struct Psi4Scores {
  double p_original;
  double p_modified;
};
Psi4Scores psi4_scores();

// Five-level collective-mode example state, with the probing times centred on
// the middle angle pi^2/4.
CVector chi4_state();
double chi4_score();         // at (0, pi^2/4, pi^2/2)
double chi4_theta3_score();  // same state at theta3

// (pi - atan(sqrt3 e^{2 lambda}), pi + atan(sqrt3 e^{2 lambda})), exact at lambda = 0.
AngleSet squeezed_angles(double lambda);

struct GmeVerdict {
  bool certified;
  double margin;  // score - sep_bound
};
GmeVerdict gme_certify(double score, double sep_bound, double tol);

// Objective (1/K) sum_k Theta(X_{+phi}(theta_k)) for two oscillators, compressed
// exactly to levels 0..cutoff per mode (row index n1 * (cutoff+1) + n2).
HermitianMatrix q_two_mode(double phi, const AngleSet& angles, int cutoff);
// PPT bound for the collective-mode protocol at a finite truncation.
SdpSolution sep_bound_two_mode(double phi, const AngleSet& angles, int cutoff, const SdpOptions& opt = {});

}  // namespace precession
