#pragma once

#include <complex>
#include <vector>

namespace precession {

using cplx = std::complex<double>;

// Si(x) - pi/2, so si(0) = -pi/2, si(+inf) = 0 and si(-x) = -si(x) - pi.
double si(double x);

// ln C(2n, n).
double log_central_binom(long n);
// ln(C(2n, n) / 4^n), accurate for large n.
double log_central_binom_scaled(long n);

struct SeriesResult {
  cplx value;
  long terms_used;
  double tail_bound;  // rigorous inside the disc, an acceleration estimate on |z| = 1
};

// Generalised hypergeometric 3F2 for |z| <= 1. Levin u-acceleration on the unit circle.
SeriesResult hyp3f2(double a1, double a2, double a3, double b1, double b2, cplx z);

// Incomplete beta B(z; a, b) = sum_n (1-b)_n / n! * z^(n+a) / (n+a), principal branch.
SeriesResult inc_beta(cplx z, double a, double b);
// z^(-a) B(z; a, b) as a plain power series in z. Avoids the branch of z^a.
SeriesResult inc_beta_scaled(cplx z, double a, double b);

// Values of
//   S_N(z) = sum_m c_m z^m / (m - N + 1/2),   T_N(z) = sum_m c_m z^m / (m - N + 1/2)^2,
// with c_m = C(2m, m) / 4^m, for N = 0..n_max + 1. S_N is z^(N-1/2) B(z; 1/2-N, 1/2).
// Both are filled by forward contiguous recurrences seeded from S_0 = 2 asin(sqrt z)/sqrt z
// and a quadrature for T_0. The recurrences contract, so errors do not grow.
class KernelTable {
 public:
  KernelTable(cplx z, int n_max);

  cplx z() const { return z_; }
  int n_max() const { return n_max_; }
  cplx S(int n) const { return s_.at(n); }
  cplx T(int n) const { return t_.at(n); }

  // l(z; n, n') = sum_m c_m 2(m + 1/2) z^m / ((m - n + 1/2)(m - n' + 1/2)).
  cplx l(int n, int np) const;
  // sum_m c_m z^m / ((m - n - 1/2)(m - n' - 1/2)), the odd-label analogue.
  cplx l_odd(int n, int np) const;

 private:
  cplx z_;
  int n_max_;
  std::vector<cplx> s_, t_;
};

// l(z; n, n') for |z| <= 1 via KernelTable.
cplx l_kernel(cplx z, int n, int np);

// l(z; n, n') through the closed-form case split, composed from hyp3f2 and
// inc_beta series. Undefined at z = 1 when n, n' are both nonzero and distinct
// because the two incomplete beta terms diverge there separately.
cplx l_kernel_series(cplx z, int n, int np);

}  // namespace precession
