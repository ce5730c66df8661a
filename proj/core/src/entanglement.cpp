#include "precession/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include "precession/oscillator.hpp"

namespace precession {

namespace {

struct TotalSpin {
  RMatrix jx;
  RVector mz;  // diagonal of the total J_z
};

TotalSpin total_spin(const std::vector<int>& two_js) {
  if (two_js.empty()) throw ValidationError("q_total_spin: no spins");
  RMatrix jx = RMatrix::Zero(1, 1);
  RVector mz = RVector::Zero(1);
  for (int tj : two_js) {
    if (tj < 1) throw ValidationError("q_total_spin: every 2j must be >= 1");
    const int d = tj + 1;
    const double j = 0.5 * tj;
    RMatrix sx = RMatrix::Zero(d, d);
    for (int a = 1; a < d; ++a) {
      const double m = j - a;
      sx(a - 1, a) = sx(a, a - 1) = 0.5 * std::sqrt(j * (j + 1) - m * (m + 1));
    }
    const Eigen::Index D = jx.rows();
    RMatrix nx = RMatrix::Zero(D * d, D * d);
    RVector nz(D * d);
    for (Eigen::Index p = 0; p < D; ++p)
      for (int a = 0; a < d; ++a) {
        nz[p * d + a] = mz[p] + (j - a);
        for (Eigen::Index q = 0; q < D; ++q) {
          if (jx(p, q) != 0.0) nx(p * d + a, q * d + a) += jx(p, q);
        }
        for (int b = 0; b < d; ++b)
          if (sx(a, b) != 0.0) nx(p * d + a, p * d + b) += sx(a, b);
      }
    jx = std::move(nx);
    mz = std::move(nz);
  }
  return {jx, mz};
}

}  // namespace

HermitianMatrix q_total_spin(const std::vector<int>& two_js, const AngleSet& angles) {
  const auto ts = total_spin(two_js);
  const auto ed = eigh(HermitianMatrix(ts.jx.cast<cplx>()));
  RVector th(ed.values.size());
  for (Eigen::Index k = 0; k < th.size(); ++k) {
    const double w = ed.values[k];
    th[k] = std::abs(w) < 1e-10 ? 0.5 : (w > 0 ? 1.0 : 0.0);
  }
  const CMatrix theta = ed.vectors * th.cast<cplx>().asDiagonal() * ed.vectors.adjoint();
  const Eigen::Index d = theta.rows();
  const double K = angles.size();
  CMatrix q(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      cplx ph(0.0);
      for (double t : angles.values()) ph += std::polar(1.0, -t * (ts.mz[a] - ts.mz[b]));
      q(a, b) = theta(a, b) * ph / K;
    }
  return HermitianMatrix::symmetrized(q);
}

HermitianMatrix q_total_spin(int two_jA, int two_jB, const AngleSet& angles) {
  return q_total_spin(std::vector<int>{two_jA, two_jB}, angles);
}

SdpSolution sdp_ppt_max(const SdpProblem& problem, const SdpOptions& opt) {
  const CMatrix& C = problem.objective.mat();
  const int dA = problem.dimA, dB = problem.dimB;
  const Eigen::Index d = C.rows();
  if (dA <= 0 || dB <= 0 || d != Eigen::Index(dA) * dB)
    throw DimensionError("sdp_ppt_max: objective dimension is not dimA * dimB");

  auto pt = [&](const CMatrix& m) { return partial_transpose(m, dA, dB); };
  auto proj = [](const CMatrix& m) { return psd_projection(HermitianMatrix::symmetrized(m)); };

  double sigma = opt.sigma;
  if (sigma <= 0.0) {
    const auto ev = eigh(problem.objective).values;
    sigma = std::max(1e-3, ev[d - 1] - ev[0]) / double(d);
  }

  const CMatrix I = CMatrix::Identity(d, d);
  CMatrix rho = I / double(d);
  CMatrix Z1 = rho, Z2 = pt(rho);
  CMatrix U1 = CMatrix::Zero(d, d), U2 = CMatrix::Zero(d, d);
  std::deque<double> history;
  double value = 0.0, res = 0.0;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    const CMatrix M = 0.5 * (Z1 - U1 + pt(Z2 - U2));
    CMatrix r0 = M + C / (2.0 * sigma);
    const double mu = (1.0 - r0.trace().real()) / double(d);
    rho = r0 + mu * I;
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const CMatrix prho = pt(rho);
    Z1 = proj(rho + U1);
    Z2 = proj(prho + U2);
    U1 += rho - Z1;
    U2 += prho - Z2;
    res = std::max((rho - Z1).norm(), (prho - Z2).norm());
    value = (C.cwiseProduct(rho.transpose())).sum().real();
    history.push_back(value);
    if (int(history.size()) > opt.window + 1) history.pop_front();
    if (res < opt.residual_tol && int(history.size()) == opt.window + 1 &&
        std::abs(history.back() - history.front()) < opt.value_tol)
      break;
  }

  auto dual_from = [&](const CMatrix& y) {
    return max_eigenvalue(HermitianMatrix::symmetrized(C + pt(proj(y))));
  };
  const double dual = std::min(dual_from(-sigma * U2), dual_from(sigma * U2));
  if (it >= opt.max_iterations) {
    std::ostringstream os;
    os << "sdp_ppt_max: no convergence after " << opt.max_iterations << " iterations (primal residual " << res
       << ", value " << value << ", dual bound " << dual << ")";
    throw ConvergenceError(os.str(), value, std::max(res, dual - value));
  }
  return {value, HermitianMatrix::symmetrized(rho), res, dual, dual - value, it + 1};
}

double product_state_lower_bound(const HermitianMatrix& c, int dimA, int dimB, int samples, std::uint64_t seed) {
  if (c.dim() != Eigen::Index(dimA) * dimB) throw DimensionError("product_state_lower_bound: dimension mismatch");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  auto draw = [&](int n) {
    CVector v(n);
    for (int i = 0; i < n; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      v[i] = cplx(re, im);
    }
    return CVector(v / v.norm());
  };
  double best = -1e300;
  CVector v(c.dim());
  for (int s = 0; s < samples; ++s) {
    const CVector a = draw(dimA), b = draw(dimB);
    for (int i = 0; i < dimA; ++i) v.segment(Eigen::Index(i) * dimB, dimB) = a[i] * b;
    best = std::max(best, v.dot(c.mat() * v).real());
  }
  return best;
}

SepBound sep_bound_spin(int two_jA, int two_jB, const AngleSet& angles, const SdpOptions& opt) {
  SdpProblem p{q_total_spin(two_jA, two_jB, angles), two_jA + 1, two_jB + 1};
  return {two_jA, two_jB, sdp_ppt_max(p, opt)};
}

SepBound sep_bound_ensemble(const std::vector<int>& two_js, const AngleSet& angles, const SdpOptions& opt) {
  int total = 0;
  for (int t : two_js) {
    if (t < 1) throw ValidationError("sep_bound_ensemble: every 2j must be >= 1");
    total += t;
  }
  if (two_js.size() < 2) throw ValidationError("sep_bound_ensemble: need at least two spins");
  bool have = false;
  SepBound best{0, 0, {}};
  for (int a = 1; a <= total; ++a)
    for (int b = a; a + b <= total; ++b) {
      if ((a + b - total) % 2 != 0) continue;
      auto sb = sep_bound_spin(a, b, angles, opt);
      if (!have || sb.solution.value > best.solution.value) {
        best = std::move(sb);
        have = true;
      }
    }
  return best;
}

Psi4Scores psi4_scores() {
  const CVector psi = psi4_state();
  const std::vector<int> qubits{1, 1, 1, 1};
  const auto q3 = q_total_spin(qubits, theta3());
  const double alpha = 49.0 * kPi / 60.0;
  const auto qm = q_total_spin(qubits, three_angles(alpha, 2.0 * alpha));
  const auto ts = total_spin(qubits);
  CVector rot(psi.size());
  for (Eigen::Index a = 0; a < psi.size(); ++a) rot[a] = std::polar(1.0, -alpha * ts.mz[a]) * psi[a];
  return {psi.dot(q3.mat() * psi).real(), rot.dot(qm.mat() * rot).real()};
}

double chi4_score() { return fock_score(chi4_state(), three_angles(kPi * kPi / 4.0, kPi * kPi / 2.0)); }

double chi4_theta3_score() { return fock_score(chi4_state(), theta3()); }

AngleSet squeezed_angles(double lambda) {
  if (!std::isfinite(lambda)) throw ValidationError("squeezed_angles: lambda must be finite");
  // atan(sqrt3 e^{2l}) - pi/3 = atan(sqrt3 (e^{2l} - 1) / (1 + 3 e^{2l}))
  const double e = std::exp(2.0 * lambda);
  const double d = std::atan(std::sqrt(3.0) * std::expm1(2.0 * lambda) / (1.0 + 3.0 * e));
  return three_angles(2.0 * kPi / 3.0 - d, 4.0 * kPi / 3.0 + d);
}

GmeVerdict gme_certify(double score, double sep_bound, double tol) {
  const double margin = score - sep_bound;
  return {margin > tol, margin};
}

HermitianMatrix q_two_mode(double phi, const AngleSet& angles, int cutoff) {
  if (cutoff < 0) throw ValidationError("q_two_mode: negative cutoff");
  const int N = cutoff, L = 2 * cutoff;  // box states reach total number 2N
  const int big = L + 1;
  auto bidx = [&](int n1, int n2) { return n1 * big + n2; };

  // W column (n1, n2) = U |n1, n2>, U = exp(phi (a1^dag a2 - a2^dag a1)), which
  // satisfies U^dag a1 U = cos(phi) a1 + sin(phi) a2. U keeps the total number.
  const int box = (N + 1) * (N + 1);
  CMatrix W = CMatrix::Zero(big * big, box);
  for (int s = 0; s <= L; ++s) {
    const int lo = std::max(0, s - N), hi = std::min(s, N);
    if (lo > hi) continue;
    // generator on the block spanned by |k, s-k>, k = 0..s
    CMatrix H = CMatrix::Zero(s + 1, s + 1);  // i G
    for (int k = 0; k < s; ++k) {
      const double g = std::sqrt(double(k + 1) * double(s - k));  // <k+1, s-k-1| a1^dag a2 |k, s-k>
      H(k + 1, k) += cplx(0.0, g);
      H(k, k + 1) += cplx(0.0, -g);
    }
    const auto ed = eigh(HermitianMatrix::symmetrized(H));
    CVector ph(s + 1);
    for (int k = 0; k <= s; ++k) ph[k] = std::polar(1.0, -phi * ed.values[k]);
    const CMatrix U = ed.vectors * ph.asDiagonal() * ed.vectors.adjoint();  // exp(phi G) = exp(-i phi H)
    for (int n1 = lo; n1 <= hi; ++n1) {
      const int col = n1 * (N + 1) + (s - n1);
      for (int k = 0; k <= s; ++k) W(bidx(k, s - k), col) = U(k, n1);
    }
  }

  // Theta(X_1(theta)) (x) 1 on the big box; mode 1 needs levels up to 2N.
  const ThetaTable table(L);
  const auto q1 = q_matrix(angles, table).mat();
  CMatrix T = CMatrix::Zero(big * big, big * big);
  for (int a = 0; a <= L; ++a)
    for (int b = 0; b <= L; ++b) {
      if (q1(a, b) == cplx(0.0)) continue;
      for (int n2 = 0; n2 <= L; ++n2) T(bidx(a, n2), bidx(b, n2)) = q1(a, b);
    }
  return HermitianMatrix::symmetrized(W.adjoint() * T * W);
}

SdpSolution sep_bound_two_mode(double phi, const AngleSet& angles, int cutoff, const SdpOptions& opt) {
  SdpProblem p{q_two_mode(phi, angles, cutoff), cutoff + 1, cutoff + 1};
  return sdp_ppt_max(p, opt);
}

}  // namespace precession
