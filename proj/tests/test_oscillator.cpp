#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "precession/angles.hpp"
#include "precession/entanglement.hpp"
#include "precession/errors.hpp"
#include "precession/oscillator.hpp"

using namespace precession;

namespace {

// Hermite functions psi_0..psi_nmax sampled on a uniform grid over [0, L].
struct HermiteGrid {
  int nmax, pts;
  double h;
  std::vector<std::vector<double>> psi;  // psi[n][i]

  HermiteGrid(int nmax_, double L = 12.0, int pts_ = 4096) : nmax(nmax_), pts(pts_), h(L / pts_) {
    psi.assign(nmax + 1, std::vector<double>(pts + 1));
    for (int i = 0; i <= pts; ++i) {
      const double x = i * h;
      double p0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
      double p1 = std::sqrt(2.0) * x * p0;
      psi[0][i] = p0;
      if (nmax >= 1) psi[1][i] = p1;
      for (int n = 1; n < nmax; ++n) {
        const double p2 = std::sqrt(2.0 / (n + 1)) * x * p1 - std::sqrt(double(n) / (n + 1)) * p0;
        psi[n + 1][i] = p2;
        p0 = p1;
        p1 = p2;
      }
    }
  }

  // int_0^L psi_n psi_m dx by Simpson
  double half_line(int n, int m) const {
    double s = psi[n][0] * psi[m][0] + psi[n][pts] * psi[m][pts];
    for (int i = 1; i < pts; ++i) s += psi[n][i] * psi[m][i] * (i % 2 ? 4 : 2);
    return s * h / 3;
  }

  double theta_minus_half(int n, int m) const { return half_line(n, m) - (n == m ? 0.5 : 0.0); }
};

// <a|A_3|b> by summing over intermediate levels m with a - m odd and divisible
// by 3 (the only levels the three trine phases do not cancel). The summand
// decays like m^{-p}, with p read off the last two kept terms; the tail over
// every sixth m past M is then last * M / (6 (p - 1)).
double a3_brute(long a, long b, long M = 100000) {
  double sum = 0.0, last = 0.0, prev = 0.0;
  long lastm = 0, prevm = 0;
  for (long m = 0; m <= M; ++m) {
    const long d = a - m;
    if (d % 2 == 0 || d % 3 != 0) continue;
    prev = last;
    prevm = lastm;
    last = theta_x_element(a, m) * theta_x_element(m, b);
    lastm = m;
    sum += last;
  }
  const double p = std::log(prev / last) / std::log(double(lastm) / prevm);
  sum += last * double(lastm) / (6.0 * (p - 1.0));
  return sum - (a == b ? 1.0 / 36.0 : 0.0);
}

// Random angle set with every cyclic gap strictly below pi.
AngleSet random_interior(std::mt19937_64& rng, double margin = 1e-3) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (;;) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    if (a < kPi - margin && b - a < kPi - margin && kTwoPi - b < kPi - margin && a > margin && b - a > margin &&
        kTwoPi - b > margin)
      return three_angles(a, b);
  }
}

double circ_dist(double x, double y) {
  const double d = std::fmod(std::abs(x - y), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

TEST(ThetaElement, Examples) {
  EXPECT_EQ(theta_x_element(2, 4), 0.0);
  EXPECT_EQ(theta_x_element(3, 3), 0.0);
  EXPECT_NEAR(theta_x_element(0, 1), 1.0 / std::sqrt(2.0 * kPi), 1e-15);
  EXPECT_THROW(theta_x_element(-1, 0), DomainError);
}

TEST(ThetaElement, MatchesHermiteQuadrature) {
  const HermiteGrid g(20);
  for (int n = 0; n <= 20; ++n)
    for (int m = 0; m <= 20; ++m) EXPECT_NEAR(theta_x_element(n, m), g.theta_minus_half(n, m), 1e-10) << n << " " << m;
}

TEST(QMatrix, MatchesGridOracle) {
  const HermiteGrid g(20);
  const AngleSet th = three_angles(1.3, 3.7);
  const auto q = q_matrix(th, 20).mat();
  for (int n = 0; n <= 20; ++n)
    for (int m = 0; m <= 20; ++m) {
      cplx want = n == m ? 0.5 : 0.0;
      for (double t : th.values()) want += std::polar(1.0, t * (n - m)) * g.theta_minus_half(n, m) / 3.0;
      EXPECT_LT(std::abs(q(n, m) - want), 1e-6);
    }
}

// The phase rule has to reproduce X cos t + P sin t on the ladder elements.
TEST(QMatrix, PhaseConventionMatchesRotatedQuadrature) {
  const double t = 0.83;
  for (int n = 0; n < 6; ++n) {
    const cplx x = std::sqrt((n + 1) / 2.0), p = cplx(0.0, std::sqrt((n + 1) / 2.0));  // <n+1|X|n>, <n+1|P|n>
    EXPECT_LT(std::abs(std::polar(1.0, t * 1.0) * x - (std::cos(t) * x + std::sin(t) * p)), 1e-15);
  }
}

TEST(QMatrix, Examples) {
  const auto q0 = q_matrix(theta3(), 0);
  EXPECT_EQ(q0.dim(), 1);
  EXPECT_NEAR(q0.mat()(0, 0).real(), 0.5, 1e-15);

  // Best score over states supported on n <= 12, from the grid oracle alone.
  const HermiteGrid g(12);
  const AngleSet th = theta3();
  CMatrix o = CMatrix::Zero(13, 13);
  for (int n = 0; n <= 12; ++n)
    for (int m = 0; m <= 12; ++m) {
      o(n, m) = n == m ? 0.5 : 0.0;
      for (double t : th.values()) o(n, m) += std::polar(1.0, t * (n - m)) * g.theta_minus_half(n, m) / 3.0;
    }
  const double want = Eigen::SelfAdjointEigenSolver<CMatrix>(o).eigenvalues().maxCoeff();
  EXPECT_NEAR(max_eigenvalue(q_matrix(theta3(), 12)), want, 1e-6);
  EXPECT_NEAR(want, 0.691664, 1e-6);
  // 0.7054 needs roughly 300 levels; the A_3 route gets past it with 13.
  EXPECT_GE(max_eigenvalue(q_matrix(theta3(), 300)), 0.7054);
  EXPECT_GE(lower_bound_p3(2).value, 0.7054);
}

TEST(QMatrix, SpectrumInUnitInterval) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    const auto e = eigh(q_matrix(random_interior(rng), 60)).values;
    EXPECT_GE(e[0], -1e-9);
    EXPECT_LE(e[e.size() - 1], 1.0 + 1e-9);
  }
}

TEST(QMatrix, ParityPairing) {
  for (int c : {11, 30, 61}) {
    const auto e = eigh(q_matrix(theta3(), c)).values;
    const Eigen::Index d = e.size();
    for (Eigen::Index i = 0; i < d; ++i) EXPECT_NEAR(e[i] + e[d - 1 - i], 1.0, 1e-9);
  }
}

TEST(QMatrix, BoundaryApproachesTwoThirdsFromBelow) {
  const AngleSet b = three_angles(kPi, 1.5 * kPi);
  double prev = 0.0;
  for (int c : {40, 120, 240}) {
    const double v = max_eigenvalue(q_matrix(b, c));
    EXPECT_LT(v, 2.0 / 3.0 + 1e-9);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
  EXPECT_GT(prev, 0.64);
}

TEST(FockScore, Examples) {
  CVector vac = CVector::Zero(3);
  vac[0] = 1.0;
  EXPECT_NEAR(fock_score(vac, theta3()), 0.5, 1e-15);
  EXPECT_NEAR(fock_score(vac, three_angles(0.4, 2.9)), 0.5, 1e-15);
  EXPECT_THROW(fock_score(2.0 * vac, theta3()), ValidationError);

  const auto q = q_matrix(theta3(), 240);
  const auto top = max_eigenpair(q);
  EXPECT_NEAR(fock_score(top.vector, theta3()), top.value, 1e-10);
  EXPECT_NEAR(fock_score(chi4_state(), three_angles(kPi * kPi / 4, kPi * kPi / 2)), 0.669, 2e-3);
}

TEST(A3, DiagonalMatchesBruteSum) {
  for (int r = 0; r < 6; ++r) EXPECT_NEAR(a3_element(0, 0, r), a3_brute(r, r), 1e-6) << r;
  EXPECT_NEAR(a3_element(2, 2, 0), a3_brute(12, 12), 1e-6);
}

TEST(A3, OffDiagonalMatchesBruteSum) {
  for (auto [n, np, r] : {std::tuple{0, 1, 0}, {1, 3, 0}, {0, 2, 1}, {2, 1, 3}, {1, 4, 4}, {3, 0, 5}})
    EXPECT_NEAR(a3_element(n, np, r), a3_brute(6L * n + r, 6L * np + r), 1e-6) << n << " " << np << " " << r;
}

TEST(A3, ImaginaryPartVanishes) {
  for (int r = 0; r < 6; ++r)
    for (int n = 0; n < 8; ++n)
      for (int np = 0; np < 8; ++np) EXPECT_LT(std::abs(a3_element_complex(n, np, r).imag()), 1e-10);
}

TEST(A3, BlockIsSymmetricAndConsistent) {
  const RMatrix b = a3_block(2, 6);
  EXPECT_EQ((b - b.transpose()).norm(), 0.0);
  EXPECT_NEAR(b(3, 5), a3_element(3, 5, 2), 1e-13);
  EXPECT_THROW(a3_block(6, 2), DomainError);
}

// Entries between different residues vanish: the trine phases of a dense
// product (Q - 1/2)^2 cancel unless the labels agree mod 6.
TEST(A3, ResidueBlocksFromDenseAssembly) {
  const int c = 300;
  const RMatrix s = (q_matrix(theta3(), c).mat() - 0.5 * CMatrix::Identity(c + 1, c + 1)).real();
  const RMatrix a = s * s;
  for (int i = 0; i < 24; ++i)
    for (int k = 0; k < 24; ++k)
      if ((i - k) % 6 != 0) EXPECT_LT(std::abs(a(i, k)), 1e-13) << i << " " << k;
}

TEST(LowerBound, MonotoneAndBracketed) {
  const auto seq = lower_bound_sequence(40);
  ASSERT_EQ(seq.size(), 40u);
  for (std::size_t i = 1; i < seq.size(); ++i) EXPECT_GE(seq[i], seq[i - 1] - 1e-13);
  EXPECT_LT(seq[4], seq[9]);
  EXPECT_LT(seq[9], seq[19]);
  EXPECT_LT(seq[19], seq[39]);
  EXPECT_GT(seq[39], 0.70);
  EXPECT_LT(seq[39], 0.709365);
  EXPECT_NEAR(lower_bound_p3(10).value, seq[9], 1e-12);

  std::vector<int> ns(40);
  for (int i = 0; i < 40; ++i) ns[i] = i + 1;
  const auto fit = extrapolate_lower_bound(ns, seq);
  EXPECT_NEAR(fit.p_inf, 0.709364, 5e-4);
  EXPECT_LT(seq[39], upper_bound_p3_closed().value);
}

TEST(LowerBound, TruncatedFrobeniusBelowTrace) {
  const A3Truncation t(60);
  double prev = 0.0;
  for (int n : {10, 20, 40, 60}) {
    double s = 0.0;
    for (int r = 0; r < 6; ++r) {
      const int k = r == 0 ? n + 1 : n;
      s += t.block(r).topLeftCorner(k, k).squaredNorm();
    }
    EXPECT_GT(s, prev);
    EXPECT_LE(s, trace_a3_squared());
    prev = s;
  }
}

TEST(UpperBound, ClosedForm) {
  const auto ub = upper_bound_p3_closed();
  EXPECT_NEAR(ub.value, 0.5 * (1 + std::sqrt(1 + 2 / kPi * std::sqrt(3 * std::log(2.0))) / 3), 1e-15);
  EXPECT_LE(ub.value, 0.730822 + 1e-6);
  EXPECT_GE(ub.value, 0.730821);
  EXPECT_LT(ub.value, 0.75);
  EXPECT_EQ(ub.kind, BoundKind::ClosedForm);
}

TEST(UpperBound, TraceQuadratureMatchesClosedForm) {
  EXPECT_NEAR(trace_a3_squared(), 6 * std::log(2.0) / std::pow(18 * kPi, 2), 1e-18);
  EXPECT_NEAR(trace_a3_squared_quadrature(), trace_a3_squared(), 1e-8);
  EXPECT_NEAR(trace_a_squared(theta3()), trace_a3_squared(), 1e-10);
}

TEST(UpperBound, GeneralK) {
  auto eq = [](int K) {
    std::vector<double> th;
    for (int k = 0; k < K; ++k) th.push_back(kTwoPi * k / K);
    return canonicalize(th);
  };
  const double p3 = upper_bound_pk(eq(3)).value, p5 = upper_bound_pk(eq(5)).value, p7 = upper_bound_pk(eq(7)).value;
  EXPECT_NEAR(p3, upper_bound_p3_closed().value, 1e-6);
  EXPECT_LT(p5, p3);
  EXPECT_LT(p7, p5);
  EXPECT_GT(p5, 0.6);
  EXPECT_GT(p7, 4.0 / 7.0);
  // regression anchors from the first computation
  EXPECT_NEAR(p5, 0.6554678480, 1e-8);
  EXPECT_NEAR(p7, 0.6202440947, 1e-8);
  EXPECT_THROW(upper_bound_pk(three_angles(0.1, 0.2)), DomainError);
}

TEST(Symplectic, TrineIsFixedAsASet) {
  const auto p = symplectic_params(theta3());
  auto out = apply_symplectic_action(p, theta3().values());
  std::sort(out.begin(), out.end());
  for (int k = 0; k < 3; ++k) EXPECT_LT(circ_dist(out[k], kTwoPi * k / 3), 1e-9);
}

TEST(Symplectic, RandomInteriorMapsToTrine) {
  std::mt19937_64 rng(99);
  std::vector<AngleSet> cases{three_angles(kPi * kPi / 4, kPi * kPi / 2), three_angles(0.75 * kPi, 1.25 * kPi)};
  for (int i = 0; i < 1000; ++i) cases.push_back(random_interior(rng));
  for (const auto& a : cases) {
    const auto p = symplectic_params(a);
    EXPECT_GT(p.phi2, kPi / 2);
    EXPECT_LT(p.phi2, 0.75 * kPi);
    const auto out = apply_symplectic_action(p, a.values());
    for (int k = 0; k < 3; ++k) {
      double best = 1e9;
      for (double x : out) best = std::min(best, circ_dist(x, kTwoPi * k / 3));
      EXPECT_LT(best, 1e-9) << a[1] << " " << a[2];
    }
  }
}

TEST(Symplectic, RejectsNonInterior) {
  EXPECT_THROW(symplectic_params(three_angles(kPi, 1.5 * kPi)), DomainError);
  EXPECT_THROW(symplectic_params(three_angles(0.2, 0.4)), DomainError);
}

// Spectrum invariance across the interior: the top eigenvalue at finite
// cutoff approaches the trine value.
TEST(Spectrum, ConvergesAcrossInterior) {
  const int cs[3] = {60, 120, 240};
  double ref[3];
  for (int i = 0; i < 3; ++i) ref[i] = max_eigenvalue(q_matrix(theta3(), cs[i]));
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0, 1);
  for (int s = 0; s < 5; ++s) {
    double a = u(rng), b = u(rng);
    if (a + b > 1) {
      a = 1 - a;
      b = 1 - b;
    }
    // barycentric point in the gap triangle, shrunk by 0.8 about the trine
    const double w0 = 1 - a - b, g = 2 * kPi / 3;
    const double G1 = g + 0.8 * (w0 * kPi + b * kPi - g), G2 = g + 0.8 * (w0 * kPi + a * kPi - g);
    const AngleSet th = three_angles(G1, G1 + G2);
    double prev = 1.0;
    for (int i = 0; i < 3; ++i) {
      const double diff = std::abs(max_eigenvalue(q_matrix(th, cs[i])) - ref[i]);
      EXPECT_LT(diff, prev);
      prev = diff;
    }
    EXPECT_LT(prev, 5e-3);
  }
}

TEST(Backflow, Examples) {
  EXPECT_NEAR(backflow_bound(0.709364), 0.128092, 1e-9);
  EXPECT_NEAR(backflow_bound(0.730822), 0.192466, 1e-9);
  EXPECT_EQ(classical_max_score(three_angles(0.75 * kPi, 1.25 * kPi)).region, Region::Interior);
  const auto b = backflow_bounds(20);
  EXPECT_LE(b.lower.value, b.estimate.value);
  EXPECT_LT(b.estimate.value, b.upper.value);
  EXPECT_NEAR(b.estimate.value, backflow_bound(0.709364), 3 * 1.5e-3);
  const auto b40 = backflow_bounds();
  EXPECT_NEAR(b40.lower.value, backflow_bound(0.70936266), 1e-7);
  EXPECT_LE(b40.lower.value, b40.estimate.value);
  EXPECT_NEAR(b.upper.value, 3 * upper_bound_p3_closed().value - 2, 1e-15);
}
