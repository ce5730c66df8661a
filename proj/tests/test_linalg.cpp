#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "precession/angles.hpp"
#include "precession/linalg.hpp"

using namespace precession;

namespace {

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

}  // namespace

TEST(Hermitian, RejectsNonHermitian) {
  CMatrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_THROW(HermitianMatrix{m}, ValidationError);
  EXPECT_THROW(HermitianMatrix{CMatrix(2, 3)}, DimensionError);
}

TEST(Eigh, SmallCases) {
  auto e = eigh(HermitianMatrix(CMatrix::Identity(3, 3)));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.values[i], 1.0, 1e-15);

  RVector d(3);
  d << 0.0, 0.5, 1.0;
  e = eigh(HermitianMatrix(d.cast<cplx>().asDiagonal()));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.values[i], d[i], 1e-15);

  e = eigh(HermitianMatrix(pauli_x()));
  EXPECT_NEAR(e.values[0], -1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 1.0, 1e-15);
}

TEST(Eigh, ReconstructionAndOrthonormality) {
  std::mt19937_64 rng(11);
  for (int n : {1, 2, 7, 33, 128, 256}) {
    const CMatrix m = random_hermitian(n, rng);
    for (const auto& e : {eigh(HermitianMatrix(m)), eigh_jacobi(HermitianMatrix(m))}) {
      const CMatrix rec = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
      EXPECT_LT((rec - m).norm(), 1e-9 * n) << n;
      EXPECT_LT((e.vectors.adjoint() * e.vectors - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10) << n;
      for (int i = 1; i < n; ++i) EXPECT_LE(e.values[i - 1], e.values[i]);
    }
  }
}

TEST(Eigh, JacobiAgreesWithDefault) {
  std::mt19937_64 rng(5);
  for (int n : {3, 10, 40}) {
    const HermitianMatrix h(random_hermitian(n, rng));
    const auto a = eigh(h), b = eigh_jacobi(h);
    EXPECT_LT((a.values - b.values).cwiseAbs().maxCoeff(), 1e-11 * n);
  }
}

TEST(MaxEigenpair, Examples) {
  auto p = max_eigenpair(HermitianMatrix(CMatrix::Identity(4, 4)));
  EXPECT_NEAR(p.value, 1.0, 1e-15);
  EXPECT_NEAR(p.vector.norm(), 1.0, 1e-14);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0 / 3;
  d(1, 1) = 2.0 / 3;
  p = max_eigenpair(HermitianMatrix(d));
  EXPECT_NEAR(p.value, 2.0 / 3, 1e-15);
  EXPECT_NEAR(std::abs(p.vector[1]), 1.0, 1e-14);
  EXPECT_NEAR(p.gap, 1.0 / 3, 1e-15);

  p = max_eigenpair(HermitianMatrix(pauli_x()));
  EXPECT_NEAR(p.value, 1.0, 1e-15);
  EXPECT_NEAR(std::abs(p.vector[0]), std::sqrt(0.5), 1e-14);
  EXPECT_NEAR(std::abs(p.vector[0] - p.vector[1]), 0.0, 1e-14);

  std::mt19937_64 rng(3);
  const HermitianMatrix h(random_hermitian(20, rng));
  EXPECT_NEAR(max_eigenvalue(h), eigh(h).values[19], 1e-10);
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)), CMatrix::Identity(4, 4));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 5.0;
  const CMatrix k = kron(d, CMatrix::Identity(2, 2));
  CVector expect(4);
  expect << 2, 2, 5, 5;
  EXPECT_EQ(k.diagonal(), expect);
  EXPECT_EQ((k - CMatrix(expect.asDiagonal())).norm(), 0.0);

  CVector bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  const CMatrix xx = kron(pauli_x(), pauli_x());
  EXPECT_LT((xx * bell - bell).norm(), 1e-15);
}

TEST(PartialTranspose, Examples) {
  std::mt19937_64 rng(9);
  const CMatrix a = random_hermitian(2, rng), b = random_hermitian(3, rng);
  EXPECT_LT((partial_transpose(kron(a, b), 2, 3) - kron(a, b.transpose())).norm(), 1e-14);

  const CMatrix m = random_hermitian(6, rng);
  const CMatrix pt = partial_transpose(m, 2, 3);
  EXPECT_EQ(partial_transpose(pt, 2, 3), m);
  EXPECT_NEAR(std::abs(pt.trace() - m.trace()), 0.0, 1e-15);
  EXPECT_EQ((pt - pt.adjoint()).norm(), 0.0);

  CVector bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  const CMatrix rho = bell * bell.adjoint();
  EXPECT_NEAR(eigh(HermitianMatrix(partial_transpose(rho, 2, 2))).values[0], -0.5, 1e-14);

  EXPECT_THROW(partial_transpose(m, 2, 2), DimensionError);
}

TEST(PsdProjection, ClipsNegativeEigenvalues) {
  std::mt19937_64 rng(21);
  const HermitianMatrix h(random_hermitian(8, rng));
  const CMatrix p = psd_projection(h);
  const auto e = eigh(HermitianMatrix::symmetrized(p));
  EXPECT_GT(e.values[0], -1e-12);
  const auto src = eigh(h);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(e.values[i], std::max(0.0, src.values[i]), 1e-12);
}

TEST(Quadrature, Examples) {
  std::vector<double> bp{0.0, kPi / 2, kPi};
  EXPECT_NEAR(integrate_piecewise([](double) { return 1.0; }, bp).value, kPi, 1e-14);
  std::vector<double> whole{0.0, kPi};
  EXPECT_NEAR(integrate_piecewise([](double x) { return std::sin(x); }, whole).value, 2.0, 1e-10);
  EXPECT_NEAR(integrate_piecewise([](double x) { return std::abs(std::cos(x)); }, bp).value, 2.0, 1e-10);
}

TEST(Quadrature, PolynomialsExact) {
  std::vector<double> bp{-1.0, 0.3, 2.0};
  for (int deg = 0; deg <= 5; ++deg) {
    auto f = [deg](double x) { return std::pow(x, deg); };
    const double exact = (std::pow(2.0, deg + 1) - std::pow(-1.0, deg + 1)) / (deg + 1);
    EXPECT_NEAR(integrate_piecewise(f, bp).value, exact, 1e-12) << deg;
  }
}

TEST(Quadrature, EndpointSingularity) {
  std::vector<double> bp{0.0, 1.0};
  EXPECT_NEAR(integrate_piecewise([](double x) { return 1.0 / std::sqrt(x); }, bp).value, 2.0, 1e-9);
  EXPECT_NEAR(integrate_piecewise([](double x) { return std::log(x); }, bp).value, -1.0, 1e-10);
}

TEST(Quadrature, BudgetExhaustedCarriesEstimate) {
  std::vector<double> bp{0.0, 1.0};
  QuadratureSpec spec{1e-15, 1e-15, 3};
  try {
    integrate_piecewise([](double x) { return std::sin(1.0 / (x + 1e-3)); }, bp, spec);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_TRUE(std::isfinite(e.partial_estimate()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(LeastSquares, Examples) {
  std::vector<std::function<double(double)>> lin{[](double) { return 1.0; }, [](double x) { return x; }};
  std::vector<double> xs{0, 1, 2, 3}, ys{1, 3, 5, 7};
  auto f = fit_least_squares(lin, xs, ys);
  EXPECT_NEAR(f.coefficients[0], 1.0, 1e-13);
  EXPECT_NEAR(f.coefficients[1], 2.0, 1e-13);
  EXPECT_NEAR(f.residual, 0.0, 1e-20);

  std::vector<std::function<double(double)>> one{[](double) { return 1.0; }};
  std::vector<double> x2{0, 1}, y2{1, 3};
  f = fit_least_squares(one, x2, y2);
  EXPECT_NEAR(f.coefficients[0], 2.0, 1e-15);
  EXPECT_NEAR(f.residual, 2.0, 1e-14);
}

TEST(LeastSquares, AnsatzRoundTrip) {
  std::vector<std::function<double(double)>> basis{[](double) { return 1.0; },
                                                   [](double n) { return std::pow(n + 1, -0.5); },
                                                   [](double n) { return std::pow(n + 1, -1.5); }};
  std::vector<double> xs, ys;
  for (int n = 1; n <= 40; ++n) {
    xs.push_back(n);
    ys.push_back(0.7 - 0.01 * std::pow(n + 1.0, -0.5) + 0.003 * std::pow(n + 1.0, -1.5));
  }
  const auto f = fit_least_squares(basis, xs, ys);
  EXPECT_NEAR(f.coefficients[0], 0.7, 1e-8);
  EXPECT_NEAR(f.coefficients[1], -0.01, 1e-8);
  EXPECT_NEAR(f.coefficients[2], 0.003, 1e-8);
}

TEST(LeastSquares, RankDeficientNamesColumn) {
  std::vector<std::function<double(double)>> basis{[](double) { return 1.0; }, [](double x) { return x; },
                                                   [](double x) { return 2.0 * x - 1.0; }};
  std::vector<double> xs{0, 1, 2, 3}, ys{1, 2, 3, 4};
  try {
    fit_least_squares(basis, xs, ys);
    FAIL() << "expected RankDeficientError";
  } catch (const RankDeficientError& e) {
    EXPECT_EQ(e.column(), 2);
  }
}
