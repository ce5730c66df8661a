#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "precession/errors.hpp"

namespace precession {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Dense complex matrix equal to its conjugate transpose.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  // Throws ValidationError if max|M - M^dagger| exceeds tol * max(1, max|M|).
  explicit HermitianMatrix(CMatrix m, double tol = 1e-12);

  // Averages m with its adjoint. No check.
  static HermitianMatrix symmetrized(const CMatrix& m);

  const CMatrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  CMatrix m_;
};

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // column k pairs with values[k]
};

// Hermitian eigensolver (Householder tridiagonalisation + implicit QL).
EigenDecomposition eigh(const HermitianMatrix& h);

// Cyclic Jacobi eigensolver. Slower, used as an independent cross-check.
EigenDecomposition eigh_jacobi(const HermitianMatrix& h, double tol = 1e-14, int max_sweeps = 100);

struct EigenPair {
  double value;
  CVector vector;
  double gap;  // distance to the next eigenvalue (infinity for dim 1)
};

EigenPair max_eigenpair(const HermitianMatrix& h);
double max_eigenvalue(const HermitianMatrix& h);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Transpose on the second tensor factor of a dA*dB square matrix.
CMatrix partial_transpose(const CMatrix& m, int dA, int dB);

// Projection onto the positive semidefinite cone (Frobenius nearest).
CMatrix psd_projection(const HermitianMatrix& h);

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  double value;
  double error_estimate;
  int subdivisions;
};

// Adaptive Gauss-Kronrod (7/15) over consecutive breakpoints. Integrable
// endpoint singularities are fine since nodes are interior.
QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     std::span<const double> breakpoints,
                                     const QuadratureSpec& spec = {});

struct FitResult {
  RVector coefficients;
  double residual;  // sum of squared residuals
};

// Linear least squares on the span of `basis`.
FitResult fit_least_squares(const std::vector<std::function<double(double)>>& basis,
                            std::span<const double> xs, std::span<const double> ys);

}  // namespace precession
