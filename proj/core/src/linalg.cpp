#include "precession/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace precession {

HermitianMatrix::HermitianMatrix(CMatrix m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("HermitianMatrix: matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol * scale) {
    std::ostringstream os;
    os << "HermitianMatrix: deviation from hermiticity " << dev << " exceeds " << tol * scale;
    throw ValidationError(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::symmetrized(const CMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("HermitianMatrix: matrix is not square");
  HermitianMatrix h;
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

EigenDecomposition eigh(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.mat());
  if (es.info() != Eigen::Success) throw ConvergenceError("eigh: eigensolver failed", 0.0, 0.0);
  return {es.eigenvalues(), es.eigenvectors()};
}

EigenDecomposition eigh_jacobi(const HermitianMatrix& h, double tol, int max_sweeps) {
  const Eigen::Index n = h.dim();
  CMatrix a = h.mat();
  CMatrix v = CMatrix::Identity(n, n);
  const double total = a.norm();
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= tol * std::max(total, 1e-300)) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const cplx phase = apq / r;  // e^{i phi}
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cplx u00 = c, u01 = s;
        const cplx u10 = -s * std::conj(phase), u11 = c * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * u00 + akq * u10;
          a(k, q) = akp * u01 + akq * u11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
          a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * u00 + vkq * u10;
          v(k, q) = vkp * u01 + vkq * u11;
        }
      }
    }
  }
  if (sweep == max_sweeps) throw ConvergenceError("eigh_jacobi: sweep budget exhausted", 0.0, 0.0);
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });
  EigenDecomposition out{RVector(n), CMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]).real();
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

EigenPair max_eigenpair(const HermitianMatrix& h) {
  if (h.dim() == 0) throw DimensionError("max_eigenpair: empty matrix");
  auto ed = eigh(h);
  const Eigen::Index n = h.dim();
  const double gap = n > 1 ? ed.values[n - 1] - ed.values[n - 2] : std::numeric_limits<double>::infinity();
  return {ed.values[n - 1], ed.vectors.col(n - 1), gap};
}

double max_eigenvalue(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()[h.dim() - 1];
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partial_transpose(const CMatrix& m, int dA, int dB) {
  if (dA <= 0 || dB <= 0 || m.rows() != m.cols() || m.rows() != Eigen::Index(dA) * dB)
    throw DimensionError("partial_transpose: matrix is not (dA*dB) x (dA*dB)");
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < dA; ++a)
    for (int ap = 0; ap < dA; ++ap)
      for (int b = 0; b < dB; ++b)
        for (int bp = 0; bp < dB; ++bp) out(a * dB + b, ap * dB + bp) = m(a * dB + bp, ap * dB + b);
  return out;
}

CMatrix psd_projection(const HermitianMatrix& h) {
  auto ed = eigh(h);
  RVector lam = ed.values.cwiseMax(0.0);
  return ed.vectors * lam.asDiagonal() * ed.vectors.adjoint();
}

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  long order;
};

Segment gk15(const std::function<double(double)>& f, double a, double b, long order) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - h * kXgk[j]);
    fv[14 - j] = f(c + h * kXgk[j]);
  }
  double kron = kWgk[7] * fv[7], gauss = kWg[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    kron += kWgk[j] * (fv[j] + fv[14 - j]);
    if (j % 2 == 1) gauss += kWg[j / 2] * (fv[j] + fv[14 - j]);
  }
  const double mean = 0.5 * kron;
  double asc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  double err = std::abs((kron - gauss) * h);
  asc *= std::abs(h);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  return {a, b, kron * h, err, order};
}

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.order > y.order;
  }
};

}  // namespace

QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     std::span<const double> breakpoints, const QuadratureSpec& spec) {
  if (breakpoints.size() < 2) throw ValidationError("integrate_piecewise: need at least two breakpoints");
  for (size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw ValidationError("integrate_piecewise: breakpoints must be strictly increasing");
  std::priority_queue<Segment, std::vector<Segment>, ByError> queue;
  long order = 0;
  double value = 0.0, error = 0.0;
  for (size_t i = 1; i < breakpoints.size(); ++i) {
    Segment s = gk15(f, breakpoints[i - 1], breakpoints[i], order++);
    value += s.value;
    error += s.error;
    queue.push(s);
  }
  int subdivisions = 0;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    if (!std::isfinite(value)) throw ConvergenceError("integrate_piecewise: non-finite integrand", value, error);
    if (subdivisions >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "integrate_piecewise: " << spec.max_subdivisions << " subdivisions exhausted, error estimate " << error;
      throw ConvergenceError(os.str(), value, error);
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gk15(f, worst.a, mid, order++);
    Segment right = gk15(f, mid, worst.b, order++);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++subdivisions;
    if (queue.size() % 64 == 0) {
      // resum to keep drift from the running updates in check
      auto copy = queue;
      value = error = 0.0;
      while (!copy.empty()) {
        value += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {value, error, subdivisions};
}

FitResult fit_least_squares(const std::vector<std::function<double(double)>>& basis,
                            std::span<const double> xs, std::span<const double> ys) {
  const Eigen::Index m = Eigen::Index(xs.size()), p = Eigen::Index(basis.size());
  if (xs.size() != ys.size()) throw DimensionError("fit_least_squares: xs and ys differ in length");
  if (p == 0) throw ValidationError("fit_least_squares: empty basis");
  if (m < p) throw RankDeficientError("fit_least_squares: fewer samples than basis functions", int(m));
  RMatrix a(m, p);
  RVector y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) a(i, j) = basis[j](xs[i]);
    y[i] = ys[i];
  }
  // modified Gram-Schmidt with one reorthogonalisation pass
  RMatrix q = a;
  RMatrix r = RMatrix::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double original = a.col(j).norm();
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index k = 0; k < j; ++k) {
        const double proj = q.col(k).dot(q.col(j));
        r(k, j) += proj;
        q.col(j) -= proj * q.col(k);
      }
    const double nrm = q.col(j).norm();
    if (!(nrm > 1e-12 * std::max(original, 1e-300))) {
      std::ostringstream os;
      os << "fit_least_squares: basis column " << j << " is linearly dependent on earlier columns";
      throw RankDeficientError(os.str(), int(j));
    }
    r(j, j) = nrm;
    q.col(j) /= nrm;
  }
  RVector qty = q.transpose() * y;
  RVector coef = r.triangularView<Eigen::Upper>().solve(qty);
  const double residual = (a * coef - y).squaredNorm();
  return {coef, residual};
}

}  // namespace precession
