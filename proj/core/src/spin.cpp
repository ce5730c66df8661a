#include "precession/spin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "precession/parallel.hpp"

namespace precession {

namespace {

void check_two_j(int two_j, const char* who) {
  if (two_j < 1) throw ValidationError(std::string(who) + ": need 2j >= 1, got " + std::to_string(two_j));
}

double heaviside(double m) { return m > 0.5e-10 ? 1.0 : (m < -0.5e-10 ? 0.0 : 0.5); }

// Index of magnetic number m (given as 2m) in the descending basis.
int index_of(int two_j, int two_m) { return (two_j - two_m) / 2; }

}  // namespace

AngularMomentum angular_momentum_ops(int two_j) {
  check_two_j(two_j, "angular_momentum_ops");
  const int d = two_j + 1;
  const double j = 0.5 * two_j;
  AngularMomentum ops;
  ops.two_j = two_j;
  ops.m.resize(d);
  for (int a = 0; a < d; ++a) ops.m[a] = j - a;
  RMatrix jp = RMatrix::Zero(d, d);  // J_+ |m> = c |m+1>, m+1 sits one row up
  for (int a = 1; a < d; ++a) {
    const double m = ops.m[a];
    jp(a - 1, a) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  ops.jx = 0.5 * (jp + jp.transpose());
  ops.jz = ops.m.asDiagonal();
  ops.jy = (jp.cast<cplx>() - jp.transpose().cast<cplx>()) / cplx(0.0, 2.0);
  return ops;
}

namespace {

CMatrix rotation_y_half_pi(const AngularMomentum& ops) {
  const auto ed = eigh(HermitianMatrix(ops.jy));
  CVector ph(ed.values.size());
  for (Eigen::Index k = 0; k < ph.size(); ++k) ph[k] = std::polar(1.0, -0.5 * kPi * ed.values[k]);
  return ed.vectors * ph.asDiagonal() * ed.vectors.adjoint();
}

RMatrix theta_from_rotation(const CMatrix& rot, const RVector& m) {
  RVector th(m.size());
  for (Eigen::Index a = 0; a < m.size(); ++a) th[a] = heaviside(m[a]);
  const CMatrix t = rot * th.cast<cplx>().asDiagonal() * rot.adjoint();
  RMatrix out = t.real();
  return 0.5 * (out + out.transpose());
}

}  // namespace

RMatrix theta_jx(int two_j) {
  const auto ops = angular_momentum_ops(two_j);
  return theta_from_rotation(rotation_y_half_pi(ops), ops.m);
}

SpinProtocol::SpinProtocol(int two_j) : two_j_(two_j) {
  const auto ops = angular_momentum_ops(two_j);
  m_ = ops.m;
  rot_ = rotation_y_half_pi(ops);
  theta_ = theta_from_rotation(rot_, m_);
  const int d = two_j + 1;
  comm_.resize(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) comm_(a, b) = theta_(a, b) * (m_[b] - m_[a]);
}

HermitianMatrix SpinProtocol::q(std::span<const double> theta) const {
  if (theta.empty()) throw ValidationError("SpinProtocol::q: no angles");
  const Eigen::Index d = m_.size();
  // The phase of entry (a,b) depends only on m_a - m_b = b - a.
  std::vector<cplx> avg(2 * d - 1, cplx(0.0));
  for (Eigen::Index s = -(d - 1); s <= d - 1; ++s) {
    cplx acc(0.0);
    for (double th : theta) acc += std::polar(1.0, -th * double(s));
    avg[s + d - 1] = acc / double(theta.size());
  }
  CMatrix out(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) out(a, b) = theta_(a, b) * avg[b - a + d - 1];
  return HermitianMatrix::symmetrized(out);
}

HermitianMatrix SpinProtocol::q(const AngleSet& angles) const {
  return q(std::span<const double>(angles.values()));
}

double SpinProtocol::max_score(const AngleSet& angles) const { return max_eigenvalue(q(angles)); }

EigenPair SpinProtocol::max_pair(const AngleSet& angles) const { return max_eigenpair(q(angles)); }

namespace {

EigenPair top_pair_checked(const SpinProtocol& sp, std::span<const double> theta) {
  auto ep = max_eigenpair(sp.q(theta));
  if (!(ep.gap > 1e-9))
    throw DegenerateEigenvalueError("score gradient: top eigenvalue is degenerate (gap " + std::to_string(ep.gap) +
                                        "); perturb the angles slightly",
                                    ep.gap);
  return ep;
}

}  // namespace

std::vector<double> SpinProtocol::gradient(std::span<const double> theta) const {
  const auto ep = top_pair_checked(*this, theta);
  const Eigen::Index d = m_.size();
  const double j = 0.5 * two_j_;
  const double K = double(theta.size());
  // [Theta(J_x), J_z] = c R B R^dagger with B antisymmetric and supported on m in {1,0,-1} or {1/2,-1/2}.
  struct Term {
    int a, b;
  };  // B has +1 at (a,b) and -1 at (b,a)
  std::vector<Term> terms;
  double c;
  if (two_j_ % 2 == 0) {
    c = std::sqrt(j * (j + 1)) / 4.0;
    const int i1 = index_of(two_j_, 2), i0 = index_of(two_j_, 0), im = index_of(two_j_, -2);
    if (two_j_ >= 2) terms = {{i0, i1}, {im, i0}};
  } else {
    c = (j + 0.5) / 2.0;
    terms = {{index_of(two_j_, -1), index_of(two_j_, 1)}};
  }
  std::vector<double> g(theta.size(), 0.0);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    CVector u(d);
    for (Eigen::Index a = 0; a < d; ++a) u[a] = std::polar(1.0, theta[k] * m_[a]) * ep.vector[a];
    cplx acc(0.0);
    for (const auto& t : terms) {
      const cplx wa = rot_.col(t.a).dot(u);  // (R^dagger u)_a
      const cplx wb = rot_.col(t.b).dot(u);
      acc += std::conj(wa) * wb - std::conj(wb) * wa;
    }
    g[k] = (cplx(0.0, 1.0) * c * acc).real() / K;
  }
  return g;
}

std::vector<double> SpinProtocol::gradient_commutator(std::span<const double> theta) const {
  const auto ep = top_pair_checked(*this, theta);
  const Eigen::Index d = m_.size();
  const double K = double(theta.size());
  const CMatrix comm = comm_.cast<cplx>();
  std::vector<double> g(theta.size(), 0.0);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    CVector u(d);
    for (Eigen::Index a = 0; a < d; ++a) u[a] = std::polar(1.0, theta[k] * m_[a]) * ep.vector[a];
    g[k] = (cplx(0.0, 1.0) * u.dot(comm * u)).real() / K;
  }
  return g;
}

std::vector<double> SpinProtocol::gradient(const AngleSet& angles) const {
  auto g = gradient(std::span<const double>(angles.values()));
  return {g.begin() + 1, g.end()};
}

std::vector<double> SpinProtocol::gradient_commutator(const AngleSet& angles) const {
  auto g = gradient_commutator(std::span<const double>(angles.values()));
  return {g.begin() + 1, g.end()};
}

HermitianMatrix q_spin(int two_j, const AngleSet& angles) { return SpinProtocol(two_j).q(angles); }

std::vector<double> score_gradient(int two_j, const AngleSet& angles) {
  return SpinProtocol(two_j).gradient(angles);
}

std::vector<std::pair<int, int>> resonant_angles(int two_j) {
  if (two_j < 3) throw ValidationError("resonant_angles: need j >= 3/2");
  const int A = (two_j - 1) / 2;  // floor(j - 1/2)
  const int F = two_j / 2;        // floor(j)
  std::vector<std::pair<int, int>> out;
  for (int n1 = 1; n1 <= A; ++n1)
    for (int n2 = 1 + F; n2 <= n1 + A; ++n2) out.emplace_back(n1, n2);
  return out;
}

long resonant_count(int two_j) {
  if (two_j < 3) throw ValidationError("resonant_count: need j >= 3/2");
  const long A = (two_j - 1) / 2, F = two_j / 2;
  return A * (1 + 3 * A - 2 * F) / 2;
}

AngleSet global_peak_guess(int two_j) {
  if (two_j < 3) throw ValidationError("global_peak_guess: need j >= 3/2");
  const int n = two_j % 2 == 0 ? (two_j + 1) / 3 : two_j / 2;
  return three_angles(kTwoPi * n / two_j, 2.0 * kTwoPi * n / two_j);
}

double lambda_heuristic(int two_j) {
  check_two_j(two_j, "lambda_heuristic");
  const double j = 0.5 * two_j;
  const double r = two_j % 2 == 0 ? 0.533051 / (j - 0.213570) : 0.554086 / (j - 0.197425);
  return 1.0 / (1.0 + r);
}

namespace {

// Among the three relabellings, the one with theta1 <= 2pi/3 <= theta2, ties
// broken lexicographically.
AngleSet project_three(const AngleSet& a) {
  const auto sets = equivalent_sets(a);
  const double eps = 1e-12;
  int best = -1;
  for (int i = 0; i < 3; ++i) {
    const auto& s = sets[i];
    if (s[1] <= 2.0 * kPi / 3.0 + eps && s[2] >= 2.0 * kPi / 3.0 - eps) {
      if (best < 0 || std::make_pair(s[1], s[2]) < std::make_pair(sets[best][1], sets[best][2])) best = i;
    }
  }
  return best < 0 ? fundamental_representative(a) : sets[best];
}

std::vector<double> full_angles(const Eigen::VectorXd& x) {
  std::vector<double> th(x.size() + 1, 0.0);
  for (Eigen::Index k = 0; k < x.size(); ++k) th[k + 1] = x[k];
  return th;
}

}  // namespace

OptimizeResult optimize_angles(int two_j, const AngleSet& init, const OptimizeOptions& opt) {
  check_two_j(two_j, "optimize_angles");
  const int K = init.size();
  if (K % 2 == 0 || K < 3) throw ValidationError("optimize_angles: K must be odd and >= 3");
  const SpinProtocol sp(two_j);
  const Eigen::Index n = K - 1;

  Eigen::VectorXd x(n);
  for (Eigen::Index k = 0; k < n; ++k) x[k] = init[int(k) + 1];

  auto value = [&](const Eigen::VectorXd& y) {
    const auto th = full_angles(y);
    return max_eigenvalue(sp.q(std::span<const double>(th)));
  };
  // Gradient with the perturb-and-retry policy for degenerate top eigenvalues.
  auto grad = [&](Eigen::VectorXd& y) {
    for (int attempt = 0;; ++attempt) {
      try {
        const auto th = full_angles(y);
        const auto g = sp.gradient(std::span<const double>(th));
        Eigen::VectorXd out(n);
        for (Eigen::Index k = 0; k < n; ++k) out[k] = g[k + 1];
        return out;
      } catch (const DegenerateEigenvalueError&) {
        if (attempt >= 3) throw;
        for (Eigen::Index k = 0; k < n; ++k) y[k] += (k % 2 == 0 ? 1e-7 : -1e-7);
      }
    }
  };

  // BFGS ascent (minimising -lambda) with Armijo backtracking.
  Eigen::VectorXd g = grad(x);
  double f = value(x);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  int it = 0;
  bool converged = g.norm() < opt.grad_tol;
  while (!converged && it < opt.max_iterations) {
    ++it;
    Eigen::VectorXd dir = H * g;
    if (dir.dot(g) <= 0) {
      H.setIdentity();
      dir = g;
    }
    const double slope = dir.dot(g);
    double t = 1.0;
    Eigen::VectorXd xn;
    double fn = 0.0;
    bool ok = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + t * dir;
      fn = value(xn);
      if (fn >= f + 1e-4 * t * slope) {
        ok = true;
        break;
      }
      t *= 0.5;
    }
    if (!ok) {
      if (!H.isIdentity()) {
        H.setIdentity();
        continue;
      }
      break;  // no ascent possible at double precision
    }
    Eigen::VectorXd gn = grad(xn);
    const Eigen::VectorXd s = xn - x;
    const Eigen::VectorXd y = g - gn;  // gradient of -lambda changes by -(gn - g)
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      const Eigen::VectorXd Hy = H * y;
      const double yHy = y.dot(Hy);
      H += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) - (Hy * s.transpose() + s * Hy.transpose()) / sy;
    }
    x = xn;
    f = fn;
    g = gn;
    converged = g.norm() < opt.grad_tol;
  }

  std::vector<double> raw = full_angles(x);
  AngleSet a = canonicalize(std::span<const double>(raw));
  if (opt.project && K == 3) a = project_three(a);
  return {a, f, g.norm(), it, converged};
}

AngleSet resonant_init(int two_j, int K) {
  check_two_j(two_j, "resonant_init");
  if (K % 2 == 0 || K < 3) throw ValidationError("resonant_init: K must be odd and >= 3");
  if (K == 3 && two_j >= 3) return global_peak_guess(two_j);
  const int h = (K - 1) / 2;
  const int F = two_j / 2;
  const int top = two_j - 1;
  if (F < h || top - F < h)
    throw ValidationError("resonant_init: spin too small for " + std::to_string(K) + " resonant indices");
  std::vector<int> nk(K - 1);
  for (int k = 1; k <= K - 1; ++k) {
    int v = int(std::lround(double(k) * two_j / K));
    if (k <= h) v = std::clamp(v, k, F - (h - k));
    else v = std::clamp(v, F + 1 + (k - h - 1), top - (K - 1 - k));
    nk[k - 1] = v;
  }
  for (int k = 1; k < K - 1; ++k) nk[k] = std::max(nk[k], nk[k - 1] + 1);
  std::vector<double> th{0.0};
  for (int v : nk) th.push_back(kTwoPi * v / two_j);
  return canonicalize(std::span<const double>(th));
}

AngleSet midpoint_init(int two_j, int K) {
  const AngleSet r = resonant_init(two_j, K);
  std::vector<double> th(K);
  for (int k = 0; k < K; ++k) th[k] = 0.5 * (r[k] + kTwoPi * k / K);
  return canonicalize(std::span<const double>(th));
}

namespace {

// Closed triangle with vertices (+-pi/2, -sqrt3 pi/6), (0, pi/sqrt3).
bool in_triangle(double x, double y) {
  const double eps = 1e-12;
  const double s3 = std::sqrt(3.0);
  const double ybot = -s3 * kPi / 6.0;
  if (y < ybot - eps) return false;
  // sides through the apex (0, pi/sqrt3) and (+-pi/2, ybot): y <= pi/sqrt3 - sqrt3 |x|
  return y <= kPi / s3 - s3 * std::abs(x) + eps;
}

}  // namespace

std::vector<HeatPoint> heatmap(int two_j, int resolution) {
  check_two_j(two_j, "heatmap");
  if (resolution < 16) throw ValidationError("heatmap: resolution must be >= 16");
  const double s3 = std::sqrt(3.0);
  const double x1 = kPi / 2.0;
  const double y0 = -s3 * kPi / 6.0, y1 = kPi / s3;
  std::vector<HeatPoint> pts;
  for (int iy = 0; iy < resolution; ++iy)
    for (int ix = 0; ix < resolution; ++ix) {
      // mirror-exact in x, so the middle column is exactly 0
      const double x = x1 * (2 * ix - (resolution - 1)) / (resolution - 1);
      const double y = y0 + (y1 - y0) * iy / (resolution - 1);
      if (in_triangle(x, y)) pts.push_back({x, y, 0.0, ix, iy});
    }
  const SpinProtocol sp(two_j);
  parallel_for(pts.size(), [&](std::size_t i) {
    pts[i].score = sp.max_score(from_vartheta(Eigen::Vector2d(pts[i].vartheta1, pts[i].vartheta2)));
  });
  return pts;
}

void write_heatmap_csv(std::ostream& os, const std::vector<HeatPoint>& pts) {
  os << "vartheta1,vartheta2,score\n";
  char buf[128];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.vartheta1, p.vartheta2, p.score);
    os << buf;
  }
}

std::vector<HeatPoint> local_peaks(const std::vector<HeatPoint>& pts, int resolution) {
  std::vector<int> idx(std::size_t(resolution) * resolution, -1);
  for (std::size_t i = 0; i < pts.size(); ++i) idx[std::size_t(pts[i].iy) * resolution + pts[i].ix] = int(i);
  std::vector<HeatPoint> out;
  for (const auto& p : pts) {
    bool peak = true;
    for (int dy = -1; dy <= 1 && peak; ++dy)
      for (int dx = -1; dx <= 1 && peak; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int x = p.ix + dx, y = p.iy + dy;
        if (x < 0 || y < 0 || x >= resolution || y >= resolution) {
          peak = false;
          break;
        }
        const int q = idx[std::size_t(y) * resolution + x];
        if (q < 0 || !(p.score > pts[q].score)) peak = false;
      }
    if (peak) out.push_back(p);
  }
  return out;
}

std::vector<double> conjecture_sequence(int n_max) {
  if (n_max < 2) throw ValidationError("conjecture_sequence: need n_max >= 2");
  std::vector<double> out(n_max);
  parallel_for(std::size_t(n_max), [&](std::size_t i) {
    const int n = int(i) + 1;
    out[i] = SpinProtocol(3 * n).max_score(theta3());
  });
  return out;
}

ConjectureFit conjecture_fits(const std::vector<double>& seq) {
  std::vector<double> je, pe, jo, po;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const int n = int(i) + 1;
    const double j = 1.5 * n;
    (n % 2 == 0 ? je : jo).push_back(j);
    (n % 2 == 0 ? pe : po).push_back(seq[i]);
  }
  if (je.size() < 3 || jo.size() < 5) throw ValidationError("conjecture_fits: sequence too short");
  const std::vector<std::function<double(double)>> even_basis{
      [](double) { return 1.0; }, [](double j) { return 1.0 / j; }, [](double j) { return 1.0 / (j * j); }};
  std::vector<std::function<double(double)>> odd_basis{[](double) { return 1.0; }};
  for (int l = 1; l <= 4; ++l) odd_basis.push_back([l](double j) { return std::pow(j, -0.5 * l); });
  const auto fe = fit_least_squares(even_basis, je, pe);
  const auto fo = fit_least_squares(odd_basis, jo, po);
  return {fe.coefficients[0], fo.coefficients[0]};
}

}  // namespace precession
