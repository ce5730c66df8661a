#include "precession/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "precession/parallel.hpp"
#include "precession/specfun.hpp"

namespace precession {

namespace {

const double kLn2 = std::log(2.0);
const double kLnPi = std::log(kPi);

int floor_mod(long x, int m) { return int(((x % m) + m) % m); }

struct RootTables {
  std::array<KernelTable, 3> tables;
  explicit RootTables(int n_max)
      : tables{KernelTable(1.0, n_max), KernelTable(std::polar(1.0, 2.0 * kPi / 3.0), n_max),
               KernelTable(std::polar(1.0, -2.0 * kPi / 3.0), n_max)} {}
};

// Generating-function element between labels L and L' of the same residue.
cplx a3_from_tables(long L, long Lp, const RootTables& rt) {
  const int r = floor_mod(L, 6);
  const bool even = L % 2 == 0;
  const int N = int(L / 2), Np = int(Lp / 2);
  const int s = even ? ((r + 2) / 2) % 3 : ((r + 3) / 2) % 3;
  const double sign = ((N + Np) % 2 == 0) ? 1.0 : -1.0;
  double log_pref = 0.5 * (log_central_binom_scaled(N) + log_central_binom_scaled(Np));
  if (!even) log_pref += 0.5 * (std::log(2.0 * N + 1.0) + std::log(2.0 * Np + 1.0));
  const double pref = sign * std::exp(log_pref) / (8.0 * kPi);
  cplx acc = 0.0;
  for (int j = 0; j < 3; ++j) {
    const cplx phase = std::polar(1.0, -2.0 * kPi * double(j * s) / 3.0);
    const cplx l = even ? rt.tables[j].l(N, Np) : rt.tables[j].l_odd(N, Np);
    acc += phase * l;
  }
  cplx v = pref * acc / 3.0;
  if (L == Lp) v -= 1.0 / 36.0;
  return v;
}

}  // namespace

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::ClosedForm: return "closed_form";
    case BoundKind::Eigensolve: return "eigensolve";
    case BoundKind::Quadrature: return "quadrature";
    case BoundKind::Fit: return "fit";
  }
  return "unknown";
}

double theta_x_element(long n, long np) {
  if (n < 0 || np < 0) throw DomainError("theta_x_element: negative level");
  const long d = n - np;
  if (d % 2 == 0) return 0.0;
  const int pn = int(n % 2), pnp = int(np % 2);
  double lg = -0.5 * (pn + pnp) * kLn2 - std::log(std::abs(double(d)));
  lg += 0.5 * ((pn ? std::log(double(n)) : 0.0) + (pnp ? std::log(double(np)) : 0.0) - kLnPi +
               log_central_binom_scaled(n / 2) + log_central_binom_scaled(np / 2));
  const bool flip = floor_mod((d - 1) / 2, 2) == 1;
  const double sign = (flip ? -1.0 : 1.0) * (d > 0 ? 1.0 : -1.0);
  return sign * std::exp(lg);
}

ThetaTable::ThetaTable(int cutoff) : cutoff_(cutoff), t_(cutoff + 1, cutoff + 1) {
  if (cutoff < 0) throw DomainError("ThetaTable: negative cutoff");
  for (int n = 0; n <= cutoff; ++n)
    for (int m = 0; m <= n; ++m) t_(n, m) = t_(m, n) = theta_x_element(n, m);
}

HermitianMatrix q_matrix(const AngleSet& angles, const ThetaTable& table) {
  const int d = table.cutoff() + 1;
  const int K = angles.size();
  CMatrix q = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    q(n, n) = 0.5;
    for (int m = 0; m < d; ++m) {
      const double t = table(n, m);
      if (t == 0.0) continue;
      cplx phase = 0.0;
      for (double th : angles.values()) phase += std::polar(1.0, th * double(n - m));
      q(n, m) += phase * t / double(K);
    }
  }
  return HermitianMatrix::symmetrized(q);
}

HermitianMatrix q_matrix(const AngleSet& angles, int cutoff) { return q_matrix(angles, ThetaTable(cutoff)); }

double fock_score(const CVector& state, const AngleSet& angles) {
  if (state.size() == 0) throw ValidationError("fock_score: empty state");
  const double nrm = state.norm();
  if (std::abs(nrm - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "fock_score: state norm " << nrm << " differs from 1";
    throw ValidationError(os.str());
  }
  const auto q = q_matrix(angles, int(state.size()) - 1);
  return (state.adjoint() * q.mat() * state)(0, 0).real();
}

RMatrix a3_block(int residue, int n_max) {
  if (residue < 0 || residue > 5) throw DomainError("a3_block: residue must be in 0..5");
  if (n_max < 0) throw DomainError("a3_block: negative size");
  const RootTables rt(3 * n_max + 3);
  RMatrix b(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= n; ++m) b(n, m) = b(m, n) = a3_from_tables(6L * n + residue, 6L * m + residue, rt).real();
  return b;
}

cplx a3_element_complex(int n, int np, int residue) {
  if (residue < 0 || residue > 5) throw DomainError("a3_element: residue must be in 0..5");
  if (n < 0 || np < 0) throw DomainError("a3_element: negative index");
  const RootTables rt(3 * std::max(n, np) + 3);
  return a3_from_tables(6L * n + residue, 6L * np + residue, rt);
}

double a3_element(int n, int np, int residue) { return a3_element_complex(n, np, residue).real(); }

A3Truncation::A3Truncation(int n_hat_max) : n_hat_max_(n_hat_max) {
  if (n_hat_max < 1) throw DomainError("A3Truncation: n_hat must be at least 1");
  const RootTables rt(3 * n_hat_max + 3);
  parallel_for(6, [&](std::size_t r) {
    const int n_max = r == 0 ? n_hat_max : n_hat_max - 1;
    RMatrix b(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n)
      for (int m = 0; m <= n; ++m) b(n, m) = b(m, n) = a3_from_tables(6L * n + long(r), 6L * m + long(r), rt).real();
    blocks_[r] = std::move(b);
  });
}

double A3Truncation::max_eigenvalue(int n_hat) const {
  if (n_hat < 1 || n_hat > n_hat_max_) throw DomainError("A3Truncation: n_hat out of range");
  double best = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < 6; ++r) {
    const int k = r == 0 ? n_hat + 1 : n_hat;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(blocks_[r].topLeftCorner(k, k), Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues()[k - 1]);
  }
  return best;
}

namespace {
double p_from_lambda(double lambda) { return 0.5 + std::sqrt(std::max(0.0, lambda + 1.0 / 36.0)); }
}  // namespace

BoundRecord lower_bound_p3(int n_hat) {
  const A3Truncation t(n_hat);
  std::ostringstream name;
  name << "lower_bound_p3(n_hat=" << n_hat << ")";
  return {name.str(), p_from_lambda(t.max_eigenvalue(n_hat)), BoundKind::Eigensolve, 1e-12};
}

std::vector<double> lower_bound_sequence(int n_hat_max) {
  const A3Truncation t(n_hat_max);
  std::vector<double> out(n_hat_max);
  parallel_for(std::size_t(n_hat_max), [&](std::size_t i) { out[i] = p_from_lambda(t.max_eigenvalue(int(i) + 1)); });
  return out;
}

LowerBoundFit extrapolate_lower_bound(const std::vector<int>& n_hats, const std::vector<double>& values) {
  std::vector<double> xs(n_hats.begin(), n_hats.end());
  std::vector<std::function<double(double)>> basis = {
      [](double) { return 1.0; }, [](double n) { return -std::pow(n + 1.0, -0.5); },
      [](double n) { return -std::pow(n + 1.0, -1.5); }};
  const auto fit = fit_least_squares(basis, xs, values);
  return {fit.coefficients[0], fit.coefficients[1], fit.coefficients[2], fit.residual};
}

double trace_a3_squared() {
  const double d = 18.0 * kPi;
  return 6.0 * kLn2 / (d * d);
}

double trace_a3_squared_quadrature() {
  const double k = 4.0 / std::sqrt(3.0);
  auto brace = [k](double phi) {
    const double c0 = std::cos(phi), cp = std::cos(phi + kPi / 3.0), cm = std::cos(phi - kPi / 3.0);
    const double a = k * cp * cm, b = k * c0 * cp, c = k * c0 * cm;
    const double h = kPi / 2.0;
    return h / a + h / b + h / c - kPi / b - kPi / c + kPi / c;
  };
  const double bp[2] = {0.0, kPi / 6.0};
  const auto r = integrate_piecewise(brace, bp, {1e-16, 1e-13, 5000});
  return r.value / (27.0 * kPi * kPi * kPi);
}

BoundRecord upper_bound_p3_closed() {
  const double v = 0.5 * (1.0 + std::sqrt(1.0 + 2.0 / kPi * std::sqrt(3.0 * kLn2)) / 3.0);
  return {"upper_bound_p3_closed", v, BoundKind::ClosedForm, 0.0};
}

namespace {

struct PairData {
  int j, k;
  double sin_diff;
};

void add_breakpoint(std::vector<double>& bps, double phi) {
  for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
    const double x = phi + shift;
    if (x > -kPi && x < kPi) bps.push_back(x);
  }
}

// Real roots of a t^2 + b t + c.
std::vector<double> quadratic_roots(double a, double b, double c) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale < 1e-14) return {};
  if (std::abs(a) < 1e-14 * scale) {
    if (std::abs(b) < 1e-14 * scale) return {};
    return {-c / b};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0) return {};
  const double q = -0.5 * (b + (b >= 0 ? 1.0 : -1.0) * std::sqrt(disc));
  std::vector<double> out{q / a};
  if (q != 0.0) out.push_back(c / q);
  return out;
}

}  // namespace

double trace_a_squared(const AngleSet& angles) {
  const auto cls = classical_max_score(angles);
  if (cls.region == Region::Outside)
    throw DomainError("trace_a_squared: angles outside the region where the classical bound is (1 + 1/K)/2");
  const int K = angles.size();
  const auto& th = angles.values();
  std::vector<PairData> pairs;
  for (int j = 0; j < K; ++j)
    for (int k = 0; k < K; ++k)
      if (j != k) pairs.push_back({j, k, std::sin(th[j] - th[k])});

  std::vector<double> bps{-kPi, kPi};
  for (int k = 0; k < K; ++k)
    for (int l = -2; l <= 1; ++l) add_breakpoint(bps, th[k] + (2 * l + 1) * kPi / 2.0);
  add_breakpoint(bps, kPi / 2.0);
  add_breakpoint(bps, -kPi / 2.0);
  auto coeffs = [&](int a, int b) {
    const double ca = std::cos(th[a]), sa = std::sin(th[a]), cb = std::cos(th[b]), sb = std::sin(th[b]);
    return std::array<double, 3>{sa * sb, ca * sb + sa * cb, ca * cb};
  };
  for (int j = 0; j < K; ++j)
    for (int k = j + 1; k < K; ++k)
      for (int l = 0; l < K; ++l)
        for (int m = l + 1; m < K; ++m) {
          if (l < j || (l == j && m <= k)) continue;
          const double sp = std::abs(std::sin(th[j] - th[k])), sq = std::abs(std::sin(th[l] - th[m]));
          const auto pq = coeffs(l, m), pp = coeffs(j, k);
          for (double sg : {1.0, -1.0}) {
            const double a = sp * pq[0] - sg * sq * pp[0];
            const double b = sp * pq[1] - sg * sq * pp[1];
            const double c = sp * pq[2] - sg * sq * pp[2];
            if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
              std::ostringstream os;
              os << "trace_a_squared: breakpoint equation degenerate for (j,k,l,m) = (" << j << "," << k << "," << l
                 << "," << m << ")";
              throw Error(os.str());
            }
            for (double t : quadratic_roots(a, b, c)) {
              if (!std::isfinite(t)) {
                std::ostringstream os;
                os << "trace_a_squared: breakpoint solver failed for (j,k,l,m) = (" << j << "," << k << "," << l
                   << "," << m << ")";
                throw Error(os.str());
              }
              add_breakpoint(bps, std::atan(t));
              add_breakpoint(bps, std::atan(t) + kPi);
            }
          }
        }
  std::sort(bps.begin(), bps.end());
  std::vector<double> uniq;
  for (double b : bps)
    if (uniq.empty() || b - uniq.back() > 1e-12) uniq.push_back(b);
  uniq.back() = kPi;

  const std::size_t np = pairs.size();
  auto integrand = [&](double phi) {
    thread_local std::vector<std::pair<double, double>> gs;
    gs.resize(np);
    std::vector<double> c(K);
    for (int k = 0; k < K; ++k) c[k] = std::cos(phi - th[k]);
    for (std::size_t i = 0; i < np; ++i) {
      const double cc = c[pairs[i].j] * c[pairs[i].k];
      gs[i] = {std::abs(pairs[i].sin_diff / cc), cc >= 0 ? 1.0 : -1.0};
    }
    std::sort(gs.begin(), gs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    // sum_{P,Q} s_P s_Q min(g_P, g_Q) over the sorted list
    double total = 0.0, tail = 0.0;
    for (std::size_t i = np; i-- > 0;) {
      total += gs[i].second * gs[i].first * (gs[i].second + 2.0 * tail);
      tail += gs[i].second;
    }
    return total;
  };
  const auto r = integrate_piecewise(integrand, uniq, {1e-14, 1e-12, 200000});
  return r.value / (64.0 * kPi * kPi * std::pow(double(K), 4));
}

BoundRecord upper_bound_pk(const AngleSet& angles) {
  const double tr = trace_a_squared(angles);
  const double K = angles.size();
  const double v = 0.5 * (1.0 + std::sqrt(1.0 + 2.0 * K * K * std::sqrt(2.0 * tr)) / K);
  std::ostringstream name;
  name << "upper_bound_pk(K=" << angles.size() << ")";
  return {name.str(), v, BoundKind::Quadrature, 1e-9};
}

double angle_action(double theta, double phi, double lambda) {
  const double x = theta - phi;
  double r = std::atan2(std::exp(-lambda) * std::sin(x), std::exp(lambda) * std::cos(x));
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

SymplecticParams symplectic_params(const AngleSet& angles) {
  if (angles.size() != 3) throw DomainError("symplectic_params: defined for three angles");
  const auto cls = classical_max_score(angles);
  if (cls.region != Region::Interior)
    throw DomainError("symplectic_params: angles are not in the interior (use the boundary result instead)");
  const double t1 = angles[1], t2 = angles[2];
  const double h = kPi / 2.0, tt = 2.0 * kPi / 3.0;
  int choice = -1;
  if ((kPi < t2 && t2 <= 2 * t1 && h < t1 && t1 <= tt) || (kPi < t2 && t2 <= t1 / 2 + kPi && tt <= t1 && t1 < kPi))
    choice = 0;
  else if ((kTwoPi - t1 <= t2 && t2 < kPi + t1 && h < t1 && t1 <= tt) ||
           (t1 / 2 + kPi <= t2 && t2 < kPi + t1 && tt <= t1 && t1 < kPi))
    choice = 1;
  else if ((2 * t1 <= t2 && t2 <= kTwoPi - t1 && h < t1 && t1 <= tt) || (kPi < t2 && t2 < kPi + t1 && 0 < t1 && t1 <= h))
    choice = 2;
  auto primed = [&](int c) {
    switch (c) {
      case 0: return std::array<double, 3>{0.0, t1, t2};
      case 1: return std::array<double, 3>{t1, t2 - t1, kTwoPi - t1};
      default: return std::array<double, 3>{t2, kTwoPi - t2, kTwoPi - t2 + t1};
    }
  };
  auto in_trine = [&](const std::array<double, 3>& p) {
    return h < p[1] && p[1] < kPi && kPi < p[2] && p[2] < 1.5 * kPi;
  };
  if (choice < 0 || !in_trine(primed(choice))) {
    choice = -1;
    for (int c = 0; c < 3; ++c)
      if (in_trine(primed(c))) {
        choice = c;
        break;
      }
    if (choice < 0) throw DomainError("symplectic_params: no relabelling reaches the reference trine");
  }
  const auto p = primed(choice);
  const double s1 = std::sin(p[1]), c1 = std::cos(p[1]), s2 = std::sin(p[2]), c2 = std::cos(p[2]);
  // tan^2(t1') tan(t2') / (tan(t2') - 2 tan(t1')) without tangents
  const double arg = s1 * s1 * s2 / (c1 * (s2 * c1 - 2.0 * s1 * c2));
  SymplecticParams out;
  out.phi0 = p[0];
  out.lambda1 = 0.25 * std::log(arg);
  out.phi2 = angle_action(p[1], 0.0, out.lambda1);
  out.lambda3 = 0.25 * (2.0 * std::log(std::abs(std::tan(out.phi2))) - std::log(3.0));
  return out;
}

std::vector<double> apply_symplectic_action(const SymplecticParams& p, const std::vector<double>& angles) {
  std::vector<double> out;
  out.reserve(angles.size());
  for (double th : angles) {
    double x = angle_action(th, p.phi0, 0.0);
    x = angle_action(x, 0.0, p.lambda1);
    x = angle_action(x, p.phi2, 0.0);
    x = angle_action(x, 0.0, p.lambda3);
    out.push_back(x);
  }
  return out;
}

double backflow_bound(double p) { return 3.0 * p - 2.0; }

BackflowBounds backflow_bounds(int n_hat) {
  const auto seq = lower_bound_sequence(n_hat);
  std::vector<int> ns(seq.size());
  for (std::size_t i = 0; i < ns.size(); ++i) ns[i] = int(i) + 1;
  const auto fit = extrapolate_lower_bound(ns, seq);
  const double upper = upper_bound_p3_closed().value;
  // The fit can land a few 1e-6 under the last rigorous value; never report below it.
  const double est = std::clamp(fit.p_inf, seq.back(), upper);
  return {{"backflow_lower", backflow_bound(seq.back()), BoundKind::Eigensolve, 1e-12},
          {"backflow_upper", backflow_bound(upper), BoundKind::ClosedForm, 0.0},
          {"backflow_estimate", backflow_bound(est), BoundKind::Fit, 1.5e-3}};
}

}  // namespace precession
