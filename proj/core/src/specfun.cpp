#include "precession/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "precession/errors.hpp"
#include "precession/linalg.hpp"

namespace precession {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;
constexpr long kMaxTerms = 1000000;

double si_positive(double x) {
  if (x <= 4.0) {
    double sum = 0.0, term = x;  // x^(2k+1)/(2k+1)!
    for (int k = 0; k < 60; ++k) {
      const double add = term / (2 * k + 1);
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
      term *= -x * x / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return sum - kHalfPi;
  }
  // Lentz continued fraction for E1(ix)
  const double tiny = 1e-300;
  cplx b(1.0, x);
  cplx c(1.0 / tiny, 0.0);
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 2; i < 1000; ++i) {
    const double a = -double(i - 1) * double(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
  }
  h *= cplx(std::cos(x), -std::sin(x));
  return h.imag();
}

// NR-style Levin transform on a stream of partial sums.
class Levin {
 public:
  explicit Levin(int capacity) : numer_(capacity), denom_(capacity) {}

  cplx next(cplx sum, cplx omega) {
    const double beta = 1.0;
    double term = 1.0 / (beta + n_);
    denom_[n_] = term / omega;
    numer_[n_] = sum * denom_[n_];
    if (n_ > 0) {
      const double ratio = (beta + n_ - 1) * term;
      for (int j = 1; j <= n_; ++j) {
        const double fact = (n_ - j + beta) * term;
        numer_[n_ - j] = numer_[n_ - j + 1] - fact * numer_[n_ - j];
        denom_[n_ - j] = denom_[n_ - j + 1] - fact * denom_[n_ - j];
        term *= ratio;
      }
    }
    ++n_;
    if (std::abs(denom_[0]) > std::numeric_limits<double>::min() * 10) last_ = numer_[0] / denom_[0];
    return last_;
  }

  int size() const { return n_; }
  int capacity() const { return int(numer_.size()); }

 private:
  std::vector<cplx> numer_, denom_;
  int n_ = 0;
  cplx last_ = 0.0;
};

// Sums t_0 + t_1 + ... where t_{m+1} = t_m * ratio(m). `skip` marks where the
// term ratios settle into their asymptotic form.
SeriesResult sum_series(cplx t0, const std::function<cplx(long)>& ratio, double zabs, long skip,
                        const char* name) {
  const bool on_circle = std::abs(zabs - 1.0) < 1e-12;
  cplx s = 0.0, t = t0;
  if (!on_circle) {
    for (long m = 0; m < kMaxTerms; ++m) {
      s += t;
      const cplx r = ratio(m);
      const cplx tn = t * r;
      if (tn == 0.0 && m >= skip) return {s, m + 1, 0.0};
      if (m >= skip) {
        const double q = std::max(std::abs(r), zabs);
        if (q < 1.0) {
          const double bound = std::abs(tn) / (1.0 - q);
          if (bound <= 1e-17 * std::abs(s) || bound < 1e-300) return {s, m + 1, bound};
        }
      }
      t = tn;
    }
    std::ostringstream os;
    os << name << ": no convergence within " << kMaxTerms << " terms";
    throw ConvergenceError(os.str(), std::abs(s), std::abs(t));
  }
  long m = 0;
  for (; m < skip; ++m) {
    s += t;
    t *= ratio(m);
  }
  Levin levin(64);
  cplx prev = s, best = s;
  double best_diff = std::numeric_limits<double>::infinity();
  int agree = 0;
  for (int j = 0; j < levin.capacity(); ++j, ++m) {
    if (t == 0.0) return {s, m, 0.0};
    s += t;
    const cplx est = levin.next(s, double(j + 1) * t);
    t *= ratio(m);
    if (j >= 2) {
      const double diff = std::abs(est - prev);
      if (diff < best_diff) {
        best_diff = diff;
        best = est;
      }
      if (diff <= 1e-15 * std::abs(est)) {
        if (++agree >= 2) return {est, m + 1, diff};
      } else {
        agree = 0;
      }
    }
    prev = est;
  }
  return {best, m, best_diff};
}

long settle_index(std::initializer_list<double> params) {
  double big = 0.0;
  for (double p : params) big = std::max(big, std::abs(p));
  return 2 * long(std::ceil(big)) + 20;
}

cplx x_cot_x(cplx x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 3.0;
  return x * std::cos(x) / std::sin(x);
}

}  // namespace

double si(double x) {
  if (x == 0.0) return -kHalfPi;
  if (x < 0.0) return -si_positive(-x) - 2.0 * kHalfPi;
  return si_positive(x);
}

double log_central_binom_scaled(long n) {
  if (n < 0) throw DomainError("log_central_binom: negative argument");
  if (n < 64) {
    double a = 1.0;
    for (long m = 0; m < n; ++m) a *= (m + 0.5) / (m + 1.0);
    return std::log(a);
  }
  const double x = double(n), x2 = x * x;
  const double lnpi = std::log(2.0 * kHalfPi);
  return -0.5 * (std::log(x) + lnpi) - 1.0 / (8.0 * x) + 1.0 / (192.0 * x * x2) - 1.0 / (640.0 * x * x2 * x2) +
         17.0 / (14336.0 * x * x2 * x2 * x2);
}

double log_central_binom(long n) { return 2.0 * double(n) * std::log(2.0) + log_central_binom_scaled(n); }

SeriesResult hyp3f2(double a1, double a2, double a3, double b1, double b2, cplx z) {
  const double zabs = std::abs(z);
  if (zabs > 1.0 + 1e-12) throw DomainError("hyp3f2: |z| > 1");
  for (long m = 0; m < kMaxTerms; ++m) {
    if (b1 + m == 0.0 || b2 + m == 0.0) {
      std::ostringstream os;
      os << "hyp3f2: lower parameter vanishes at term " << m;
      throw DomainError(os.str());
    }
    if (b1 + m > 0 && b2 + m > 0) break;
  }
  const double excess = b1 + b2 - a1 - a2 - a3;
  if (std::abs(zabs - 1.0) < 1e-12) {
    if (std::abs(z - 1.0) < 1e-12 && excess <= 0.0) throw DomainError("hyp3f2: series diverges at z = 1");
    if (excess <= -1.0) throw DomainError("hyp3f2: series diverges on |z| = 1");
  }
  auto ratio = [=](long m) {
    const double mm = double(m);
    return (a1 + mm) * (a2 + mm) * (a3 + mm) / ((b1 + mm) * (b2 + mm) * (mm + 1.0)) * z;
  };
  return sum_series(1.0, ratio, zabs, settle_index({a1, a2, a3, b1, b2}), "hyp3f2");
}

SeriesResult inc_beta_scaled(cplx z, double a, double b) {
  const double zabs = std::abs(z);
  if (zabs > 1.0 + 1e-12) throw DomainError("inc_beta: |z| > 1");
  if (a <= 0.0 && a == std::floor(a)) {
    std::ostringstream os;
    os << "inc_beta: term n=" << long(-a) << " has zero denominator n + a";
    throw DomainError(os.str());
  }
  if (std::abs(zabs - 1.0) < 1e-12) {
    if (std::abs(z - 1.0) < 1e-12 && b <= 0.0) throw DomainError("inc_beta: series diverges at z = 1 for b <= 0");
    if (b <= -1.0) throw DomainError("inc_beta: series diverges on |z| = 1");
  }
  auto ratio = [=](long m) {
    const double mm = double(m);
    return (mm + 1.0 - b) / (mm + 1.0) * (mm + a) / (mm + 1.0 + a) * z;
  };
  return sum_series(1.0 / a, ratio, zabs, settle_index({a, b}), "inc_beta");
}

SeriesResult inc_beta(cplx z, double a, double b) {
  SeriesResult r = inc_beta_scaled(z, a, b);
  if (z == 0.0) {
    if (a > 0) return {0.0, r.terms_used, 0.0};
    throw DomainError("inc_beta: z^a undefined at z = 0 for a <= 0");
  }
  const cplx za = std::exp(a * std::log(z));
  r.value *= za;
  r.tail_bound *= std::abs(za);
  return r;
}

KernelTable::KernelTable(cplx z, int n_max) : z_(z), n_max_(n_max), s_(n_max + 2), t_(n_max + 2) {
  if (n_max < 0) throw DomainError("KernelTable: negative order");
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("KernelTable: |z| > 1");
  if (std::abs(z) == 0.0) {
    s_[0] = 2.0;
    t_[0] = 4.0;
  } else {
    const cplx w = std::sqrt(z);
    const cplx th = std::asin(w);
    s_[0] = 2.0 * th / w;
    auto part = [&](bool imag) {
      return [th, imag](double s) {
        const cplx v = th * x_cot_x(s * th);
        return imag ? v.imag() : v.real();
      };
    };
    const double bp[2] = {0.0, 1.0};
    QuadratureSpec spec{1e-16, 1e-15, 200};
    const double re = integrate_piecewise(part(false), bp, spec).value;
    const double im = integrate_piecewise(part(true), bp, spec).value;
    t_[0] = 4.0 * cplx(re, im) / w;
  }
  const cplx r = std::sqrt(1.0 - z);
  for (int n = 0; n <= n_max; ++n) {
    const double h = n + 0.5;
    s_[n + 1] = (double(n) * z * s_[n] - r) / h;
    t_[n + 1] = (double(n) * z * t_[n] + z * s_[n] - s_[n + 1]) / h;
  }
}

cplx KernelTable::l(int n, int np) const {
  if (n < 0 || np < 0 || n > n_max_ || np > n_max_) throw DomainError("KernelTable::l: index out of range");
  if (n == np) return 2.0 * s_[n] + 2.0 * double(n) * t_[n];
  return 2.0 / double(n - np) * (double(n) * s_[n] - double(np) * s_[np]);
}

cplx KernelTable::l_odd(int n, int np) const {
  if (n < 0 || np < 0 || n > n_max_ || np > n_max_) throw DomainError("KernelTable::l_odd: index out of range");
  if (n == np) return t_[n + 1];
  return (s_[n + 1] - s_[np + 1]) / double(n - np);
}

cplx l_kernel(cplx z, int n, int np) { return KernelTable(z, std::max(n, np)).l(n, np); }

cplx l_kernel_series(cplx z, int n, int np) {
  if (n < 0 || np < 0) throw DomainError("l_kernel_series: negative index");
  if (n == np) {
    const double a = 0.5 - n;
    const cplx first = hyp3f2(0.5, a, a, a + 1.0, a + 1.0, z).value / (a * a);
    const cplx second = z * hyp3f2(1.5, a + 1.0, a + 1.0, a + 2.0, a + 2.0, z).value / ((a + 1.0) * (a + 1.0));
    return first + second;
  }
  if (n == 0) return 2.0 * inc_beta_scaled(z, 0.5 - np, 0.5).value;
  if (np == 0) return 2.0 * inc_beta_scaled(z, 0.5 - n, 0.5).value;
  const cplx bn = inc_beta_scaled(z, 0.5 - n, -0.5).value;
  const cplx bnp = inc_beta_scaled(z, 0.5 - np, -0.5).value;
  return (bn - bnp) / double(n - np);
}

}  // namespace precession
