#include "precession/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "precession/errors.hpp"
#include "precession/parallel.hpp"

namespace precession {

BinningScheme validate_scheme(const std::vector<double>& endpoints) {
  if (endpoints.size() < 3) throw ValidationError("validate_scheme: need at least 3 endpoints");
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    if (!std::isfinite(endpoints[i])) throw ValidationError("validate_scheme: non-finite endpoint");
    if (i > 0 && !(endpoints[i] > endpoints[i - 1])) {
      std::ostringstream os;
      os << "validate_scheme: endpoints not strictly increasing at position " << i;
      throw ValidationError(os.str());
    }
  }
  // a_0 <= 0 < a_1
  const auto it = std::upper_bound(endpoints.begin(), endpoints.end(), 0.0);
  if (it == endpoints.begin() || it == endpoints.end())
    throw ValidationError("validate_scheme: no bin contains 0");
  BinningScheme s;
  s.e_ = endpoints;
  s.zero_ = int(it - endpoints.begin()) - 1;
  const double a0 = s.a(0), a1 = s.a(1);
  const int last = int(endpoints.size()) - 1 - s.zero_;  // largest relative endpoint index
  for (int n = 1; n + 1 <= last; ++n) {
    if (s.a(n + 1) - a1 >= a1 - a0) {
      s.n_hat_ = n;
      return s;
    }
  }
  throw ValidationError("validate_scheme: bins above the zero bin never get wider than the zero bin");
}

int BinningScheme::bin_of(double x) const {
  if (!(x >= e_.front() && x < e_.back())) {
    std::ostringstream os;
    os << "coarse_theta: value " << x << " outside [" << e_.front() << ", " << e_.back() << ")";
    throw DomainError(os.str());
  }
  const auto it = std::upper_bound(e_.begin(), e_.end(), x);
  return int(it - e_.begin()) - 1 - zero_;
}

EpsilonBand validate_band(double eps_minus, double eps_plus) {
  if (!(eps_minus >= 0.0 && eps_plus >= eps_minus))
    throw ValidationError("validate_band: need eps_plus >= eps_minus >= 0");
  return {eps_minus, eps_plus};
}

namespace {

int half_units(int bin, int n_hat) { return bin > n_hat ? 2 : (bin >= 0 ? 1 : 0); }

int half_units_open(double x, const BinningScheme& s) {
  const auto& e = s.endpoints();
  if (x < e.front()) return 0;
  if (x >= e.back()) return 2;
  return half_units(s.bin_of(x), s.n_hat());
}

int half_units_open(double x, const EpsilonBand& b) { return x > b.eps_plus ? 2 : (x >= -b.eps_minus ? 1 : 0); }

template <class Rule>
CoarseMax search(const AngleSet& angles, const Rule& rule, double scale, const CoarseSearch& cfg) {
  if (angles.size() != 3) throw ValidationError("classical_coarse_max: defined for three angles");
  std::vector<double> phis;
  phis.reserve(cfg.phi_points + 12);
  for (int i = 0; i < cfg.phi_points; ++i) phis.push_back(kTwoPi * i / cfg.phi_points);
  for (double th : angles.values())
    for (double s : {-1.0, 1.0})
      for (double e : {-1e-9, 1e-9}) phis.push_back(std::fmod(th + s * kPi / 2.0 + e + 2.0 * kTwoPi, kTwoPi));
  std::sort(phis.begin(), phis.end());
  std::vector<double> rs(cfg.r_points);
  const double l0 = std::log(cfg.r_min_factor * scale), l1 = std::log(cfg.r_max_factor * scale);
  for (int i = 0; i < cfg.r_points; ++i) rs[i] = std::exp(l0 + (l1 - l0) * i / std::max(1, cfg.r_points - 1));

  std::vector<CoarseMax> per_r(rs.size());
  parallel_for(rs.size(), [&](std::size_t i) {
    CoarseMax best{-1, rs[i], 0.0};
    for (double phi : phis) {
      int h = 0;
      for (double th : angles.values()) h += half_units_open(rs[i] * std::cos(th - phi), rule);
      if (h > best.half_units) best = {h, rs[i], phi};
    }
    per_r[i] = best;
  });
  CoarseMax best = per_r[0];
  for (const auto& c : per_r)
    if (c.half_units > best.half_units) best = c;
  return best;
}

}  // namespace

double coarse_theta(double value, const BinningScheme& scheme) {
  return 0.5 * half_units(scheme.bin_of(value), scheme.n_hat());
}

double coarse_theta(double value, const EpsilonBand& band) { return 0.5 * half_units_open(value, band); }

CoarseMax classical_coarse_max(const AngleSet& angles, const BinningScheme& scheme, const CoarseSearch& cfg) {
  return search(angles, scheme, scheme.a(1) - scheme.a(0), cfg);
}

CoarseMax classical_coarse_max(const AngleSet& angles, const EpsilonBand& band, const CoarseSearch& cfg) {
  const double w = band.eps_minus + band.eps_plus;
  return search(angles, band, w > 0 ? w : 1.0, cfg);
}

}  // namespace precession
