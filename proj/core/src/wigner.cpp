#include "precession/wigner.hpp"

#include <cmath>
#include <sstream>

namespace precession {

std::string to_string(WedgeKind k) {
  switch (k) {
    case WedgeKind::Single: return "single";
    case WedgeKind::Double: return "double";
    case WedgeKind::Triple: return "triple";
    case WedgeKind::KWedge: return "k_wedge";
  }
  return "unknown";
}

double score_to_wedge_deviation(double p) { return std::abs(p - 0.5) / (2.0 * (2.0 / 3.0 - 0.5)); }

double wedge_deviation_to_score(double deviation) {
  if (deviation < 0) throw DomainError("wedge_deviation_to_score: negative deviation");
  return 0.5 + deviation * (2.0 * (2.0 / 3.0 - 0.5));
}

std::pair<double, double> triple_wedge_bounds(double lower_p, double upper_p) {
  if (!(0.5 <= lower_p && lower_p <= upper_p)) {
    std::ostringstream os;
    os << "triple_wedge_bounds: need 1/2 <= lower <= upper, got (" << lower_p << ", " << upper_p << ")";
    throw ValidationError(os.str());
  }
  return {score_to_wedge_deviation(lower_p), score_to_wedge_deviation(upper_p)};
}

double negativity_volume_lower_bound(double p) { return std::max(0.0, 3.0 * p - 2.0); }

PublishedWedgeConstants published_wedge_constants() { return {0.655940, 0.736824, 0.967820}; }

double k_wedge_bound(int K, double p_upper) {
  if (K < 3 || K % 2 == 0) throw ValidationError("k_wedge_bound: K must be odd and >= 3");
  if (p_upper < 0.5) throw ValidationError("k_wedge_bound: p_upper must be >= 1/2");
  return K * (p_upper - 0.5);
}

}  // namespace precession
