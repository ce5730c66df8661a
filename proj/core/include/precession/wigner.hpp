#pragma once

#include <string>
#include <utility>

#include "precession/oscillator.hpp"

namespace precession {

enum class WedgeKind { Single, Double, Triple, KWedge };
std::string to_string(WedgeKind k);

struct WedgeBound {
  WedgeKind kind;
  double value;
  BoundRecord source;
};

// |p - 1/2| / (2 (2/3 - 1/2)) = 3 |p - 1/2|: deviation of a triple-wedge
// Wigner integral from 1/2 implied by a score bound p.
double score_to_wedge_deviation(double p);
// Inverse on p >= 1/2.
double wedge_deviation_to_score(double deviation);

// Elementwise conversion of a (lower, upper) score bracket.
std::pair<double, double> triple_wedge_bounds(double lower_p, double upper_p);

// max(0, 3p - 2)
double negativity_volume_lower_bound(double p);

struct PublishedWedgeConstants {
  double single_wedge;
  double double_wedge;
  double old_triple_wedge;
};
PublishedWedgeConstants published_wedge_constants();

// K (p_upper - 1/2) for the equally spaced K-wedge.
double k_wedge_bound(int K, double p_upper);

}  // namespace precession
