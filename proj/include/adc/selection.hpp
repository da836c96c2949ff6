#pragma once

#include <span>
#include <vector>

#include "adc/geometry.hpp"

namespace adc {

/// A non-dominated point together with the slope interval [slope_lo, slope_hi]
/// of Lipschitz estimates for which it has the smallest lower bound.
struct HullEntry {
  DiagramPoint point;
  double slope_lo = 0.0;
  double slope_hi = 0.0;
};

/// Hull points ordered by increasing d, starting at the minimum-F point.
using HullResult = std::vector<HullEntry>;

/// Lower bound F - L_hat * d over a box represented by (d, F).
/// Throws std::invalid_argument unless L_hat > 0.
double lower_bound(const DiagramPoint& p, double L_hat);

/// (f(a) + f(b) - L_hat * |b - a|) / 2 over the box's main diagonal.
double lower_bound(const Hyperinterval& h, double L_hat);

/// Lower-right convex hull of a point set, found by gift wrapping.
///
/// Points sharing a d keep only the lowest F (then the smallest interval id).
/// Among equal F the largest d starts the march. Collinear points are all kept.
HullResult lower_right_hull(std::span<const DiagramPoint> points);

/// Non-dominated hyperintervals among the groups l_min..l_max: one
/// representative per non-empty group, then the lower-right hull.
HullResult non_dominated(const Partition& partition, std::uint32_t l_min, std::uint32_t l_max);

/// Keeps hull points with F - slope_hi * d <= f_min - xi; the last (largest d)
/// point has slope_hi = inf and is always kept.
HullResult improvement_filter(const HullResult& hull, double f_min, double xi);

}  // namespace adc
