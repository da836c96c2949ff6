#include "adc/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace adc {

double lower_bound(const DiagramPoint& p, double L_hat) {
  if (!(L_hat > 0.0)) throw std::invalid_argument("Lipschitz estimate must be positive");
  return p.F - L_hat * p.d;
}

double lower_bound(const Hyperinterval& h, double L_hat) {
  if (!(L_hat > 0.0)) throw std::invalid_argument("Lipschitz estimate must be positive");
  double sq = 0.0;
  for (std::size_t j = 0; j < h.dimension(); ++j) {
    const double side = h.b.coords[j].value() - h.a.coords[j].value();
    sq += side * side;
  }
  return 0.5 * (h.f_a + h.f_b - L_hat * std::sqrt(sq));
}

HullResult lower_right_hull(std::span<const DiagramPoint> points) {
  std::vector<DiagramPoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const DiagramPoint& x, const DiagramPoint& y) {
    if (x.d != y.d) return x.d < y.d;
    if (x.F != y.F) return x.F < y.F;
    return x.interval_id < y.interval_id;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const DiagramPoint& x, const DiagramPoint& y) { return x.d == y.d; }),
            pts.end());

  HullResult hull;
  if (pts.empty()) return hull;

  std::size_t cur = 0;
  for (std::size_t j = 1; j < pts.size(); ++j) {
    if (pts[j].F <= pts[cur].F) cur = j;  // ties move right: larger d wins
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  hull.push_back({pts[cur], 0.0, kInf});

  std::vector<std::size_t> next;
  while (cur + 1 < pts.size()) {
    double best = kInf;
    next.clear();
    for (std::size_t j = cur + 1; j < pts.size(); ++j) {
      const double slope = (pts[j].F - pts[cur].F) / (pts[j].d - pts[cur].d);
      if (slope < best) {
        best = slope;
        next.assign(1, j);
      } else if (slope == best) {
        next.push_back(j);
      }
    }
    hull.back().slope_hi = best;
    for (std::size_t j : next) hull.push_back({pts[j], best, best});
    cur = next.back();
  }
  hull.back().slope_hi = kInf;
  return hull;
}

HullResult non_dominated(const Partition& partition, std::uint32_t l_min, std::uint32_t l_max) {
  std::vector<DiagramPoint> reps;
  const std::uint32_t hi = std::min(l_max, partition.Q());
  for (std::uint32_t l = std::max(l_min, partition.q()); l <= hi; ++l) {
    const auto id = partition.group_representative(l);
    if (!id) continue;
    const Hyperinterval& h = partition.interval(*id);
    reps.push_back({0.5 * group_diagonal(l, partition.dimension()), h.mean_value(), l, *id});
  }
  return lower_right_hull(reps);
}

HullResult improvement_filter(const HullResult& hull, double f_min, double xi) {
  if (xi < 0.0) throw std::invalid_argument("xi must be non-negative");
  HullResult kept;
  for (const auto& e : hull) {
    if (std::isinf(e.slope_hi) || e.point.F - e.slope_hi * e.point.d <= f_min - xi)
      kept.push_back(e);
  }
  return kept;
}

}  // namespace adc
