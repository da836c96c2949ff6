#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "adc/core.hpp"
#include "adc/selection.hpp"
#include "adc/solver.hpp"

namespace adc {

enum class DirectVariant {
  Classic,         // trisect along every longest side, measure = half diagonal
  LocallyBiased,   // one longest side per split, measure = half longest side
};

struct DirectConfig {
  double epsilon = 1e-4;
  std::uint64_t t_max = 1'000'000;
  DirectVariant variant = DirectVariant::Classic;
  TargetPredicate target;
  std::uint64_t iteration_limit = 0;

  void validate() const;
};

/// A box of the center-sampling partition. Along dimension j it is the
/// ternary cell [cell[j], cell[j] + 1] / 3^depth[j], so the center
/// (cell + 1/2) / 3^depth is exact in base 6.
struct CenterBox {
  std::uint32_t id = 0;
  std::vector<std::uint64_t> cell;
  std::vector<int> depth;
  double f_center = 0.0;

  std::size_t dimension() const noexcept { return cell.size(); }
  int total_depth() const noexcept;
  int min_depth() const noexcept;
  Point center() const;
  double lower(std::size_t j) const;
  double upper(std::size_t j) const;
};

/// DIRECT and DIRECT-l on the unit cube image of a problem.
class DirectSolver {
 public:
  DirectSolver(ProblemInstance problem, DirectConfig config);

  void initialize();
  bool step();
  RunResult run();

  bool stopped() const noexcept { return stop_.has_value(); }
  const std::vector<CenterBox>& boxes() const noexcept { return boxes_; }
  const EvaluationCounter& counter() const noexcept { return counter_; }
  double f_min() const noexcept { return f_min_; }
  /// Size measure of a box for the configured variant.
  double measure(const CenterBox& b) const;
  /// Hull and subdivided ids of the last iteration.
  const HullResult& last_hull() const noexcept { return last_hull_; }
  const std::vector<std::uint32_t>& last_selected() const noexcept { return last_selected_; }
  /// Every evaluated point in unit-cube coordinates, in order.
  const std::vector<Point>& trials() const noexcept { return trials_; }

  RunResult result() const;

 private:
  std::uint32_t key(const CenterBox& b) const;
  double sample(const Point& x);
  void insert(const CenterBox& b);
  void erase(const CenterBox& b);
  void subdivide(std::uint32_t id);
  bool check_stop();

  ProblemInstance problem_;
  DirectConfig config_;
  EvaluationCounter counter_;
  std::vector<CenterBox> boxes_;
  std::vector<std::set<std::pair<double, std::uint32_t>>> by_key_;
  std::vector<Point> trials_;
  double f_min_ = 0.0;
  Point x_min_;
  std::uint64_t iterations_ = 0;
  HullResult last_hull_;
  std::vector<std::uint32_t> last_selected_;
  std::optional<std::uint64_t> target_trial_;
  std::optional<StopReason> stop_;
  bool initialized_ = false;
};

RunResult direct_run(const ProblemInstance& problem, const DirectConfig& config);

}  // namespace adc
