#include "adc/direct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "adc/geometry.hpp"

namespace adc {

void DirectConfig::validate() const {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (t_max < 1) throw std::invalid_argument("t_max must be positive");
}

int CenterBox::total_depth() const noexcept { return std::accumulate(depth.begin(), depth.end(), 0); }

int CenterBox::min_depth() const noexcept { return *std::min_element(depth.begin(), depth.end()); }

double CenterBox::lower(std::size_t j) const {
  return static_cast<double>(static_cast<long double>(cell[j]) / pow3(depth[j]));
}

double CenterBox::upper(std::size_t j) const {
  return static_cast<double>((static_cast<long double>(cell[j]) + 1.0L) / pow3(depth[j]));
}

Point CenterBox::center() const {
  Point c(cell.size());
  for (std::size_t j = 0; j < cell.size(); ++j)
    c[j] = static_cast<double>((static_cast<long double>(cell[j]) + 0.5L) / pow3(depth[j]));
  return c;
}

DirectSolver::DirectSolver(ProblemInstance problem, DirectConfig config)
    : problem_(std::move(problem)), config_(std::move(config)) {
  problem_.validate();
  config_.validate();
}

std::uint32_t DirectSolver::key(const CenterBox& b) const {
  const auto s = static_cast<std::uint32_t>(b.total_depth());
  if (config_.variant == DirectVariant::Classic) return s;
  return s / static_cast<std::uint32_t>(b.dimension());
}

double DirectSolver::measure(const CenterBox& b) const {
  const std::uint32_t k = key(b);
  if (config_.variant == DirectVariant::Classic) return 0.5 * group_diagonal(k, b.dimension());
  return 0.5 * std::pow(3.0, -static_cast<double>(k));
}

double DirectSolver::sample(const Point& x) {
  const double f = evaluate(problem_, x, counter_);
  trials_.push_back(x);
  if (trials_.size() == 1 || f < f_min_) {
    f_min_ = f;
    x_min_ = x;
  }
  if (config_.target && !target_trial_) {
    const Point p = from_unit_cube(problem_, x);
    if (config_.target(p)) target_trial_ = counter_.evaluations;
  }
  return f;
}

void DirectSolver::insert(const CenterBox& b) {
  const std::uint32_t k = key(b);
  if (by_key_.size() <= k) by_key_.resize(k + 1);
  by_key_[k].emplace(b.f_center, b.id);
}

void DirectSolver::erase(const CenterBox& b) { by_key_[key(b)].erase({b.f_center, b.id}); }

bool DirectSolver::check_stop() {
  if (target_trial_) {
    stop_ = StopReason::TargetHit;
  } else if (counter_.evaluations >= config_.t_max) {
    stop_ = StopReason::Budget;
  }
  return stop_.has_value();
}

void DirectSolver::initialize() {
  if (initialized_) throw std::logic_error("solver already initialized");
  initialized_ = true;
  const std::size_t n = problem_.dimension();
  CenterBox root{0, std::vector<std::uint64_t>(n, 0), std::vector<int>(n, 0), 0.0};
  root.f_center = sample(root.center());
  boxes_.push_back(root);
  insert(root);
  check_stop();
}

void DirectSolver::subdivide(std::uint32_t id) {
  const CenterBox parent = boxes_[id];
  const int h = parent.min_depth();
  if (h + 1 > TernaryCoord::kMaxDepth)
    throw CapacityError("subdividing box " + std::to_string(id) + " needs ternary depth " +
                        std::to_string(h + 1));

  std::vector<std::size_t> dims;
  for (std::size_t j = 0; j < parent.dimension(); ++j) {
    if (parent.depth[j] == h) dims.push_back(j);
  }
  if (config_.variant == DirectVariant::LocallyBiased) dims.resize(1);

  struct Probe {
    std::size_t dim;
    double f_lo;
    double f_hi;
  };
  std::vector<Probe> probes;
  for (std::size_t j : dims) {
    CenterBox lo = parent;
    lo.depth[j] = h + 1;
    lo.cell[j] = 3 * parent.cell[j];
    CenterBox hi = lo;
    hi.cell[j] += 2;
    const double f_lo = sample(lo.center());
    const double f_hi = sample(hi.center());
    probes.push_back({j, f_lo, f_hi});
  }
  // Split first along the dimension with the best probe.
  std::stable_sort(probes.begin(), probes.end(), [](const Probe& x, const Probe& y) {
    return std::min(x.f_lo, x.f_hi) < std::min(y.f_lo, y.f_hi);
  });

  erase(parent);
  CenterBox middle = parent;
  for (const Probe& pr : probes) {
    const std::size_t j = pr.dim;
    CenterBox lo = middle;
    lo.depth[j] = h + 1;
    lo.cell[j] = 3 * middle.cell[j];
    lo.f_center = pr.f_lo;
    CenterBox hi = lo;
    hi.cell[j] += 2;
    hi.f_center = pr.f_hi;
    middle.depth[j] = h + 1;
    middle.cell[j] = 3 * middle.cell[j] + 1;
    lo.id = static_cast<std::uint32_t>(boxes_.size());
    boxes_.push_back(lo);
    insert(lo);
    hi.id = static_cast<std::uint32_t>(boxes_.size());
    boxes_.push_back(hi);
    insert(hi);
  }
  boxes_[id] = middle;
  insert(middle);
}

bool DirectSolver::step() {
  if (!initialized_) initialize();
  if (stop_) return false;

  std::vector<DiagramPoint> reps;
  for (std::uint32_t k = 0; k < by_key_.size(); ++k) {
    if (by_key_[k].empty()) continue;
    const auto [f, id] = *by_key_[k].begin();
    reps.push_back({measure(boxes_[id]), f, k, id});
  }
  last_hull_ = lower_right_hull(reps);
  const HullResult chosen = improvement_filter(last_hull_, f_min_, config_.epsilon * std::abs(f_min_));

  last_selected_.clear();
  for (const HullEntry& e : chosen) {
    subdivide(e.point.interval_id);
    last_selected_.push_back(e.point.interval_id);
    if (check_stop()) break;
  }
  ++iterations_;
  if (!stop_ && config_.iteration_limit != 0 && iterations_ >= config_.iteration_limit)
    stop_ = StopReason::IterationLimit;
  return !stop_;
}

RunResult DirectSolver::run() {
  if (!initialized_) initialize();
  while (step()) {
  }
  return result();
}

RunResult DirectSolver::result() const {
  RunResult r;
  r.best_value = f_min_;
  r.best_point = x_min_.empty() ? Point{} : from_unit_cube(problem_, x_min_);
  r.trials = target_trial_ ? *target_trial_ : counter_.evaluations;
  r.intervals = boxes_.size();
  r.iterations = iterations_;
  r.stop_reason = stop_.value_or(StopReason::Budget);
  return r;
}

RunResult direct_run(const ProblemInstance& problem, const DirectConfig& config) {
  DirectSolver solver(problem, config);
  return solver.run();
}

}  // namespace adc
