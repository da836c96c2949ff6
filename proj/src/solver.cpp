#include "adc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adc {

void SolverConfig::validate() const {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (t_max < 2) throw std::invalid_argument("t_max must be at least 2");
  if (max_depth < 1 || max_depth > TernaryCoord::kMaxDepth)
    throw std::invalid_argument("max_depth must lie in [1, 40]");
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Budget: return "budget";
    case StopReason::TargetHit: return "target";
    case StopReason::IterationLimit: return "iterations";
  }
  return "?";
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::LocalNarrow: return "local";
    case Stage::LocalWide: return "local-wide";
    case Stage::GlobalNarrow: return "global";
    case Stage::GlobalWide: return "global-wide";
  }
  return "?";
}

std::string_view to_string(Transition t) {
  switch (t) {
    case Transition::Continue: return "continue";
    case Transition::LocalNewRecord: return "local-new-record";
    case Transition::LocalOldRecord: return "local-old-record";
    case Transition::EnterGlobal: return "enter-global";
    case Transition::GlobalToLocal: return "global-to-local";
    case Transition::GlobalRestart: return "global-restart";
  }
  return "?";
}

bool sufficient_improvement(double f_min, double f_prec) {
  return f_min < f_prec && f_min <= f_prec - 0.01 * std::abs(f_prec);
}

std::uint32_t local_upper_group(std::uint32_t p_prime, std::uint32_t q) {
  return p_prime == 0 ? q : std::max(p_prime - 1, q);
}

std::uint32_t global_middle_group(std::uint32_t q, std::uint32_t p_prime) {
  return static_cast<std::uint32_t>((std::uint64_t{q} + p_prime + 1) / 2);
}

Transition switch_decision(double f_min, double f_prec, std::uint32_t p, std::uint32_t q,
                           std::uint32_t Q) {
  if (sufficient_improvement(f_min, f_prec)) return Transition::LocalNewRecord;
  if (p < Q || q == Q) return Transition::LocalOldRecord;
  return Transition::EnterGlobal;
}

DiagonalSolver::DiagonalSolver(ProblemInstance problem, SolverConfig config)
    : problem_(std::move(problem)), config_(std::move(config)) {
  problem_.validate();
  config_.validate();
}

const Partition& DiagonalSolver::partition() const {
  if (!partition_) throw std::logic_error("solver not initialized");
  return *partition_;
}

double DiagonalSolver::fetch(const Vertex& v) {
  const std::uint64_t before = counter_.evaluations;
  const double f = db_.get_or_evaluate(v, problem_, counter_);
  if (counter_.evaluations == before) return f;

  trials_.push_back(v);
  if (trials_.size() == 1 || f < state_.f_min) {
    state_.f_min = f;
    state_.x_min = v;
  }
  if (config_.target && !target_trial_) {
    const Point x = from_unit_cube(problem_, v.to_point());
    if (config_.target(x)) target_trial_ = counter_.evaluations;
  }
  return f;
}

bool DiagonalSolver::check_stop() {
  if (target_trial_) {
    stop_ = StopReason::TargetHit;
  } else if (counter_.evaluations >= config_.t_max) {
    stop_ = StopReason::Budget;
  }
  return stop_.has_value();
}

std::uint32_t DiagonalSolver::d_min() const {
  const auto ids = partition().locate(state_.x_min);
  if (ids.empty()) throw std::logic_error("record point not covered by the partition");
  std::uint32_t best = ids.front();
  for (std::uint32_t id : ids) {
    const auto& h = partition_->interval(id);
    const auto& b = partition_->interval(best);
    if (h.group > b.group || (h.group == b.group && id < best)) best = id;
  }
  return best;
}

std::uint32_t DiagonalSolver::p() const { return partition().interval(d_min()).group; }

void DiagonalSolver::initialize() {
  if (partition_) throw std::logic_error("solver already initialized");
  const std::size_t n = problem_.dimension();
  Vertex a{std::vector<TernaryCoord>(n, TernaryCoord::zero())};
  Vertex b{std::vector<TernaryCoord>(n, TernaryCoord::one())};
  const double fa = fetch(a);
  const double fb = fetch(b);
  partition_.emplace(n, fa, fb, config_.max_depth);
  state_.k = 1;
  begin_local_phase();
  check_stop();
}

void DiagonalSolver::begin_local_phase() {
  state_.phase = Phase::Local;
  state_.f_prec = state_.f_min;
  begin_local_pass();
}

void DiagonalSolver::begin_local_pass() {
  state_.phase = Phase::Local;
  state_.l_counter = 1;
  state_.p_prime = p();
  state_.stage = state_.l_counter <= problem_.dimension() ? Stage::LocalNarrow : Stage::LocalWide;
}

void DiagonalSolver::begin_global_phase() {
  state_.f_prec = state_.f_min;
  begin_global_loop();
}

void DiagonalSolver::begin_global_loop() {
  state_.phase = Phase::Global;
  state_.g_counter = 1;
  state_.p_prime = p();
  state_.stage = Stage::GlobalNarrow;
}

std::uint64_t DiagonalSolver::global_loop_length() const {
  const std::size_t n = std::min<std::size_t>(problem_.dimension() + 1, 62);
  return std::uint64_t{1} << n;
}

void DiagonalSolver::iterate(std::uint32_t lo, std::uint32_t hi, IterationRecord& rec) {
  Partition& part = *partition_;
  part.begin_iteration();
  const double xi = config_.xi_mode == XiMode::Relative
                        ? config_.epsilon * std::abs(state_.f_min)
                        : config_.epsilon;
  const HullResult hull = non_dominated(part, lo, hi);
  const HullResult chosen = improvement_filter(hull, state_.f_min, xi);

  rec.range_lo = lo;
  rec.range_hi = hi;
  rec.hull_size = hull.size();
  const VertexValueProvider provider = [this](const Vertex& v) { return fetch(v); };
  for (const HullEntry& e : chosen) {
    part.subdivide(e.point.interval_id, provider);
    ++rec.subdivided;
    if (check_stop()) break;
  }
  ++state_.k;
}

bool DiagonalSolver::step() {
  if (!partition_) initialize();
  if (stop_) return false;

  const std::uint32_t q = partition_->q();
  IterationRecord rec;
  rec.k = state_.k;
  rec.stage = state_.stage;
  rec.q = q;
  rec.Q = partition_->Q();
  rec.p = p();

  switch (state_.stage) {
    case Stage::LocalNarrow:
      state_.p_dprime = local_upper_group(state_.p_prime, q);
      iterate(q, state_.p_dprime, rec);
      break;
    case Stage::LocalWide:
    case Stage::GlobalWide:
      state_.p_prime = std::max(state_.p_prime, q);
      iterate(q, state_.p_prime, rec);
      break;
    case Stage::GlobalNarrow:
      state_.p_prime = std::max(state_.p_prime, q);
      state_.r_prime = global_middle_group(q, state_.p_prime);
      iterate(q, state_.r_prime, rec);
      break;
  }
  rec.p_prime = state_.p_prime;
  rec.p_dprime = state_.p_dprime;
  rec.r_prime = state_.r_prime;

  if (!stop_) {
    const std::size_t n = problem_.dimension();
    switch (state_.stage) {
      case Stage::LocalNarrow:
        ++state_.l_counter;
        if (state_.l_counter > n) state_.stage = Stage::LocalWide;
        break;
      case Stage::LocalWide:
        rec.transition = switch_decision(state_.f_min, state_.f_prec, p(), partition_->q(),
                                         partition_->Q());
        if (rec.transition == Transition::LocalNewRecord) {
          begin_local_phase();
        } else if (rec.transition == Transition::LocalOldRecord) {
          begin_local_pass();
        } else {
          begin_global_phase();
        }
        break;
      case Stage::GlobalNarrow:
        if (sufficient_improvement(state_.f_min, state_.f_prec)) {
          rec.transition = Transition::GlobalToLocal;
          begin_local_phase();
        } else if (++state_.g_counter > global_loop_length()) {
          state_.stage = Stage::GlobalWide;
        }
        break;
      case Stage::GlobalWide:
        if (sufficient_improvement(state_.f_min, state_.f_prec)) {
          rec.transition = Transition::GlobalToLocal;
          begin_local_phase();
        } else {
          rec.transition = Transition::GlobalRestart;
          begin_global_loop();
        }
        break;
    }
  }
  // checked after the switch rule so the last record is complete
  if (!stop_ && config_.iteration_limit != 0 && state_.k > config_.iteration_limit)
    stop_ = StopReason::IterationLimit;
  rec.f_min = state_.f_min;
  rec.f_prec = state_.f_prec;
  if (config_.record_trace) trace_.push_back(rec);
  return !stop_;
}

RunResult DiagonalSolver::run() {
  if (!partition_) initialize();
  while (step()) {
  }
  return result();
}

RunResult DiagonalSolver::result() const {
  RunResult r;
  r.best_value = state_.f_min;
  r.best_point = from_unit_cube(problem_, state_.x_min.to_point());
  r.trials = target_trial_ ? *target_trial_ : counter_.evaluations;
  r.intervals = partition_ ? partition_->size() : 0;
  r.db_hits = counter_.db_hits;
  r.iterations = state_.k - 1;
  r.stop_reason = stop_.value_or(StopReason::Budget);
  r.trace = trace_;
  return r;
}

RunResult run_adc(const ProblemInstance& problem, const SolverConfig& config) {
  DiagonalSolver solver(problem, config);
  return solver.run();
}

}  // namespace adc
