#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "adc/core.hpp"
#include "adc/geometry.hpp"
#include "adc/selection.hpp"
#include "adc/vertex_db.hpp"

namespace adc {

enum class XiMode { Relative, Absolute };

/// Predicate on a trial point in problem coordinates; true stops the run.
using TargetPredicate = std::function<bool(std::span<const double>)>;

struct SolverConfig {
  double epsilon = 1e-4;
  /// Relative: xi = epsilon * |f_min|, recomputed every iteration. Absolute: xi = epsilon.
  XiMode xi_mode = XiMode::Relative;
  std::uint64_t t_max = 1'000'000;
  int max_depth = TernaryCoord::kMaxDepth;
  TargetPredicate target;
  /// Stop after this many iterations; 0 means no limit.
  std::uint64_t iteration_limit = 0;
  bool record_trace = false;

  void validate() const;
};

enum class StopReason { Budget, TargetHit, IterationLimit };
std::string_view to_string(StopReason r);

enum class Phase { Local, Global };

/// Which scheme step an iteration executes.
enum class Stage {
  LocalNarrow,   // groups q..p''
  LocalWide,     // groups q..p', followed by the switch
  GlobalNarrow,  // groups q..r'
  GlobalWide,    // groups q..p'
};
std::string_view to_string(Stage s);

/// What the solver decided after an iteration.
enum class Transition {
  Continue,             // stay in the current loop
  LocalNewRecord,       // end of local pass, record improved enough: restart local phase
  LocalOldRecord,       // end of local pass, D_min not smallest (or one group): repeat with old record
  EnterGlobal,          // end of local pass, neither: start the global phase
  GlobalToLocal,        // record improved enough during the global phase
  GlobalRestart,        // global loop finished without enough improvement
};
std::string_view to_string(Transition t);

struct IterationRecord {
  std::uint64_t k = 0;
  Stage stage = Stage::LocalNarrow;
  std::uint32_t range_lo = 0;
  std::uint32_t range_hi = 0;
  std::uint32_t q = 0;
  std::uint32_t Q = 0;
  std::uint32_t p = 0;
  std::uint32_t p_prime = 0;
  std::uint32_t p_dprime = 0;
  std::uint32_t r_prime = 0;
  std::size_t hull_size = 0;
  std::size_t subdivided = 0;
  double f_min = 0.0;
  double f_prec = 0.0;
  Transition transition = Transition::Continue;
};

struct RunResult {
  double best_value = 0.0;
  Point best_point;
  /// Trials spent; on a target hit, the index of the trial that hit.
  std::uint64_t trials = 0;
  std::uint64_t intervals = 0;
  std::uint64_t db_hits = 0;
  std::uint64_t iterations = 0;
  StopReason stop_reason = StopReason::Budget;
  std::vector<IterationRecord> trace;
};

struct SolverState {
  std::uint64_t k = 1;
  double f_min = 0.0;
  Vertex x_min;
  double f_prec = 0.0;
  Phase phase = Phase::Local;
  Stage stage = Stage::LocalNarrow;
  std::uint64_t l_counter = 1;
  std::uint64_t g_counter = 1;
  std::uint32_t p_prime = 0;
  std::uint32_t p_dprime = 0;
  std::uint32_t r_prime = 0;
};

/// f_min <= f_prec - 0.01 |f_prec| together with f_min < f_prec; the strict
/// part keeps a zero record from counting as an improvement.
bool sufficient_improvement(double f_min, double f_prec);

/// max(p' - 1, q)
std::uint32_t local_upper_group(std::uint32_t p_prime, std::uint32_t q);

/// ceil((q + p') / 2)
std::uint32_t global_middle_group(std::uint32_t q, std::uint32_t p_prime);

/// Decision at the end of a local pass.
Transition switch_decision(double f_min, double f_prec, std::uint32_t p, std::uint32_t q,
                           std::uint32_t Q);

/// Two-phase diagonal solver over the unit cube image of a problem.
///
/// Sequential by nature; one instance per run. Trials flow through a vertex
/// database, so no point is evaluated twice.
class DiagonalSolver {
 public:
  DiagonalSolver(ProblemInstance problem, SolverConfig config);

  /// Evaluates the two main-diagonal corners and enters the local phase.
  void initialize();
  /// Executes one iteration (one scheme sub-step). Returns false once stopped.
  bool step();
  RunResult run();

  bool initialized() const noexcept { return partition_.has_value(); }
  bool stopped() const noexcept { return stop_.has_value(); }
  std::optional<StopReason> stop_reason() const noexcept { return stop_; }

  const SolverState& state() const noexcept { return state_; }
  const Partition& partition() const;
  const VertexDatabase& database() const noexcept { return db_; }
  const EvaluationCounter& counter() const noexcept { return counter_; }
  const ProblemInstance& problem() const noexcept { return problem_; }
  const std::vector<IterationRecord>& trace() const noexcept { return trace_; }
  /// Evaluated trial vertices in evaluation order.
  const std::vector<Vertex>& trials() const noexcept { return trials_; }

  /// D_min: the smallest live box whose closure contains x_min (oldest id on ties).
  std::uint32_t d_min() const;
  /// Group index of D_min.
  std::uint32_t p() const;

  RunResult result() const;

 private:
  double fetch(const Vertex& v);
  void iterate(std::uint32_t lo, std::uint32_t hi, IterationRecord& rec);
  bool check_stop();
  void begin_local_phase();
  void begin_local_pass();
  void begin_global_phase();
  void begin_global_loop();
  std::uint64_t global_loop_length() const;

  ProblemInstance problem_;
  SolverConfig config_;
  VertexDatabase db_;
  EvaluationCounter counter_;
  std::optional<Partition> partition_;
  SolverState state_;
  std::vector<IterationRecord> trace_;
  std::vector<Vertex> trials_;
  std::optional<std::uint64_t> target_trial_;
  std::optional<StopReason> stop_;
};

RunResult run_adc(const ProblemInstance& problem, const SolverConfig& config);

}  // namespace adc
