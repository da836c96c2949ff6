#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adc/core.hpp"
#include "adc/solver.hpp"
#include "adc/testbed.hpp"

namespace adc {

/// x' solves the problem when, for some known minimizer x* and every i,
/// |x'(i) - x*(i)| <= delta^(1/N) (b(i) - a(i)).
struct StopRule {
  double delta = 1e-4;
  std::vector<Point> minimizers;
  Point lower;
  Point upper;
  std::uint64_t t_max = 1'000'000;

  void validate() const;
};

StopRule make_stop_rule(const ProblemInstance& problem, double delta, std::uint64_t t_max);
bool target_hit(std::span<const double> x, const StopRule& rule);

/// 1e-4 for N <= 2, 1e-6 for N = 3, 4 and 1e-7 above.
double default_delta(std::size_t dimension);

enum class Algorithm { Adc, Direct, DirectL };
std::string_view to_string(Algorithm a);
/// Accepts adc, direct, directl. Throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view s);

struct BenchConfig {
  Algorithm algorithm = Algorithm::Adc;
  double epsilon = 1e-4;
  std::uint64_t t_max = 1'000'000;
  /// Fixed accuracy coefficient; default_delta(N) when unset.
  std::optional<double> delta;
  unsigned jobs = 1;
};

struct ProblemOutcome {
  std::string problem_id;
  Algorithm algorithm = Algorithm::Adc;
  std::size_t dimension = 0;
  double delta = 0.0;
  /// T_s: trials until the rule was met, or t_max when unsolved.
  std::uint64_t trials = 0;
  /// m_s: hyperintervals generated.
  std::uint64_t intervals = 0;
  bool solved = false;
  /// target, budget, iterations, capacity or error.
  std::string stop_reason;
};

/// One run under the rule. Solver failures are reported in stop_reason.
ProblemOutcome run_problem(const ProblemInstance& problem, const BenchConfig& config);

struct Criteria {
  std::size_t count = 0;
  std::size_t solved = 0;
  /// 1-based index of the hardest problem (first maximum of T_s).
  std::size_t s_star = 0;
  std::uint64_t c1 = 0;  // T_{s*}
  std::uint64_t c2 = 0;  // m_{s*}
  double c3 = 0.0;       // mean T_s
  /// Smallest budget that covers half the problems: the ceil(n/2)-th smallest T_s.
  std::uint64_t half = 0;
};

/// T_s are clamped to t_max before anything is computed. Throws
/// std::invalid_argument if the vectors differ in length or are empty.
Criteria compute_criteria(std::span<const std::uint64_t> trials,
                          std::span<const std::uint64_t> intervals, std::uint64_t t_max);

struct Comparison {
  std::string reference;
  std::size_t p = 0;     // reference needed fewer trials
  std::size_t q = 0;     // this run needed fewer trials
  std::size_t ties = 0;
};

/// Throws std::invalid_argument if the classes differ in size.
Comparison compare_trials(std::span<const std::uint64_t> trials,
                          std::span<const std::uint64_t> reference_trials);

struct ClassReport {
  std::string title;
  Algorithm algorithm = Algorithm::Adc;
  std::uint64_t t_max = 0;
  double epsilon = 0.0;
  std::optional<GklsParams> class_params;
  std::optional<double> shift;
  std::vector<ProblemOutcome> outcomes;
  std::optional<Comparison> comparison;

  std::vector<std::uint64_t> trials() const;
  std::vector<std::uint64_t> intervals() const;
  /// Empty report -> nullopt.
  std::optional<Criteria> criteria() const;
};

/// Runs every problem, config.jobs at a time. Rows keep the input order, so
/// the report does not depend on the number of workers.
ClassReport run_class(const std::vector<ProblemInstance>& problems, const BenchConfig& config,
                      std::string title = {});

/// Attach C4 against a reference run. Problem ids must match row by row.
void attach_comparison(ClassReport& report, const std::vector<ProblemOutcome>& reference,
                       std::string reference_name);

enum class ReportFormat { Csv, Markdown };

std::string emit_report(const ClassReport& report, ReportFormat format);

/// Rows of a CSV written by emit_report; summary comment lines are skipped.
std::vector<ProblemOutcome> parse_report_csv(std::string_view text);

struct Snapshot {
  std::string csv;
  /// False when the box and point rows were skipped (N > 2).
  bool boxes_emitted = true;
};

/// Boxes, trial points and (d, F) diagram rows of a solver's current state.
Snapshot emit_partition_snapshot(const DiagonalSolver& solver);

}  // namespace adc
