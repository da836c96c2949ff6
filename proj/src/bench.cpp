#include "adc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "adc/direct.hpp"

namespace adc {

namespace {

constexpr std::string_view kCsvHeader = "problem_id,algorithm,trials,intervals,solved,stop_reason";
constexpr std::string_view kSnapshotHeader = "kind,id,group,lo1,hi1,lo2,hi2,x1,x2,f,d,F,on_hull";

std::string num(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string budget_cell(std::uint64_t value, std::uint64_t t_max, std::size_t unsolved,
                        bool reaches_unsolved) {
  if (reaches_unsolved && unsolved > 0)
    return "> " + std::to_string(t_max) + " (" + std::to_string(unsolved) + ")";
  return std::to_string(value);
}

}  // namespace

void StopRule::validate() const {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  if (lower.size() != upper.size() || lower.empty())
    throw std::invalid_argument("stop rule box is inconsistent");
  for (const auto& x : minimizers) {
    if (x.size() != lower.size()) throw std::invalid_argument("minimizer has wrong dimension");
  }
}

StopRule make_stop_rule(const ProblemInstance& problem, double delta, std::uint64_t t_max) {
  if (problem.known_minimizers.empty())
    throw std::invalid_argument(problem.name + ": no known minimizer for the stopping rule");
  StopRule rule{delta, problem.known_minimizers, problem.lower, problem.upper, t_max};
  rule.validate();
  return rule;
}

bool target_hit(std::span<const double> x, const StopRule& rule) {
  const std::size_t n = rule.lower.size();
  if (x.size() != n) throw std::invalid_argument("trial point has wrong dimension");
  const double scale = std::pow(rule.delta, 1.0 / static_cast<double>(n));
  for (const auto& xs : rule.minimizers) {
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i)
      inside = std::abs(x[i] - xs[i]) <= scale * (rule.upper[i] - rule.lower[i]);
    if (inside) return true;
  }
  return false;
}

double default_delta(std::size_t dimension) {
  if (dimension <= 2) return 1e-4;
  if (dimension <= 4) return 1e-6;
  return 1e-7;
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Adc: return "adc";
    case Algorithm::Direct: return "direct";
    case Algorithm::DirectL: return "directl";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view s) {
  if (s == "adc") return Algorithm::Adc;
  if (s == "direct") return Algorithm::Direct;
  if (s == "directl") return Algorithm::DirectL;
  throw std::invalid_argument("unknown algorithm: " + std::string(s));
}

ProblemOutcome run_problem(const ProblemInstance& problem, const BenchConfig& config) {
  ProblemOutcome out;
  out.problem_id = problem.name;
  out.algorithm = config.algorithm;
  out.dimension = problem.dimension();
  out.delta = config.delta.value_or(default_delta(problem.dimension()));

  const StopRule rule = make_stop_rule(problem, out.delta, config.t_max);
  const TargetPredicate target = [rule](std::span<const double> x) { return target_hit(x, rule); };

  RunResult r;
  std::optional<std::string> failure;
  auto drive = [&](auto& solver) {
    try {
      solver.run();
    } catch (const CapacityError&) {
      failure = "capacity";
    } catch (const EvaluationError&) {
      failure = "error";
    }
    r = solver.result();
  };
  if (config.algorithm == Algorithm::Adc) {
    SolverConfig sc;
    sc.epsilon = config.epsilon;
    sc.t_max = config.t_max;
    sc.target = target;
    DiagonalSolver solver(problem, sc);
    drive(solver);
  } else {
    DirectConfig dc;
    dc.epsilon = config.epsilon;
    dc.t_max = config.t_max;
    dc.target = target;
    dc.variant = config.algorithm == Algorithm::Direct ? DirectVariant::Classic
                                                       : DirectVariant::LocallyBiased;
    DirectSolver solver(problem, dc);
    drive(solver);
  }

  out.intervals = r.intervals;
  out.solved = !failure && r.stop_reason == StopReason::TargetHit && r.trials <= config.t_max;
  out.trials = out.solved ? r.trials : config.t_max;
  if (failure) {
    out.stop_reason = *failure;
  } else if (r.stop_reason == StopReason::TargetHit && !out.solved) {
    out.stop_reason = "budget";
  } else {
    out.stop_reason = std::string(to_string(r.stop_reason));
  }
  return out;
}

Criteria compute_criteria(std::span<const std::uint64_t> trials,
                          std::span<const std::uint64_t> intervals, std::uint64_t t_max) {
  if (trials.empty()) throw std::invalid_argument("criteria need at least one problem");
  if (trials.size() != intervals.size())
    throw std::invalid_argument("trial and interval counts differ in length");
  std::vector<std::uint64_t> t(trials.begin(), trials.end());
  for (auto& v : t) v = std::min(v, t_max);

  Criteria c;
  c.count = t.size();
  c.solved = static_cast<std::size_t>(
      std::count_if(t.begin(), t.end(), [t_max](std::uint64_t v) { return v < t_max; }));
  const auto it = std::max_element(t.begin(), t.end());
  c.s_star = static_cast<std::size_t>(it - t.begin()) + 1;
  c.c1 = *it;
  c.c2 = intervals[c.s_star - 1];
  c.c3 = static_cast<double>(std::accumulate(t.begin(), t.end(), std::uint64_t{0})) /
         static_cast<double>(t.size());
  std::vector<std::uint64_t> sorted = t;
  std::sort(sorted.begin(), sorted.end());
  c.half = sorted[(sorted.size() + 1) / 2 - 1];
  return c;
}

Comparison compare_trials(std::span<const std::uint64_t> trials,
                          std::span<const std::uint64_t> reference_trials) {
  if (trials.size() != reference_trials.size())
    throw std::invalid_argument("compared classes differ in size (" +
                                std::to_string(trials.size()) + " vs " +
                                std::to_string(reference_trials.size()) + ")");
  Comparison c;
  for (std::size_t s = 0; s < trials.size(); ++s) {
    if (reference_trials[s] < trials[s]) {
      ++c.p;
    } else if (trials[s] < reference_trials[s]) {
      ++c.q;
    } else {
      ++c.ties;
    }
  }
  return c;
}

std::vector<std::uint64_t> ClassReport::trials() const {
  std::vector<std::uint64_t> t;
  for (const auto& o : outcomes) t.push_back(o.trials);
  return t;
}

std::vector<std::uint64_t> ClassReport::intervals() const {
  std::vector<std::uint64_t> m;
  for (const auto& o : outcomes) m.push_back(o.intervals);
  return m;
}

std::optional<Criteria> ClassReport::criteria() const {
  if (outcomes.empty()) return std::nullopt;
  const auto t = trials();
  const auto m = intervals();
  Criteria c = compute_criteria(t, m, t_max);
  // A problem solved exactly at t_max still counts as solved.
  c.solved = static_cast<std::size_t>(
      std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.solved; }));
  return c;
}

ClassReport run_class(const std::vector<ProblemInstance>& problems, const BenchConfig& config,
                      std::string title) {
  ClassReport report;
  report.title = std::move(title);
  report.algorithm = config.algorithm;
  report.t_max = config.t_max;
  report.epsilon = config.epsilon;
  report.outcomes.resize(problems.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < problems.size();) {
      try {
        report.outcomes[i] = run_problem(problems[i], config);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t jobs =
      std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(problems.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return report;
}

void attach_comparison(ClassReport& report, const std::vector<ProblemOutcome>& reference,
                       std::string reference_name) {
  if (reference.size() != report.outcomes.size())
    throw std::invalid_argument("reference run has " + std::to_string(reference.size()) +
                                " problems, this run has " +
                                std::to_string(report.outcomes.size()));
  std::vector<std::uint64_t> ref;
  for (std::size_t s = 0; s < reference.size(); ++s) {
    if (reference[s].problem_id != report.outcomes[s].problem_id)
      throw std::invalid_argument("reference row " + std::to_string(s + 1) + " is " +
                                  reference[s].problem_id + ", expected " +
                                  report.outcomes[s].problem_id);
    ref.push_back(std::min(reference[s].trials, report.t_max));
  }
  std::vector<std::uint64_t> mine = report.trials();
  for (auto& v : mine) v = std::min(v, report.t_max);
  Comparison c = compare_trials(mine, ref);
  c.reference = std::move(reference_name);
  report.comparison = c;
}

std::string emit_report(const ClassReport& report, ReportFormat format) {
  std::ostringstream os;
  const auto crit = report.criteria();
  const std::size_t unsolved = crit ? crit->count - crit->solved : 0;

  if (format == ReportFormat::Csv) {
    os << kCsvHeader << '\n';
    for (const auto& o : report.outcomes) {
      os << o.problem_id << ',' << to_string(o.algorithm) << ',' << o.trials << ','
         << o.intervals << ',' << (o.solved ? 1 : 0) << ',' << o.stop_reason << '\n';
    }
    if (!crit) return os.str();
    if (!report.title.empty()) os << "# title," << report.title << '\n';
    os << "# t_max," << report.t_max << '\n';
    os << "# solved," << crit->solved << ',' << crit->count << '\n';
    os << "# C1," << crit->c1 << ",s*," << crit->s_star << '\n';
    os << "# C2," << crit->c2 << '\n';
    os << "# C3," << num(crit->c3, "%.2f") << '\n';
    os << "# 50%," << crit->half << '\n';
    if (report.comparison) {
      const auto& c = *report.comparison;
      os << "# C4," << c.reference << ",p," << c.p << ",q," << c.q << ",ties," << c.ties << '\n';
    }
    if (unsolved > 0) os << "# note,unsolved problems count as t_max so C1 and C3 are lower estimates\n";
    return os.str();
  }

  const std::string alg(to_string(report.algorithm));
  if (!report.title.empty()) os << "### " << report.title << "\n\n";
  if (report.class_params) {
    const auto& prm = *report.class_params;
    const double delta = report.outcomes.empty() ? default_delta(prm.N) : report.outcomes[0].delta;
    os << "| N | Δ | r* | ρ* | 50% " << alg << " | 100% " << alg << " |\n";
    os << "|---|---|---|---|---:|---:|\n";
    os << "| " << prm.N << " | " << num(delta, "%.0e") << " | " << num(prm.r_star, "%g") << " | "
       << num(prm.rho_star, "%g") << " | ";
    if (crit) {
      os << budget_cell(crit->half, report.t_max, unsolved,
                        crit->half >= report.t_max && unsolved > 0)
         << " | " << budget_cell(crit->c1, report.t_max, unsolved, unsolved > 0) << " |\n";
    } else {
      os << "- | - |\n";
    }
  } else {
    os << "| Function | N | Δ | " << alg << " trials | intervals | solved |\n";
    os << "|---|---|---|---:|---:|---|\n";
    for (const auto& o : report.outcomes) {
      os << "| " << o.problem_id << " | " << o.dimension << " | " << num(o.delta, "%.0e") << " | "
         << (o.solved ? std::to_string(o.trials) : "> " + std::to_string(report.t_max)) << " | "
         << o.intervals << " | " << (o.solved ? "yes" : "no") << " |\n";
    }
  }
  if (crit) {
    os << "\n- solved: " << crit->solved << " / " << crit->count << '\n';
    os << "- C1 (max trials): " << crit->c1 << " at s* = " << crit->s_star << '\n';
    os << "- C2 (intervals at s*): " << crit->c2 << '\n';
    os << "- C3 (mean trials): " << num(crit->c3, "%.2f") << '\n';
    if (report.comparison) {
      const auto& c = *report.comparison;
      os << "- C4 vs " << c.reference << ": p = " << c.p << ", q = " << c.q
         << ", ties = " << c.ties << '\n';
    }
  }
  return os.str();
}

std::vector<ProblemOutcome> parse_report_csv(std::string_view text) {
  std::vector<ProblemOutcome> rows;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader)
        throw std::invalid_argument("unexpected report header: " + std::string(line));
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6)
      throw std::invalid_argument("report line " + std::to_string(line_no) + " has " +
                                  std::to_string(f.size()) + " fields");
    ProblemOutcome o;
    o.problem_id = std::string(f[0]);
    o.algorithm = parse_algorithm(f[1]);
    try {
      o.trials = std::stoull(std::string(f[2]));
      o.intervals = std::stoull(std::string(f[3]));
    } catch (const std::exception&) {
      throw std::invalid_argument("report line " + std::to_string(line_no) + ": bad number");
    }
    if (f[4] != "0" && f[4] != "1")
      throw std::invalid_argument("report line " + std::to_string(line_no) + ": bad solved flag");
    o.solved = f[4] == "1";
    o.stop_reason = std::string(f[5]);
    rows.push_back(std::move(o));
  }
  if (!header_seen) throw std::invalid_argument("report has no header");
  return rows;
}

Snapshot emit_partition_snapshot(const DiagonalSolver& solver) {
  const Partition& part = solver.partition();
  const ProblemInstance& problem = solver.problem();
  const std::size_t n = part.dimension();
  Snapshot snap;
  snap.boxes_emitted = n <= 2;

  std::ostringstream os;
  os << kSnapshotHeader << '\n';
  auto to_problem = [&](std::size_t j, double u) {
    return u == 1.0 ? problem.upper[j] : problem.lower[j] + u * (problem.upper[j] - problem.lower[j]);
  };

  if (snap.boxes_emitted) {
    for (const Hyperinterval& h : part.intervals()) {
      const DiagramPoint dp = diagram_point(h);
      os << "box," << h.id << ',' << h.group;
      for (std::size_t j = 0; j < 2; ++j) {
        if (j < n) {
          os << ',' << num(to_problem(j, h.lower(j).value())) << ','
             << num(to_problem(j, h.upper(j).value()));
        } else {
          os << ",,";
        }
      }
      os << ",,,," << num(dp.d) << ',' << num(dp.F) << ",\n";
    }
    std::size_t index = 0;
    for (const Vertex& v : solver.trials()) {
      const Point x = from_unit_cube(problem, v.to_point());
      os << "point," << ++index << ",,,,,";
      os << ',' << num(x[0]) << ',' << (n > 1 ? num(x[1]) : std::string());
      os << ',' << num(*solver.database().find(v)) << ",,,\n";
    }
  }

  std::unordered_set<std::uint32_t> hull_ids;
  for (const auto& e : non_dominated(part, part.q(), part.Q())) hull_ids.insert(e.point.interval_id);
  for (const Hyperinterval& h : part.intervals()) {
    const DiagramPoint dp = diagram_point(h);
    os << "diagram," << h.id << ',' << h.group << ",,,,,,,," << num(dp.d) << ',' << num(dp.F) << ','
       << (hull_ids.contains(h.id) ? 1 : 0) << '\n';
  }
  snap.csv = os.str();
  return snap;
}

}  // namespace adc
