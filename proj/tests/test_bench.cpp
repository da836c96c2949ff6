#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "adc/bench.hpp"
#include "adc/testbed.hpp"

using namespace adc;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

std::size_t count_kind(const std::string& csv, const std::string& kind) {
  std::size_t n = 0;
  for (const auto& l : lines(csv)) n += l.rfind(kind + ",", 0) == 0;
  return n;
}

ProblemOutcome row(std::string id, std::uint64_t t, std::uint64_t m, bool solved) {
  ProblemOutcome o;
  o.problem_id = std::move(id);
  o.dimension = 2;
  o.delta = 1e-4;
  o.trials = t;
  o.intervals = m;
  o.solved = solved;
  o.stop_reason = solved ? "target" : "budget";
  return o;
}

}  // namespace

TEST(StopRule, UnitDomainThreshold) {
  auto p = make_problem("q", [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; },
                        {0, 0}, {1, 1}, {{0.5, 0.5}}, 0.0);
  const auto rule = make_stop_rule(p, 1e-4, 1000);
  EXPECT_TRUE(target_hit(Point{0.5 + 0.0099, 0.5 - 0.0099}, rule));
  EXPECT_FALSE(target_hit(Point{0.5 + 0.0101, 0.5}, rule));
  EXPECT_FALSE(target_hit(Point{0.5, 0.5 - 0.0101}, rule));
  EXPECT_THROW(target_hit(Point{0.5}, rule), std::invalid_argument);
}

TEST(StopRule, ScalesWithSideAndAnyMinimizer) {
  const auto p = classic("branin");
  const auto rule = make_stop_rule(p, 1e-4, 1000);
  // side 15 in x1, 15 in x2: threshold 0.15
  EXPECT_TRUE(target_hit(Point{M_PI + 0.149, 2.275 - 0.149}, rule));
  EXPECT_FALSE(target_hit(Point{M_PI + 0.151, 2.275}, rule));
  EXPECT_TRUE(target_hit(Point{-M_PI, 12.275}, rule));
  EXPECT_TRUE(target_hit(Point{9.42477796, 2.475}, rule));
  auto none = make_problem("none", [](std::span<const double>) { return 0.0; }, {0}, {1});
  EXPECT_THROW(make_stop_rule(none, 1e-4, 10), std::invalid_argument);
  EXPECT_THROW(make_stop_rule(p, 0.0, 10), std::invalid_argument);
}

TEST(StopRule, DefaultDelta) {
  EXPECT_EQ(default_delta(1), 1e-4);
  EXPECT_EQ(default_delta(2), 1e-4);
  EXPECT_EQ(default_delta(3), 1e-6);
  EXPECT_EQ(default_delta(4), 1e-6);
  EXPECT_EQ(default_delta(5), 1e-7);
}

TEST(Algorithms, ParseRoundTrip) {
  for (auto a : {Algorithm::Adc, Algorithm::Direct, Algorithm::DirectL})
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_THROW(parse_algorithm("lbfgs"), std::invalid_argument);
}

TEST(Criteria, WorkedExample) {
  const std::vector<std::uint64_t> t{10, 20, 30}, m{1, 2, 3};
  const auto c = compute_criteria(t, m, 100);
  EXPECT_EQ(c.c1, 30u);
  EXPECT_EQ(c.s_star, 3u);
  EXPECT_EQ(c.c2, 3u);
  EXPECT_DOUBLE_EQ(c.c3, 20.0);
  EXPECT_EQ(c.half, 20u);
  EXPECT_EQ(c.solved, 3u);
  EXPECT_EQ(c.count, 3u);
}

TEST(Criteria, ClampingHalfAndTies) {
  const std::vector<std::uint64_t> t{5, 200}, m{7, 9};
  const auto c = compute_criteria(t, m, 100);
  EXPECT_EQ(c.c1, 100u);
  EXPECT_DOUBLE_EQ(c.c3, 52.5);
  EXPECT_EQ(c.solved, 1u);
  EXPECT_EQ(c.c2, 9u);

  const std::vector<std::uint64_t> t4{4, 1, 3, 2}, m4{0, 0, 0, 0};
  EXPECT_EQ(compute_criteria(t4, m4, 10).half, 2u);
  const std::vector<std::uint64_t> tie{7, 3, 7}, mt{1, 2, 3};
  EXPECT_EQ(compute_criteria(tie, mt, 10).s_star, 1u);
  EXPECT_EQ(compute_criteria(tie, mt, 10).c2, 1u);

  EXPECT_THROW(compute_criteria(std::vector<std::uint64_t>{}, std::vector<std::uint64_t>{}, 10),
               std::invalid_argument);
  EXPECT_THROW(compute_criteria(t, m4, 10), std::invalid_argument);
}

TEST(Comparison, CountsBothWays) {
  const std::vector<std::uint64_t> mine{5, 25, 30}, ref{10, 20, 30};
  const auto c = compare_trials(mine, ref);
  EXPECT_EQ(c.p, 1u);
  EXPECT_EQ(c.q, 1u);
  EXPECT_EQ(c.ties, 1u);
  EXPECT_THROW(compare_trials(mine, std::vector<std::uint64_t>{1, 2}), std::invalid_argument);
}

TEST(Report, EmptyCsvIsHeaderOnly) {
  ClassReport r;
  r.t_max = 10;
  EXPECT_EQ(emit_report(r, ReportFormat::Csv), "problem_id,algorithm,trials,intervals,solved,stop_reason\n");
  EXPECT_FALSE(r.criteria().has_value());
  EXPECT_TRUE(parse_report_csv(emit_report(r, ReportFormat::Csv)).empty());
}

TEST(Report, CsvRowsSummaryAndRoundTrip) {
  ClassReport r;
  r.title = "demo";
  r.t_max = 100;
  r.outcomes = {row("f1", 10, 21, true), row("f2", 20, 41, true), row("f3", 100, 301, false)};
  const std::string csv = emit_report(r, ReportFormat::Csv);
  const auto ls = lines(csv);
  ASSERT_GE(ls.size(), 4u);
  EXPECT_EQ(ls[1], "f1,adc,10,21,1,target");
  EXPECT_EQ(ls[3], "f3,adc,100,301,0,budget");
  EXPECT_NE(csv.find("# solved,2,3\n"), std::string::npos);
  EXPECT_NE(csv.find("# C1,100,s*,3\n"), std::string::npos);
  EXPECT_NE(csv.find("# C2,301\n"), std::string::npos);
  EXPECT_NE(csv.find("# C3,43.33\n"), std::string::npos);
  EXPECT_NE(csv.find("# 50%,20\n"), std::string::npos);
  EXPECT_NE(csv.find("# note,"), std::string::npos);

  const auto back = parse_report_csv(csv);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back[i].problem_id, r.outcomes[i].problem_id);
    EXPECT_EQ(back[i].trials, r.outcomes[i].trials);
    EXPECT_EQ(back[i].intervals, r.outcomes[i].intervals);
    EXPECT_EQ(back[i].solved, r.outcomes[i].solved);
    EXPECT_EQ(back[i].stop_reason, r.outcomes[i].stop_reason);
  }
  EXPECT_THROW(parse_report_csv("id,trials\n"), std::invalid_argument);
  EXPECT_THROW(parse_report_csv("problem_id,algorithm,trials,intervals,solved,stop_reason\nf1,adc,x,1,1,target\n"),
               std::invalid_argument);
}

TEST(Report, ComparisonAttachesAndChecksIds) {
  ClassReport r;
  r.t_max = 100;
  r.outcomes = {row("f1", 5, 1, true), row("f2", 25, 1, true), row("f3", 30, 1, true)};
  const std::vector<ProblemOutcome> ref{row("f1", 10, 1, true), row("f2", 20, 1, true), row("f3", 30, 1, true)};
  attach_comparison(r, ref, "direct");
  ASSERT_TRUE(r.comparison.has_value());
  EXPECT_EQ(r.comparison->p, 1u);
  EXPECT_EQ(r.comparison->q, 1u);
  EXPECT_EQ(r.comparison->ties, 1u);
  EXPECT_NE(emit_report(r, ReportFormat::Csv).find("# C4,direct,p,1,q,1,ties,1\n"), std::string::npos);
  EXPECT_NE(emit_report(r, ReportFormat::Markdown).find("C4 vs direct: p = 1, q = 1, ties = 1"),
            std::string::npos);

  auto swapped = ref;
  std::swap(swapped[0], swapped[1]);
  EXPECT_THROW(attach_comparison(r, swapped, "direct"), std::invalid_argument);
  EXPECT_THROW(attach_comparison(r, {ref[0]}, "direct"), std::invalid_argument);
}

TEST(Report, MarkdownClassTable) {
  ClassReport r;
  r.t_max = 100;
  r.class_params = GklsParams{2, 10, -1.0, 0.2, 0.9, 1, 3};
  r.outcomes = {row("f1", 10, 21, true), row("f2", 100, 41, false), row("f3", 30, 301, true)};
  const std::string md = emit_report(r, ReportFormat::Markdown);
  EXPECT_NE(md.find("| N | Δ | r* | ρ* | 50% adc | 100% adc |"), std::string::npos);
  EXPECT_NE(md.find("| 2 | 1e-04 | 0.9 | 0.2 | 30 | > 100 (1) |"), std::string::npos) << md;
  EXPECT_NE(md.find("- solved: 2 / 3"), std::string::npos);
}

TEST(Report, MarkdownFunctionTable) {
  ClassReport r;
  r.t_max = 100;
  r.algorithm = Algorithm::Direct;
  r.outcomes = {row("branin", 41, 61, true), row("shubert", 100, 2001, false)};
  r.outcomes[0].algorithm = r.outcomes[1].algorithm = Algorithm::Direct;
  const std::string md = emit_report(r, ReportFormat::Markdown);
  EXPECT_NE(md.find("| Function | N | Δ | direct trials | intervals | solved |"), std::string::npos);
  EXPECT_NE(md.find("| branin | 2 | 1e-04 | 41 | 61 | yes |"), std::string::npos) << md;
  EXPECT_NE(md.find("| shubert | 2 | 1e-04 | > 100 | 2001 | no |"), std::string::npos) << md;
}

TEST(RunProblem, OutcomesAndFailures) {
  BenchConfig c;
  c.t_max = 100000;
  const auto ok = run_problem(classic("branin"), c);
  EXPECT_TRUE(ok.solved);
  EXPECT_EQ(ok.stop_reason, "target");
  EXPECT_EQ(ok.delta, 1e-4);
  EXPECT_LE(ok.trials, 3u * 76u);

  c.t_max = 10;
  const auto budget = run_problem(classic("hartman6"), c);
  EXPECT_FALSE(budget.solved);
  EXPECT_EQ(budget.trials, 10u);
  EXPECT_EQ(budget.stop_reason, "budget");
  EXPECT_EQ(budget.delta, 1e-7);

  auto broken = make_problem(
      "nan", [](std::span<const double> x) { return x[0] > 0.7 ? NAN : x[0]; }, {0, 0}, {1, 1},
      {{0.05, 0.05}});
  c.t_max = 1000;
  for (auto a : {Algorithm::Adc, Algorithm::Direct}) {
    c.algorithm = a;
    const auto bad = run_problem(broken, c);
    EXPECT_FALSE(bad.solved);
    EXPECT_EQ(bad.stop_reason, "error");
    EXPECT_EQ(bad.trials, 1000u);
  }
}

TEST(RunClass, SameRowsForAnyJobCount) {
  const auto probs = generate_class({2, 10, -1.0, 0.2, 0.9, 1, 12}).problems();
  BenchConfig c;
  c.t_max = 20000;
  const auto one = run_class(probs, c, "serial");
  c.jobs = 3;
  const auto three = run_class(probs, c, "parallel");
  ASSERT_EQ(one.outcomes.size(), 12u);
  for (std::size_t s = 0; s < 12; ++s) {
    EXPECT_EQ(one.outcomes[s].problem_id, "f" + std::to_string(s + 1));
    EXPECT_EQ(one.outcomes[s].problem_id, three.outcomes[s].problem_id);
    EXPECT_EQ(one.outcomes[s].trials, three.outcomes[s].trials);
    EXPECT_EQ(one.outcomes[s].intervals, three.outcomes[s].intervals);
  }
}

TEST(Snapshot, AfterOneSubdivision) {
  DiagonalSolver s(classic("branin"), {});
  s.initialize();
  auto snap = emit_partition_snapshot(s);
  EXPECT_TRUE(snap.boxes_emitted);
  EXPECT_EQ(count_kind(snap.csv, "box"), 1u);
  EXPECT_EQ(count_kind(snap.csv, "point"), 2u);

  s.step();
  snap = emit_partition_snapshot(s);
  const auto ls = lines(snap.csv);
  EXPECT_EQ(ls[0], "kind,id,group,lo1,hi1,lo2,hi2,x1,x2,f,d,F,on_hull");
  EXPECT_EQ(count_kind(snap.csv, "box"), 3u);
  EXPECT_EQ(count_kind(snap.csv, "point"), 4u);
  EXPECT_EQ(count_kind(snap.csv, "diagram"), 3u);
  std::size_t on_hull = 0;
  for (const auto& l : ls) {
    const auto f = fields(l);
    EXPECT_EQ(f.size(), 13u) << l;
    if (f[0] == "diagram") on_hull += f[12] == "1";
    if (f[0] == "box") {
      EXPECT_GE(std::stod(f[3]), -5.0);
      EXPECT_LE(std::stod(f[4]), 10.0);
      EXPECT_LE(std::stod(f[5]), std::stod(f[6]));
    }
  }
  // three boxes of one group: a single representative
  EXPECT_EQ(on_hull, 1u);
}

TEST(Snapshot, LaterIterationsAndHigherDimension) {
  SolverConfig c;
  c.iteration_limit = 11;
  DiagonalSolver s(classic("shubert"), c);
  s.run();
  const auto snap = emit_partition_snapshot(s);
  EXPECT_GE(count_kind(snap.csv, "box"), 21u);
  EXPECT_EQ(count_kind(snap.csv, "point"), s.counter().evaluations);
  EXPECT_EQ(count_kind(snap.csv, "diagram"), s.partition().size());

  DiagonalSolver h(classic("hartman3"), c);
  h.run();
  const auto hs = emit_partition_snapshot(h);
  EXPECT_FALSE(hs.boxes_emitted);
  EXPECT_EQ(count_kind(hs.csv, "box"), 0u);
  EXPECT_EQ(count_kind(hs.csv, "diagram"), h.partition().size());
}
