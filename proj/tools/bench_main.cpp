#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "adc/bench.hpp"
#include "adc/testbed.hpp"

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

adc::GklsParams parse_class(const std::string& spec) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--class: expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  auto take = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw UsageError(std::string("--class: missing ") + key);
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  adc::GklsParams p;
  try {
    p.N = std::stoul(take("N"));
    p.M = std::stoul(take("M"));
    p.f_star = std::stod(take("fstar"));
    p.rho_star = std::stod(take("rho"));
    p.r_star = std::stod(take("r"));
    p.seed = std::stoull(take("seed"));
    if (kv.contains("count")) p.count = std::stoul(take("count"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("--class: malformed number in '" + spec + "'");
  }
  if (!kv.empty()) throw UsageError("--class: unknown key '" + kv.begin()->first + "'");
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for the diagonal solver and the DIRECT baselines"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Run one algorithm on a problem set");
  CLI::App* list = app.add_subcommand("list", "List the classic test functions");

  std::string algorithm = "adc";
  std::string problem;
  std::string class_spec;
  std::optional<double> shift_by;
  double epsilon = 1e-4;
  std::uint64_t t_max = 1'000'000;
  std::optional<double> delta;
  std::string format = "csv";
  std::string snapshot_path;
  std::string compare_path;
  unsigned jobs = 1;
  std::string preset;

  run->add_option("--algorithm", algorithm, "adc, direct or directl")
      ->check(CLI::IsMember({"adc", "direct", "directl"}));
  auto* problem_opt = run->add_option("--problem", problem, "classic function name or 'all'");
  auto* class_opt = run->add_option("--class", class_spec,
                                    "generated class: N=..,M=..,fstar=..,rho=..,r=..,seed=..[,count=..]");
  problem_opt->excludes(class_opt);
  run->add_option("--shift", shift_by, "constant added to every objective value");
  run->add_option("--epsilon", epsilon, "improvement threshold coefficient")->check(CLI::NonNegativeNumber);
  auto* tmax_opt = run->add_option("--tmax", t_max, "trial budget per problem")->check(CLI::PositiveNumber);
  run->add_option("--delta", delta, "accuracy coefficient in (0, 1]; default by dimension")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--format", format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  run->add_option("--snapshot", snapshot_path, "write a partition snapshot CSV (adc, one problem)");
  run->add_option("--compare", compare_path, "reference CSV for criterion C4");
  run->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
  run->add_option("--preset", preset, "desk: t_max 100000 unless --tmax is given")
      ->check(CLI::IsMember({"desk"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list->parsed()) {
    for (const auto& name : adc::classic_names()) {
      const auto p = adc::classic(name);
      std::cout << name << ' ' << p.dimension() << '\n';
    }
    return 0;
  }

  try {
    if (problem.empty() == class_spec.empty())
      throw UsageError("give exactly one of --problem and --class");
    if (preset == "desk" && tmax_opt->count() == 0) t_max = 100'000;
    if (delta && !(*delta > 0.0)) throw UsageError("--delta must be positive");

    adc::BenchConfig config;
    config.algorithm = adc::parse_algorithm(algorithm);
    config.epsilon = epsilon;
    config.t_max = t_max;
    config.delta = delta;
    config.jobs = jobs;

    std::vector<adc::ProblemInstance> problems;
    std::optional<adc::GklsParams> params;
    std::string title;
    if (!problem.empty()) {
      if (problem == "all") {
        for (const auto& name : adc::classic_names()) problems.push_back(adc::classic(name));
        title = "classic";
      } else {
        try {
          problems.push_back(adc::classic(problem));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        title = problem;
      }
    } else {
      params = parse_class(class_spec);
      try {
        problems = adc::generate_class(*params).problems();
      } catch (const adc::GenerationError& e) {
        throw UsageError(e.what());
      }
      title = "class " + class_spec;
    }
    if (shift_by) {
      for (auto& p : problems) p = adc::shift(p, *shift_by);
    }

    adc::ClassReport report = adc::run_class(problems, config, title);
    report.class_params = params;
    report.shift = shift_by;

    if (!compare_path.empty()) {
      std::vector<adc::ProblemOutcome> ref;
      try {
        ref = adc::parse_report_csv(read_file(compare_path));
        adc::attach_comparison(report, ref,
                               ref.empty() ? compare_path : std::string(adc::to_string(ref[0].algorithm)));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--compare: ") + e.what());
      }
    }

    if (!snapshot_path.empty()) {
      if (config.algorithm != adc::Algorithm::Adc || problems.size() != 1)
        throw UsageError("--snapshot needs --algorithm adc and a single problem");
      adc::SolverConfig sc;
      sc.epsilon = config.epsilon;
      sc.t_max = config.t_max;
      const auto rule = adc::make_stop_rule(problems[0], report.outcomes[0].delta, config.t_max);
      sc.target = [rule](std::span<const double> x) { return adc::target_hit(x, rule); };
      adc::DiagonalSolver solver(problems[0], sc);
      solver.run();
      const adc::Snapshot snap = adc::emit_partition_snapshot(solver);
      if (!snap.boxes_emitted)
        std::cerr << "warning: box rows are only written for N <= 2; diagram rows only\n";
      std::ofstream out(snapshot_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << snapshot_path << '\n';
        return 1;
      }
      out << snap.csv;
    }

    std::cout << adc::emit_report(report, format == "md" ? adc::ReportFormat::Markdown
                                                         : adc::ReportFormat::Csv);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
