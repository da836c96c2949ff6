#include "adc/core.hpp"

#include <cmath>
#include <sstream>

namespace adc {

namespace {

std::string format_point(std::span<const double> p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j) os << ", ";
    os << p[j];
  }
  os << ')';
  return os.str();
}

}  // namespace

void ProblemInstance::validate() const {
  if (lower.empty()) throw std::invalid_argument(name + ": dimension must be positive");
  if (lower.size() != upper.size())
    throw std::invalid_argument(name + ": bound vectors differ in length");
  if (!objective) throw std::invalid_argument(name + ": objective is empty");
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!(lower[j] < upper[j]))
      throw std::invalid_argument(name + ": lower bound not below upper bound in dimension " +
                                  std::to_string(j));
  }
  for (const auto& x : known_minimizers) {
    if (x.size() != lower.size())
      throw std::invalid_argument(name + ": known minimizer has wrong dimension");
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < lower[j] || x[j] > upper[j])
        throw std::invalid_argument(name + ": known minimizer outside the box");
    }
  }
}

ProblemInstance make_problem(std::string name, Objective objective, Point lower, Point upper,
                             std::vector<Point> known_minimizers,
                             std::optional<double> known_minimum) {
  ProblemInstance p{std::move(name),     std::move(objective),        std::move(lower),
                    std::move(upper),    std::move(known_minimizers), known_minimum};
  p.validate();
  return p;
}

Point to_unit_cube(const ProblemInstance& problem, std::span<const double> p) {
  const auto n = problem.dimension();
  if (p.size() != n) throw DomainError("point has wrong dimension");
  Point x(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = problem.lower[j];
    const double b = problem.upper[j];
    if (p[j] < a || p[j] > b) throw DomainError("point " + format_point(p) + " outside the box");
    x[j] = (p[j] - a) / (b - a);
  }
  return x;
}

Point from_unit_cube(const ProblemInstance& problem, std::span<const double> x) {
  const auto n = problem.dimension();
  if (x.size() != n) throw DomainError("point has wrong dimension");
  Point p(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (x[j] < 0.0 || x[j] > 1.0)
      throw DomainError("point " + format_point(x) + " outside the unit cube");
    const double a = problem.lower[j];
    const double b = problem.upper[j];
    // Pin the end points so corners map exactly onto the box corners.
    p[j] = x[j] == 1.0 ? b : a + x[j] * (b - a);
  }
  return p;
}

double evaluate(const ProblemInstance& problem, std::span<const double> unit_point,
                EvaluationCounter& counter) {
  Point p = from_unit_cube(problem, unit_point);
  const double value = problem.objective(p);
  if (!std::isfinite(value)) {
    std::string what = problem.name + ": non-finite objective value at " + format_point(p);
    throw EvaluationError(what, std::move(p));
  }
  ++counter.evaluations;
  return value;
}

}  // namespace adc
