#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace adc {

using Point = std::vector<double>;
using Objective = std::function<double(std::span<const double>)>;

/// Raised when a point lies outside the box it is mapped from.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when the objective returns a non-finite value. Carries the
/// offending point in problem coordinates.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, Point point)
      : std::runtime_error(what), point_(std::move(point)) {}
  const Point& point() const noexcept { return point_; }

 private:
  Point point_;
};

/// Raised when exact ternary coordinates would exceed the configured depth.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Box-constrained black-box problem: minimize objective over [lower, upper].
///
/// The objective must be deterministic. Instances are immutable once built and
/// may be shared between threads as long as the objective itself is.
struct ProblemInstance {
  std::string name;
  Objective objective;
  Point lower;
  Point upper;
  /// Known global minimizers (problem coordinates). Several are allowed
  /// because some classic functions have more than one.
  std::vector<Point> known_minimizers;
  std::optional<double> known_minimum;

  std::size_t dimension() const noexcept { return lower.size(); }

  /// Throws std::invalid_argument if the bounds or minimizers are inconsistent.
  void validate() const;
};

/// Build a problem, validating it on the way out.
ProblemInstance make_problem(std::string name, Objective objective, Point lower,
                             Point upper, std::vector<Point> known_minimizers = {},
                             std::optional<double> known_minimum = std::nullopt);

struct EvaluationCounter {
  std::uint64_t evaluations = 0;
  std::uint64_t db_hits = 0;

  std::uint64_t lookups() const noexcept { return evaluations + db_hits; }
};

Point to_unit_cube(const ProblemInstance& problem, std::span<const double> p);
Point from_unit_cube(const ProblemInstance& problem, std::span<const double> x);

/// Evaluate the objective at a unit-cube point. Increments counter.evaluations.
double evaluate(const ProblemInstance& problem, std::span<const double> unit_point,
                EvaluationCounter& counter);

}  // namespace adc
