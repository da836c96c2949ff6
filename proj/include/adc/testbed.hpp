#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adc/core.hpp"

namespace adc {

/// Names accepted by classic(): shekel5, shekel7, shekel10, hartman3,
/// hartman6, branin, goldstein_price, camel, shubert.
const std::vector<std::string>& classic_names();

/// One of the nine classic test functions on its customary box.
/// Throws std::invalid_argument for an unknown name.
ProblemInstance classic(std::string_view name);

/// objective + c; the minimizers stay where they are.
ProblemInstance shift(const ProblemInstance& problem, double c);

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GklsParams {
  std::size_t N = 2;
  std::size_t M = 10;
  double f_star = -1.0;
  double rho_star = 0.1;
  double r_star = 0.9;
  std::uint64_t seed = 1;
  std::size_t count = 100;

  void validate() const;
};

/// A paraboloid ||x - T||^2 + t on [-1,1]^N with M - 1 disjoint balls carved
/// into it. Inside ball i the function rises from f_i at the center as a
/// radial cubic that meets the paraboloid with matching value and gradient on
/// the sphere. Ball 0 holds the global minimum.
struct GklsFunction {
  Point vertex;                 // T
  double vertex_value = 0.0;    // t
  std::vector<Point> centers;   // centers[0] = x*
  std::vector<double> radii;
  std::vector<double> values;   // values[0] = f*

  std::size_t dimension() const noexcept { return vertex.size(); }
  double operator()(std::span<const double> x) const;
  /// Index of the ball containing x, or -1.
  int ball_of(std::span<const double> x) const;
};

struct GeneratedClass {
  GklsParams params;
  std::vector<std::shared_ptr<const GklsFunction>> members;

  /// Members as problems named "<prefix><index>" with x* as known minimizer.
  std::vector<ProblemInstance> problems(const std::string& prefix = "f") const;
};

/// Deterministic in (params, seed). Throws GenerationError when the
/// parameters are infeasible or the balls cannot be placed.
GeneratedClass generate_class(const GklsParams& params);

}  // namespace adc
