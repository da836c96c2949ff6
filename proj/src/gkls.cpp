#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "adc/testbed.hpp"

namespace adc {

namespace {

constexpr int kPlacementAttempts = 10000;

// Uniform [0, 1) from the top 53 bits, independent of the standard library's
// distribution implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : rng_(seed) {}
  double u01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
  double normal() {
    const double u1 = 1.0 - u01();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 rng_;
};

double distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
  return std::sqrt(s);
}

double boundary_distance(const Point& x) {
  double d = std::numeric_limits<double>::infinity();
  for (double v : x) d = std::min({d, v + 1.0, 1.0 - v});
  return d;
}

GklsFunction make_member(const GklsParams& prm, Stream& rng, std::size_t index) {
  const std::size_t n = prm.N;
  GklsFunction g;
  g.vertex_value = 0.0;

  // Vertex and global minimizer x* = T + r* e with its ball inside the box.
  bool placed = false;
  for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
    g.vertex.assign(n, 0.0);
    for (auto& v : g.vertex) v = rng.uniform(-1.0, 1.0);
    Point e(n);
    double norm = 0.0;
    for (auto& v : e) {
      v = rng.normal();
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    Point xs(n);
    for (std::size_t j = 0; j < n; ++j) xs[j] = g.vertex[j] + prm.r_star * e[j] / norm;
    if (boundary_distance(xs) >= prm.rho_star) {
      g.centers = {xs};
      placed = true;
    }
  }
  if (!placed) {
    std::ostringstream os;
    os << "member " << index << ": no placement keeps the global ball (rho*=" << prm.rho_star
       << ", r*=" << prm.r_star << ") inside [-1,1]^" << n;
    throw GenerationError(os.str());
  }

  // Remaining M - 2 minimizers; each must leave room for a ball of at least
  // rho*/4 that is disjoint from everything placed so far.
  const double floor_radius = 0.25 * prm.rho_star;
  for (std::size_t i = 2; i < prm.M; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !ok; ++attempt) {
      Point m(n);
      for (auto& v : m) v = rng.uniform(-1.0, 1.0);
      ok = boundary_distance(m) >= floor_radius &&
           distance(m, g.vertex) >= 2.0 * floor_radius &&
           distance(m, g.centers[0]) >= prm.rho_star + floor_radius;
      for (std::size_t k = 1; k < g.centers.size() && ok; ++k)
        ok = distance(m, g.centers[k]) >= 2.0 * floor_radius;
      if (ok) g.centers.push_back(std::move(m));
    }
    if (!ok) {
      std::ostringstream os;
      os << "member " << index << ": cannot place " << prm.M - 2
         << " disjoint local minimizers next to a global ball of radius " << prm.rho_star;
      throw GenerationError(os.str());
    }
  }

  const std::size_t balls = g.centers.size();
  g.radii.assign(balls, 0.0);
  g.radii[0] = prm.rho_star;
  for (std::size_t i = 1; i < balls; ++i) {
    double r = std::min({boundary_distance(g.centers[i]), 0.5 * distance(g.centers[i], g.vertex),
                         distance(g.centers[i], g.centers[0]) - prm.rho_star});
    for (std::size_t k = 1; k < balls; ++k) {
      if (k != i) r = std::min(r, 0.5 * distance(g.centers[i], g.centers[k]));
    }
    g.radii[i] = r;
  }

  g.values.assign(balls, prm.f_star);
  for (std::size_t i = 1; i < balls; ++i) {
    const double delta = distance(g.centers[i], g.vertex);
    const double upper = g.vertex_value + (delta - g.radii[i]) * (delta - g.radii[i]);
    g.values[i] = prm.f_star + (upper - prm.f_star) * rng.uniform(0.1, 0.9);
  }
  return g;
}

}  // namespace

void GklsParams::validate() const {
  std::ostringstream os;
  if (N < 1) os << "N must be positive";
  else if (M < 2) os << "M must be at least 2";
  else if (count < 1) os << "class size must be positive";
  else if (!(rho_star > 0.0)) os << "rho* must be positive";
  else if (!(r_star > 0.0) || r_star >= 1.0) os << "r* must lie in (0, 1)";
  else if (rho_star >= r_star) os << "rho*=" << rho_star << " must be below r*=" << r_star;
  else if (!(f_star < 0.0)) os << "f*=" << f_star << " must lie below the paraboloid minimum 0";
  else if (f_star >= (r_star - rho_star) * (r_star - rho_star))
    os << "f* must lie below the paraboloid on the global ball's sphere";
  else return;
  throw GenerationError("infeasible class parameters: " + os.str());
}

int GklsFunction::ball_of(std::span<const double> x) const {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (distance(x, centers[i]) < radii[i]) return static_cast<int>(i);
  }
  return -1;
}

double GklsFunction::operator()(std::span<const double> x) const {
  const int i = ball_of(x);
  double sq = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) sq += (x[j] - vertex[j]) * (x[j] - vertex[j]);
  if (i < 0) return sq + vertex_value;

  const auto& m = centers[static_cast<std::size_t>(i)];
  const double rho = radii[static_cast<std::size_t>(i)];
  const double fi = values[static_cast<std::size_t>(i)];
  double r = 0.0;
  double c = 0.0;  // <m - T, e> * r
  for (std::size_t j = 0; j < x.size(); ++j) {
    r += (x[j] - m[j]) * (x[j] - m[j]);
    c += (m[j] - vertex[j]) * (x[j] - m[j]);
  }
  r = std::sqrt(r);
  if (r == 0.0) return fi;
  c /= r;

  double delta2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) delta2 += (m[j] - vertex[j]) * (m[j] - vertex[j]);
  // Paraboloid value and radial slope where the ray from m meets the sphere.
  const double G = delta2 + 2.0 * rho * c + rho * rho + vertex_value;
  const double dG = 2.0 * c + 2.0 * rho;
  const double D = G - fi;
  const double a = (3.0 * D - dG * rho) / (rho * rho);
  const double b = (dG * rho - 2.0 * D) / (rho * rho * rho);
  return fi + a * r * r + b * r * r * r;
}

std::vector<ProblemInstance> GeneratedClass::problems(const std::string& prefix) const {
  std::vector<ProblemInstance> out;
  out.reserve(members.size());
  const Point lo(params.N, -1.0), hi(params.N, 1.0);
  for (std::size_t s = 0; s < members.size(); ++s) {
    auto g = members[s];
    out.push_back(make_problem(
        prefix + std::to_string(s + 1), [g](std::span<const double> x) { return (*g)(x); }, lo,
        hi, {g->centers[0]}, g->values[0]));
  }
  return out;
}

GeneratedClass generate_class(const GklsParams& params) {
  params.validate();
  GeneratedClass cls;
  cls.params = params;
  Stream rng(params.seed);
  for (std::size_t s = 0; s < params.count; ++s)
    cls.members.push_back(std::make_shared<const GklsFunction>(make_member(params, rng, s + 1)));
  return cls;
}

}  // namespace adc
