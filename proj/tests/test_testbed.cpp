#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "adc/testbed.hpp"

using namespace adc;

namespace {

double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

Point unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Point u(n);
  double s = 0.0;
  for (auto& v : u) s += (v = g(rng)) * v;
  for (auto& v : u) v /= std::sqrt(s);
  return u;
}

Point along(const Point& p, const Point& u, double t) {
  Point q(p);
  for (std::size_t j = 0; j < p.size(); ++j) q[j] += t * u[j];
  return q;
}

}  // namespace

// ---- classic functions ---------------------------------------------------

struct Reference {
  const char* name;
  std::size_t n;
  double minimum;  // published value
  double lo, hi;   // bounds of the first coordinate
};

class ClassicReference : public ::testing::TestWithParam<Reference> {};

TEST_P(ClassicReference, MinimaAndDomains) {
  const auto& ref = GetParam();
  const auto p = classic(ref.name);
  EXPECT_EQ(p.name, ref.name);
  EXPECT_EQ(p.dimension(), ref.n);
  EXPECT_EQ(p.lower[0], ref.lo);
  EXPECT_EQ(p.upper[0], ref.hi);
  ASSERT_TRUE(p.known_minimum.has_value());
  EXPECT_NEAR(*p.known_minimum, ref.minimum, 1e-4);
  ASSERT_FALSE(p.known_minimizers.empty());
  std::mt19937_64 rng(7);
  for (const auto& x : p.known_minimizers) {
    const double fx = p.objective(x);
    EXPECT_NEAR(fx, ref.minimum, 1e-4 * std::max(1.0, std::abs(ref.minimum)));
    EXPECT_NEAR(fx, *p.known_minimum, 1e-5);
    // no nearby point is noticeably lower
    for (int i = 0; i < 50; ++i) {
      const Point y = along(x, unit(rng, ref.n), 1e-3);
      bool inside = true;
      for (std::size_t j = 0; j < ref.n; ++j) inside &= y[j] >= p.lower[j] && y[j] <= p.upper[j];
      if (inside) EXPECT_GE(p.objective(y), fx - 1e-9);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Published, ClassicReference,
    ::testing::Values(Reference{"shekel5", 4, -10.1532, 0, 10}, Reference{"shekel7", 4, -10.4029, 0, 10},
                      Reference{"shekel10", 4, -10.5364, 0, 10}, Reference{"hartman3", 3, -3.86278, 0, 1},
                      Reference{"hartman6", 6, -3.32237, 0, 1}, Reference{"branin", 2, 0.397887, -5, 10},
                      Reference{"goldstein_price", 2, 3.0, -2, 2}, Reference{"camel", 2, -1.0316285, -3, 3},
                      Reference{"shubert", 2, -186.7309, -8, 10}),
    [](const auto& info) { return std::string(info.param.name); });

TEST(Classic, NamesAndMultiplicity) {
  EXPECT_EQ(classic_names().size(), 9u);
  for (const auto& n : classic_names()) EXPECT_NO_THROW(classic(n));
  EXPECT_THROW(classic("rosenbrock"), std::invalid_argument);
  EXPECT_EQ(classic("branin").known_minimizers.size(), 3u);
  EXPECT_EQ(classic("shubert").known_minimizers.size(), 18u);
  EXPECT_EQ(classic("camel").known_minimizers.size(), 2u);
}

TEST(Classic, GoldsteinPriceExactAtMinimizer) {
  const auto p = classic("goldstein_price");
  EXPECT_EQ(p.objective(Point{0.0, -1.0}), 3.0);
}

TEST(Shift, MovesValuesNotMinimizers) {
  const auto p = classic("branin");
  const Point x{1.0, 2.0};
  for (double c : {0.0, 2.0, -0.397887}) {
    const auto q = shift(p, c);
    EXPECT_DOUBLE_EQ(q.objective(x), p.objective(x) + c);
    EXPECT_DOUBLE_EQ(*q.known_minimum, *p.known_minimum + c);
    EXPECT_EQ(q.known_minimizers, p.known_minimizers);
  }
  EXPECT_NEAR(*shift(p, -*p.known_minimum).known_minimum, 0.0, 1e-15);
}

// ---- generated class -----------------------------------------------------

class Generated : public ::testing::TestWithParam<GklsParams> {};

TEST_P(Generated, StructuralLaws) {
  const auto params = GetParam();
  const auto cls = generate_class(params);
  ASSERT_EQ(cls.members.size(), params.count);
  for (const auto& g : cls.members) {
    const std::size_t n = params.N;
    ASSERT_EQ(g->centers.size(), params.M - 1);
    EXPECT_EQ(g->values[0], params.f_star);
    EXPECT_EQ((*g)(g->centers[0]), params.f_star);
    EXPECT_NEAR(dist(g->centers[0], g->vertex), params.r_star, 1e-12);
    EXPECT_DOUBLE_EQ(g->radii[0], params.rho_star);
    EXPECT_EQ(g->ball_of(g->vertex), -1);
    for (std::size_t i = 0; i < g->centers.size(); ++i) {
      EXPECT_GT(g->radii[i], 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_GE(g->centers[i][j] - g->radii[i], -1.0 - 1e-12);
        EXPECT_LE(g->centers[i][j] + g->radii[i], 1.0 + 1e-12);
      }
      if (i > 0) EXPECT_GT(g->values[i], params.f_star);
      for (std::size_t k = i + 1; k < g->centers.size(); ++k)
        EXPECT_GE(dist(g->centers[i], g->centers[k]), g->radii[i] + g->radii[k] - 1e-12);
    }
  }
}

TEST_P(Generated, ParaboloidOutsideAndNothingBelowMinimum) {
  const auto params = GetParam();
  const auto cls = generate_class(params);
  const std::size_t n = params.N;
  std::mt19937_64 rng(11);
  const int samples = 100000 / static_cast<int>(params.count);
  for (const auto& g : cls.members) {
    // Latin hypercube on [-1, 1]^N
    std::vector<std::vector<int>> perm(n, std::vector<int>(samples));
    for (auto& pm : perm) {
      std::iota(pm.begin(), pm.end(), 0);
      std::shuffle(pm.begin(), pm.end(), rng);
    }
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Point x(n);
    for (int s = 0; s < samples; ++s) {
      for (std::size_t j = 0; j < n; ++j) x[j] = -1.0 + 2.0 * (perm[j][s] + U(rng)) / samples;
      const double fx = (*g)(x);
      EXPECT_GE(fx, params.f_star - 1e-9);
      if (g->ball_of(x) < 0) {
        const double r = dist(x, g->vertex);
        EXPECT_NEAR(fx, r * r + g->vertex_value, 1e-12);
      }
    }
  }
}

TEST_P(Generated, SmoothAcrossSpheres) {
  const auto params = GetParam();
  const auto cls = generate_class(params);
  std::mt19937_64 rng(13);
  const std::size_t n = params.N;
  int checked = 0;
  for (int round = 0; round < 50 && checked < 100; ++round) {
    for (const auto& g : cls.members) {
      for (std::size_t i = 0; i < g->centers.size() && checked < 100; ++i) {
        const Point e = unit(rng, n);
        const Point p = along(g->centers[i], e, g->radii[i]);
        // a direction that enters the ball
        Point u = unit(rng, n);
        double ue = 0.0;
        for (std::size_t j = 0; j < n; ++j) ue += u[j] * e[j];
        if (ue > -0.3) {
          for (std::size_t j = 0; j < n; ++j) u[j] -= (ue + 0.5) * e[j];
          const double s = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
          for (auto& v : u) v /= s;
        }
        const double h = 1e-5 * g->radii[i];
        const auto f = [&](double t) { return (*g)(along(p, u, t)); };
        // tangent balls share boundary points; only the paraboloid side is checked
        if (g->ball_of(along(p, u, -2 * h)) != -1 || g->ball_of(along(p, u, -h)) != -1) continue;
        ASSERT_EQ(g->ball_of(along(p, u, h)), static_cast<int>(i));
        ASSERT_EQ(g->ball_of(along(p, u, 2 * h)), static_cast<int>(i));

        double analytic = 0.0;
        for (std::size_t j = 0; j < n; ++j) analytic += 2.0 * (p[j] - g->vertex[j]) * u[j];
        const double r = dist(p, g->vertex);
        const double value = r * r + g->vertex_value;
        const double inner = (-3.0 * f(0) + 4.0 * f(h) - f(2 * h)) / (2 * h);
        const double outer = (3.0 * f(0) - 4.0 * f(-h) + f(-2 * h)) / (2 * h);
        EXPECT_NEAR(f(h * 1e-6), value, 1e-9);
        EXPECT_NEAR(inner, analytic, 1e-5 * std::max(1.0, std::abs(analytic)));
        EXPECT_NEAR(outer, analytic, 1e-5 * std::max(1.0, std::abs(analytic)));
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 100);
}

INSTANTIATE_TEST_SUITE_P(
    Classes, Generated,
    ::testing::Values(GklsParams{2, 10, -1.0, 0.1, 0.9, 1, 20}, GklsParams{2, 10, -1.0, 0.2, 0.9, 3, 20},
                      GklsParams{3, 10, -1.0, 0.2, 0.66, 5, 10}, GklsParams{5, 10, -1.0, 0.4, 0.66, 7, 5},
                      GklsParams{1, 4, -2.0, 0.05, 0.5, 9, 10}),
    [](const auto& info) { return "N" + std::to_string(info.param.N) + "_seed" + std::to_string(info.param.seed); });

TEST(GeneratedClass, DeterministicInSeed) {
  const GklsParams p{2, 10, -1.0, 0.1, 0.9, 42, 5};
  const auto a = generate_class(p), b = generate_class(p);
  auto q = p;
  q.seed = 43;
  const auto c = generate_class(q);
  for (std::size_t s = 0; s < 5; ++s) {
    EXPECT_EQ(a.members[s]->centers, b.members[s]->centers);
    EXPECT_EQ(a.members[s]->values, b.members[s]->values);
    EXPECT_EQ(a.members[s]->vertex, b.members[s]->vertex);
  }
  EXPECT_NE(a.members[0]->centers, c.members[0]->centers);
}

TEST(GeneratedClass, ProblemsCarryMinimizer) {
  const auto cls = generate_class({2, 10, -1.0, 0.1, 0.9, 1, 100});
  const auto probs = cls.problems();
  ASSERT_EQ(probs.size(), 100u);
  EXPECT_EQ(probs[0].name, "f1");
  EXPECT_EQ(probs[99].name, "f100");
  for (const auto& p : probs) {
    EXPECT_EQ(p.lower, (Point{-1.0, -1.0}));
    EXPECT_EQ(p.upper, (Point{1.0, 1.0}));
    ASSERT_EQ(p.known_minimizers.size(), 1u);
    EXPECT_EQ(p.objective(p.known_minimizers[0]), -1.0);
    EXPECT_EQ(*p.known_minimum, -1.0);
  }
}

TEST(GeneratedClass, InfeasibleParameters) {
  const GklsParams ok{2, 10, -1.0, 0.1, 0.9, 1, 1};
  EXPECT_NO_THROW(generate_class(ok));
  auto bad = ok;
  bad.N = 0;
  EXPECT_THROW(generate_class(bad), GenerationError);
  bad = ok, bad.M = 1;
  EXPECT_THROW(generate_class(bad), GenerationError);
  bad = ok, bad.rho_star = 0.0;
  EXPECT_THROW(generate_class(bad), GenerationError);
  bad = ok, bad.r_star = 1.0;
  EXPECT_THROW(generate_class(bad), GenerationError);
  bad = ok, bad.rho_star = 0.95;
  EXPECT_THROW(generate_class(bad), GenerationError);
  bad = ok, bad.f_star = 0.0;
  EXPECT_THROW(generate_class(bad), GenerationError);
}
