#include "adc/testbed.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace adc {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::array<double, 4>, 10> kShekelA{{{4, 4, 4, 4},
                                                          {1, 1, 1, 1},
                                                          {8, 8, 8, 8},
                                                          {6, 6, 6, 6},
                                                          {3, 7, 3, 7},
                                                          {2, 9, 2, 9},
                                                          {5, 5, 3, 3},
                                                          {8, 1, 8, 1},
                                                          {6, 2, 6, 2},
                                                          {7, 3.6, 7, 3.6}}};
constexpr std::array<double, 10> kShekelC{0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};

constexpr std::array<double, 4> kHartmanAlpha{1.0, 1.2, 3.0, 3.2};
constexpr std::array<std::array<double, 3>, 4> kHartman3A{
    {{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}}};
constexpr std::array<std::array<double, 3>, 4> kHartman3P{{{0.3689, 0.1170, 0.2673},
                                                            {0.4699, 0.4387, 0.7470},
                                                            {0.1091, 0.8732, 0.5547},
                                                            {0.03815, 0.5743, 0.8828}}};
constexpr std::array<std::array<double, 6>, 4> kHartman6A{{{10, 3, 17, 3.5, 1.7, 8},
                                                            {0.05, 10, 17, 0.1, 8, 14},
                                                            {3, 3.5, 1.7, 10, 17, 8},
                                                            {17, 8, 0.05, 10, 0.1, 14}}};
constexpr std::array<std::array<double, 6>, 4> kHartman6P{
    {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
     {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
     {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
     {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}}};

Objective shekel(std::size_t m) {
  return [m](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double sq = 0.0;
      for (std::size_t j = 0; j < 4; ++j) sq += (x[j] - kShekelA[i][j]) * (x[j] - kShekelA[i][j]);
      s -= 1.0 / (sq + kShekelC[i]);
    }
    return s;
  };
}

template <std::size_t N>
double hartman(std::span<const double> x, const std::array<std::array<double, N>, 4>& A,
               const std::array<std::array<double, N>, 4>& P) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double e = 0.0;
    for (std::size_t j = 0; j < N; ++j) e += A[i][j] * (x[j] - P[i][j]) * (x[j] - P[i][j]);
    s -= kHartmanAlpha[i] * std::exp(-e);
  }
  return s;
}

double branin(std::span<const double> x) {
  const double b = 5.1 / (4.0 * kPi * kPi);
  const double c = 5.0 / kPi;
  const double t = 1.0 / (8.0 * kPi);
  const double y = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
  return y * y + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
}

double goldstein_price(std::span<const double> x) {
  const double x1 = x[0], x2 = x[1];
  const double a = x1 + x2 + 1.0;
  const double b = 2.0 * x1 - 3.0 * x2;
  return (1.0 + a * a * (19 - 14 * x1 + 3 * x1 * x1 - 14 * x2 + 6 * x1 * x2 + 3 * x2 * x2)) *
         (30.0 + b * b * (18 - 32 * x1 + 12 * x1 * x1 + 48 * x2 - 36 * x1 * x2 + 27 * x2 * x2));
}

double camel(std::span<const double> x) {
  const double x1 = x[0], x2 = x[1];
  return (4.0 - 2.1 * x1 * x1 + x1 * x1 * x1 * x1 / 3.0) * x1 * x1 + x1 * x2 +
         (-4.0 + 4.0 * x2 * x2) * x2 * x2;
}

double shubert_1d(double t) {
  double s = 0.0;
  for (int i = 1; i <= 5; ++i) s += i * std::cos((i + 1) * t + i);
  return s;
}

double shubert(std::span<const double> x) { return shubert_1d(x[0]) * shubert_1d(x[1]); }

// Extrema of the one-dimensional Shubert factor on [-8, 10].
constexpr std::array<double, 3> kShubertArgMin{-7.708313735503664, -1.4251284287355785,
                                               4.858056877669634};
constexpr std::array<double, 3> kShubertArgMax{-7.0835064070618206, -0.8003211006387486,
                                               5.482864207073841};

}  // namespace

const std::vector<std::string>& classic_names() {
  static const std::vector<std::string> names{"shekel5",  "shekel7",  "shekel10",
                                              "hartman3", "hartman6", "branin",
                                              "goldstein_price", "camel", "shubert"};
  return names;
}

ProblemInstance classic(std::string_view name) {
  if (name == "shekel5" || name == "shekel7" || name == "shekel10") {
    const std::size_t m = name == "shekel5" ? 5 : name == "shekel7" ? 7 : 10;
    const std::vector<Point> xs = m == 5   ? std::vector<Point>{{4.00003715, 4.00013328, 4.00003715, 4.00013328}}
                                  : m == 7 ? std::vector<Point>{{4.00057291, 4.00068937, 3.99948971, 3.99960616}}
                                           : std::vector<Point>{{4.00074653, 4.00059293, 3.9996634, 3.9995098}};
    const double fmin = m == 5 ? -10.153199679058229 : m == 7 ? -10.402940566818662 : -10.536409816692046;
    return make_problem(std::string(name), shekel(m), Point(4, 0.0), Point(4, 10.0), xs, fmin);
  }
  if (name == "hartman3") {
    return make_problem(
        "hartman3", [](std::span<const double> x) { return hartman<3>(x, kHartman3A, kHartman3P); },
        Point(3, 0.0), Point(3, 1.0), {{0.11461433, 0.55564885, 0.85254695}}, -3.8627821478207554);
  }
  if (name == "hartman6") {
    return make_problem(
        "hartman6", [](std::span<const double> x) { return hartman<6>(x, kHartman6A, kHartman6P); },
        Point(6, 0.0), Point(6, 1.0),
        {{0.20168951, 0.15001069, 0.47687397, 0.27533243, 0.31165162, 0.65730053}},
        -3.322368011415515);
  }
  if (name == "branin") {
    return make_problem("branin", branin, {-5.0, 0.0}, {10.0, 15.0},
                        {{-kPi, 12.275}, {kPi, 2.275}, {9.42477796, 2.475}}, 0.39788735772973816);
  }
  if (name == "goldstein_price") {
    return make_problem("goldstein_price", goldstein_price, {-2.0, -2.0}, {2.0, 2.0}, {{0.0, -1.0}},
                        3.0);
  }
  if (name == "camel") {
    return make_problem("camel", camel, {-3.0, -2.0}, {3.0, 2.0},
                        {{0.08984201, -0.7126564}, {-0.08984201, 0.7126564}}, -1.0316284534898774);
  }
  if (name == "shubert") {
    std::vector<Point> xs;
    for (double a : kShubertArgMin) {
      for (double b : kShubertArgMax) {
        xs.push_back({a, b});
        xs.push_back({b, a});
      }
    }
    return make_problem("shubert", shubert, {-8.0, -8.0}, {10.0, 10.0}, xs, -186.7309088310239);
  }
  throw std::invalid_argument("unknown test function: " + std::string(name));
}

ProblemInstance shift(const ProblemInstance& problem, double c) {
  ProblemInstance out = problem;
  out.objective = [f = problem.objective, c](std::span<const double> x) { return f(x) + c; };
  if (out.known_minimum) *out.known_minimum += c;
  return out;
}

}  // namespace adc
