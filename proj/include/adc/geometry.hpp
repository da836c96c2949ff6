#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "adc/core.hpp"

namespace adc {

/// A coordinate n / 3^h in [0, 1], stored exactly.
///
/// Internally the value is kept as an integer count of 3^-40 ticks, so every
/// coordinate has a single representation and equality is bit-exact. The
/// canonical (n, h) pair is recovered on demand.
class TernaryCoord {
 public:
  static constexpr int kMaxDepth = 40;
  static constexpr std::uint64_t kScale = 12157665459056928801ULL;  // 3^40

  constexpr TernaryCoord() = default;

  /// n / 3^h. Throws CapacityError if h > kMaxDepth, std::invalid_argument if n > 3^h.
  static TernaryCoord from_fraction(std::uint64_t n, int h);
  static constexpr TernaryCoord from_ticks(std::uint64_t ticks) { return TernaryCoord(ticks); }
  static constexpr TernaryCoord zero() { return TernaryCoord(0); }
  static constexpr TernaryCoord one() { return TernaryCoord(kScale); }

  constexpr std::uint64_t ticks() const noexcept { return ticks_; }
  /// Smallest h such that the value is n / 3^h.
  int depth() const noexcept;
  std::uint64_t numerator() const noexcept;
  double value() const noexcept { return static_cast<double>(ticks_) / static_cast<double>(kScale); }

  constexpr auto operator<=>(const TernaryCoord&) const = default;

 private:
  constexpr explicit TernaryCoord(std::uint64_t ticks) : ticks_(ticks) {}
  std::uint64_t ticks_ = 0;
};

/// 3^k for 0 <= k <= 40.
std::uint64_t pow3(int k);

struct Vertex {
  std::vector<TernaryCoord> coords;

  std::size_t dimension() const noexcept { return coords.size(); }
  Point to_point() const;
  bool operator==(const Vertex&) const = default;
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept;
};

/// A box given by the two end points of its main diagonal.
struct Hyperinterval {
  std::uint32_t id = 0;
  Vertex a;
  Vertex b;
  std::uint32_t group = 0;
  double f_a = 0.0;
  double f_b = 0.0;

  std::size_t dimension() const noexcept { return a.dimension(); }
  TernaryCoord lower(std::size_t j) const { return std::min(a.coords[j], b.coords[j]); }
  TernaryCoord upper(std::size_t j) const { return std::max(a.coords[j], b.coords[j]); }
  std::uint64_t side_ticks(std::size_t j) const {
    return upper(j).ticks() - lower(j).ticks();
  }
  /// Number of trisections along dimension j; the side is 3^-depth long.
  int side_depth(std::size_t j) const;
  /// Sum of side depths; the volume is exactly 3^-total_depth.
  int total_depth() const;
  double mean_value() const noexcept { return 0.5 * (f_a + f_b); }
};

/// Position of a hyperinterval in the (d, F) diagram.
struct DiagramPoint {
  double d = 0.0;
  double F = 0.0;
  std::uint32_t group = 0;
  std::uint32_t interval_id = 0;
};

/// Index of the longest side; the smallest index wins ties.
std::size_t longest_side_index(const Hyperinterval& h);

/// Half the Euclidean diagonal and the mean of the two vertex values.
DiagramPoint diagram_point(const Hyperinterval& h);

/// Diagonal length of every box in group l of an N-dimensional unit cube
/// partition: 3^-m * sqrt((N - r) + r / 9) with m = l / N, r = l % N.
double group_diagonal(std::uint32_t l, std::size_t dimension);

struct Trisection {
  std::size_t dimension = 0;
  Vertex u;
  Vertex v;
};

/// Points u and v that cut the box with main diagonal [a, b] into three equal
/// parts across its longest side i: u(i) = a(i) + 2/3 (b(i) - a(i)),
/// v(i) = b(i) + 2/3 (a(i) - b(i)), all other coordinates copied from a and b.
/// Throws CapacityError if the cut needs more than max_depth ternary digits.
Trisection trisect(const Vertex& a, const Vertex& b, int max_depth = TernaryCoord::kMaxDepth);

/// Supplies f at a vertex; usually backed by a VertexDatabase.
using VertexValueProvider = std::function<double(const Vertex&)>;

struct Subdivision {
  std::uint32_t parent = 0;
  std::array<std::uint32_t, 3> children{};
  Vertex u;
  Vertex v;
  double f_u = 0.0;
  double f_v = 0.0;
  std::size_t split_dimension = 0;
};

/// The evolving set of hyperintervals covering the unit cube.
///
/// Ids are dense: a subdivided box's id is reused by its middle child and the
/// two outer children take the next two fresh ids, so every id in
/// [0, size()) is live. Boxes are also kept in a subdivision tree used to
/// find all closed boxes containing a given vertex.
class Partition {
 public:
  /// Start from the whole unit cube with the given values at its corners
  /// (0,...,0) and (1,...,1).
  Partition(std::size_t dimension, double f_lower_corner, double f_upper_corner,
            int max_depth = TernaryCoord::kMaxDepth);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  const Hyperinterval& interval(std::uint32_t id) const { return intervals_.at(id); }
  const std::vector<Hyperinterval>& intervals() const noexcept { return intervals_; }

  /// Smallest and largest non-empty group index.
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t Q() const noexcept { return Q_; }
  std::size_t group_size(std::uint32_t l) const;
  /// Live members of group l ordered by (F, id).
  const std::set<std::pair<double, std::uint32_t>>& group_members(std::uint32_t l) const;

  /// Minimum-F member of group l; the oldest id wins ties.
  std::optional<std::uint32_t> group_representative(std::uint32_t l) const;

  /// Mark the start of an iteration (m := size, delta_m := 0).
  void begin_iteration() noexcept;
  std::size_t m() const noexcept { return m_; }
  std::size_t delta_m() const noexcept { return delta_m_; }
  std::uint64_t subdivisions() const noexcept { return subdivisions_; }

  /// Trisect box t perpendicular to its longest side. The strong guarantee
  /// holds: if get_value throws or the depth cap is hit, nothing changes.
  Subdivision subdivide(std::uint32_t t, const VertexValueProvider& get_value);

  /// Ids of every live box whose closure contains the vertex.
  std::vector<std::uint32_t> locate(const Vertex& x) const;

 private:
  struct Node {
    std::uint32_t interval_id = 0;
    std::int32_t first_child = -1;  // children are stored consecutively
  };

  TernaryCoord node_lower(std::size_t node, std::size_t j) const {
    return node_bounds_[node * 2 * dimension_ + j];
  }
  TernaryCoord node_upper(std::size_t node, std::size_t j) const {
    return node_bounds_[node * 2 * dimension_ + dimension_ + j];
  }
  std::size_t push_node(const Hyperinterval& h);
  void insert_into_group(const Hyperinterval& h);
  void erase_from_group(const Hyperinterval& h);

  std::size_t dimension_;
  int max_depth_;
  std::vector<Hyperinterval> intervals_;
  std::vector<std::set<std::pair<double, std::uint32_t>>> groups_;
  std::uint32_t q_ = 0;
  std::uint32_t Q_ = 0;
  std::size_t m_ = 0;
  std::size_t delta_m_ = 0;
  std::uint64_t subdivisions_ = 0;

  std::vector<Node> nodes_;
  std::vector<TernaryCoord> node_bounds_;
  std::vector<std::uint32_t> leaf_of_;  // interval id -> node
};

}  // namespace adc
