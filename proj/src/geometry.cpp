#include "adc/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adc {

namespace {

constexpr std::array<std::uint64_t, 41> make_pow3() {
  std::array<std::uint64_t, 41> t{};
  t[0] = 1;
  for (std::size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] * 3;
  return t;
}

constexpr auto kPow3 = make_pow3();

// Number of trailing base-3 zeros of ticks, capped at kMaxDepth.
int trailing_threes(std::uint64_t ticks) {
  if (ticks == 0) return TernaryCoord::kMaxDepth;
  int k = 0;
  while (k < TernaryCoord::kMaxDepth && ticks % 3 == 0) {
    ticks /= 3;
    ++k;
  }
  return k;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t pow3(int k) {
  if (k < 0 || k > TernaryCoord::kMaxDepth) throw std::out_of_range("pow3 exponent");
  return kPow3[static_cast<std::size_t>(k)];
}

TernaryCoord TernaryCoord::from_fraction(std::uint64_t n, int h) {
  if (h < 0) throw std::invalid_argument("negative ternary depth");
  if (h > kMaxDepth)
    throw CapacityError("ternary depth " + std::to_string(h) + " exceeds " +
                        std::to_string(kMaxDepth));
  if (n > kPow3[static_cast<std::size_t>(h)])
    throw std::invalid_argument("ternary coordinate above 1");
  return TernaryCoord(n * kPow3[static_cast<std::size_t>(kMaxDepth - h)]);
}

int TernaryCoord::depth() const noexcept {
  if (ticks_ == 0) return 0;
  return kMaxDepth - trailing_threes(ticks_);
}

std::uint64_t TernaryCoord::numerator() const noexcept {
  return ticks_ / kPow3[static_cast<std::size_t>(kMaxDepth - depth())];
}

Point Vertex::to_point() const {
  Point p(coords.size());
  for (std::size_t j = 0; j < coords.size(); ++j) p[j] = coords[j].value();
  return p;
}

std::size_t VertexHash::operator()(const Vertex& v) const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (const auto& c : v.coords) h = splitmix(h ^ c.ticks());
  return static_cast<std::size_t>(h);
}

int Hyperinterval::side_depth(std::size_t j) const {
  const std::uint64_t side = side_ticks(j);
  if (side == 0) throw std::logic_error("degenerate hyperinterval side");
  return TernaryCoord::kMaxDepth - trailing_threes(side);
}

int Hyperinterval::total_depth() const {
  int s = 0;
  for (std::size_t j = 0; j < dimension(); ++j) s += side_depth(j);
  return s;
}

std::size_t longest_side_index(const Hyperinterval& h) {
  std::size_t best = 0;
  std::uint64_t best_len = 0;
  for (std::size_t j = 0; j < h.dimension(); ++j) {
    const std::uint64_t len = h.side_ticks(j);
    if (len > best_len) {
      best_len = len;
      best = j;
    }
  }
  return best;
}

DiagramPoint diagram_point(const Hyperinterval& h) {
  if (h.a == h.b) throw std::logic_error("degenerate hyperinterval: a == b");
  double sq = 0.0;
  for (std::size_t j = 0; j < h.dimension(); ++j) {
    const double side = h.b.coords[j].value() - h.a.coords[j].value();
    sq += side * side;
  }
  return {0.5 * std::sqrt(sq), h.mean_value(), h.group, h.id};
}

double group_diagonal(std::uint32_t l, std::size_t dimension) {
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
  const auto n = static_cast<std::uint32_t>(dimension);
  const std::uint32_t m = l / n;
  const std::uint32_t r = l % n;
  return std::pow(3.0, -static_cast<double>(m)) *
         std::sqrt(static_cast<double>(n - r) + static_cast<double>(r) / 9.0);
}

Partition::Partition(std::size_t dimension, double f_lower_corner, double f_upper_corner,
                     int max_depth)
    : dimension_(dimension), max_depth_(max_depth) {
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
  if (max_depth < 1 || max_depth > TernaryCoord::kMaxDepth)
    throw std::invalid_argument("max_depth must lie in [1, 40]");
  Hyperinterval root;
  root.id = 0;
  root.a.coords.assign(dimension, TernaryCoord::zero());
  root.b.coords.assign(dimension, TernaryCoord::one());
  root.group = 0;
  root.f_a = f_lower_corner;
  root.f_b = f_upper_corner;
  intervals_.push_back(root);
  insert_into_group(root);
  leaf_of_.push_back(static_cast<std::uint32_t>(push_node(root)));
  m_ = 1;
}

std::size_t Partition::group_size(std::uint32_t l) const {
  return l < groups_.size() ? groups_[l].size() : 0;
}

const std::set<std::pair<double, std::uint32_t>>& Partition::group_members(
    std::uint32_t l) const {
  static const std::set<std::pair<double, std::uint32_t>> empty;
  return l < groups_.size() ? groups_[l] : empty;
}

std::optional<std::uint32_t> Partition::group_representative(std::uint32_t l) const {
  if (l >= groups_.size() || groups_[l].empty()) return std::nullopt;
  return groups_[l].begin()->second;
}

void Partition::begin_iteration() noexcept {
  m_ = intervals_.size();
  delta_m_ = 0;
}

void Partition::insert_into_group(const Hyperinterval& h) {
  if (groups_.size() <= h.group) groups_.resize(h.group + 1);
  groups_[h.group].emplace(h.mean_value(), h.id);
}

void Partition::erase_from_group(const Hyperinterval& h) {
  groups_[h.group].erase({h.mean_value(), h.id});
}

std::size_t Partition::push_node(const Hyperinterval& h) {
  nodes_.push_back({h.id, -1});
  for (std::size_t j = 0; j < dimension_; ++j) node_bounds_.push_back(h.lower(j));
  for (std::size_t j = 0; j < dimension_; ++j) node_bounds_.push_back(h.upper(j));
  return nodes_.size() - 1;
}

Trisection trisect(const Vertex& a, const Vertex& b, int max_depth) {
  if (a.dimension() != b.dimension() || a.dimension() == 0)
    throw std::invalid_argument("diagonal end points differ in dimension");
  Hyperinterval box;
  box.a = a;
  box.b = b;
  const std::size_t i = longest_side_index(box);
  const int child_depth = box.side_depth(i) + 1;
  if (child_depth > max_depth)
    throw CapacityError("trisection needs ternary depth " + std::to_string(child_depth) +
                        " (cap " + std::to_string(max_depth) + ")");

  const std::uint64_t ai = a.coords[i].ticks();
  const std::uint64_t bi = b.coords[i].ticks();
  const std::uint64_t third = (bi > ai ? bi - ai : ai - bi) / 3;
  Trisection t{i, a, b};
  if (bi > ai) {
    t.u.coords[i] = TernaryCoord::from_ticks(ai + 2 * third);
    t.v.coords[i] = TernaryCoord::from_ticks(bi - 2 * third);
  } else {
    t.u.coords[i] = TernaryCoord::from_ticks(ai - 2 * third);
    t.v.coords[i] = TernaryCoord::from_ticks(bi + 2 * third);
  }
  return t;
}

Subdivision Partition::subdivide(std::uint32_t t, const VertexValueProvider& get_value) {
  const Hyperinterval parent = intervals_.at(t);
  Trisection cut;
  try {
    cut = trisect(parent.a, parent.b, max_depth_);
  } catch (const CapacityError&) {
    throw CapacityError("subdividing interval " + std::to_string(t) +
                        " exceeds the ternary depth cap " + std::to_string(max_depth_));
  }

  Subdivision out;
  out.parent = t;
  out.split_dimension = cut.dimension;
  out.u = std::move(cut.u);
  out.v = std::move(cut.v);

  out.f_u = get_value(out.u);
  out.f_v = get_value(out.v);

  const auto fresh = static_cast<std::uint32_t>(intervals_.size());
  const std::uint32_t g = parent.group + 1;
  Hyperinterval middle{t, out.u, out.v, g, out.f_u, out.f_v};
  Hyperinterval first{fresh, parent.a, out.v, g, parent.f_a, out.f_v};
  Hyperinterval last{fresh + 1, out.u, parent.b, g, out.f_u, parent.f_b};

  erase_from_group(parent);
  intervals_[t] = middle;
  intervals_.push_back(first);
  intervals_.push_back(last);
  insert_into_group(middle);
  insert_into_group(first);
  insert_into_group(last);

  const std::size_t parent_node = leaf_of_[t];
  nodes_[parent_node].first_child = static_cast<std::int32_t>(nodes_.size());
  leaf_of_[t] = static_cast<std::uint32_t>(push_node(middle));
  leaf_of_.push_back(static_cast<std::uint32_t>(push_node(first)));
  leaf_of_.push_back(static_cast<std::uint32_t>(push_node(last)));

  while (groups_[q_].empty()) ++q_;
  Q_ = std::max(Q_, g);
  delta_m_ += 2;
  ++subdivisions_;

  out.children = {t, fresh, fresh + 1};
  return out;
}

std::vector<std::uint32_t> Partition::locate(const Vertex& x) const {
  if (x.dimension() != dimension_) throw std::invalid_argument("vertex has wrong dimension");
  std::vector<std::uint32_t> found;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    bool inside = true;
    for (std::size_t j = 0; j < dimension_ && inside; ++j) {
      inside = node_lower(node, j) <= x.coords[j] && x.coords[j] <= node_upper(node, j);
    }
    if (!inside) continue;
    const auto first = nodes_[node].first_child;
    if (first < 0) {
      found.push_back(nodes_[node].interval_id);
    } else {
      for (std::size_t c = 0; c < 3; ++c) stack.push_back(static_cast<std::size_t>(first) + c);
    }
  }
  return found;
}

}  // namespace adc
