#pragma once

#include <unordered_map>

#include "adc/core.hpp"
#include "adc/geometry.hpp"

namespace adc {

/// Memo of objective values keyed by exact vertex coordinates. A vertex is
/// evaluated at most once per database; entries are never evicted.
class VertexDatabase {
 public:
  /// Returns the stored value, or evaluates through adc::evaluate and stores
  /// it. Evaluation errors propagate and leave the database unchanged.
  double get_or_evaluate(const Vertex& p, const ProblemInstance& problem,
                         EvaluationCounter& counter);

  std::optional<double> find(const Vertex& p) const;
  std::size_t size() const noexcept { return values_.size(); }
  bool contains(const Vertex& p) const { return values_.contains(p); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [vertex, value] : values_) fn(vertex, value);
  }

 private:
  std::unordered_map<Vertex, double, VertexHash> values_;
};

}  // namespace adc
