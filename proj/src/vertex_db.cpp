#include "adc/vertex_db.hpp"

namespace adc {

double VertexDatabase::get_or_evaluate(const Vertex& p, const ProblemInstance& problem,
                                       EvaluationCounter& counter) {
  if (auto it = values_.find(p); it != values_.end()) {
    ++counter.db_hits;
    return it->second;
  }
  const Point x = p.to_point();
  const double value = evaluate(problem, x, counter);
  values_.emplace(p, value);
  return value;
}

std::optional<double> VertexDatabase::find(const Vertex& p) const {
  if (auto it = values_.find(p); it != values_.end()) return it->second;
  return std::nullopt;
}

}  // namespace adc
