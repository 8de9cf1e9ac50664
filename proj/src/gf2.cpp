#include "orient/gf2.hpp"

#include <utility>

namespace orient {

std::size_t gf2_rank(std::vector<Gf2Vector> rows) {
  Gf2Eliminator elim;
  for (auto& row : rows) elim.insert(std::move(row));
  return elim.rank();
}

Gf2Vector Gf2Eliminator::reduce(Gf2Vector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v.test(pivots_[i])) v ^= rows_[i];
  return v;
}

bool Gf2Eliminator::insert(Gf2Vector v) {
  v = reduce(std::move(v));
  if (!v.any()) return false;
  const auto pivot = v.lowest();
  // Keep rows fully reduced so reduce() can run in a single pass.
  for (auto& row : rows_)
    if (row.test(pivot)) row ^= v;
  rows_.push_back(std::move(v));
  pivots_.push_back(pivot);
  return true;
}

bool Gf2Eliminator::in_span(Gf2Vector v) const { return !reduce(std::move(v)).any(); }

}  // namespace orient
