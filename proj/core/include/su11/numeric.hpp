#pragma once

#include <cstddef>
#include <span>

namespace su11 {

// Pairwise (tree) summation with a fixed split, so results do not depend on who calls it.
template <class F>
double pairwise_sum(std::size_t begin, std::size_t end, F&& term) {
  if (end - begin <= 8) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

inline double pairwise_sum(std::span<const double> v) {
  return pairwise_sum(0, v.size(), [&](std::size_t i) { return v[i]; });
}

}  // namespace su11
