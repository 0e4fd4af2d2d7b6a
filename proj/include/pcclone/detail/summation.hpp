#pragma once

#include <cstddef>
#include <span>

namespace pcclone::detail {

// Pairwise (cascade) summation: O(log n) error growth and a fixed,
// input-order-determined association, so results are bit-stable.
template <typename T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace pcclone::detail
