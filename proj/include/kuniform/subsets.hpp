#pragma once

#include <vector>

namespace kuniform {

/// All k-subsets of {0, ..., n-1} in lexicographic order.
inline std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// Sorted complement of a sorted subset of {0, ..., n-1}.
inline std::vector<int> complement(int n, const std::vector<int>& subset) {
  std::vector<int> out;
  std::size_t s = 0;
  for (int i = 0; i < n; ++i) {
    if (s < subset.size() && subset[s] == i) {
      ++s;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace kuniform
