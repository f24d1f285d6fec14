#pragma once

// seeded generators for gadget inputs shared by the unit and acceptance tests

#include <numeric>

#include "caristi/gadgets.hpp"

namespace testgen {

// grow a random binary tree by repeatedly extending a random existing node
inline caristi::FiniteTree random_binary_tree(caristi::SampleRng& rng, std::size_t max_depth,
                                              std::size_t grow_steps) {
  std::vector<caristi::TreeNode> nodes{{}};
  for (std::size_t s = 0; s < grow_steps; ++s) {
    caristi::TreeNode child = nodes[rng.below(nodes.size())];
    if (child.size() >= max_depth) continue;
    child.push_back(static_cast<std::uint32_t>(rng.coin()));
    nodes.push_back(std::move(child));
  }
  return caristi::FiniteTree(std::move(nodes));
}

// random permutation of {0..n-1} as an injection table
inline caristi::InjectionTable random_permutation(caristi::SampleRng& rng, std::size_t n) {
  std::vector<std::uint64_t> vals(n);
  std::iota(vals.begin(), vals.end(), 0);
  for (std::size_t i = n; i-- > 1;) std::swap(vals[i], vals[rng.below(i + 1)]);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::size_t m = 0; m < n; ++m) pairs.push_back({m, vals[m]});
  return caristi::InjectionTable(std::move(pairs));
}

}  // namespace testgen
