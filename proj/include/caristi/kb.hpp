#pragma once

#include <cstdint>
#include <vector>

namespace caristi {

// Kleene-Brouwer comparison: s comes before t (returns -1) when s properly
// extends t, or when s is smaller at the first disagreement. The empty
// sequence is the greatest element.
int kb_compare(const std::vector<std::uint32_t>& s, const std::vector<std::uint32_t>& t);

// ascending KB order (leftmost-deepest first, root last)
std::vector<std::vector<std::uint32_t>> kb_sort(std::vector<std::vector<std::uint32_t>> nodes);

}  // namespace caristi
