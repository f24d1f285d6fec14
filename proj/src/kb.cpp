#include "caristi/kb.hpp"

#include <algorithm>

namespace caristi {

int kb_compare(const std::vector<std::uint32_t>& s, const std::vector<std::uint32_t>& t) {
  std::size_t n = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] < t[i]) return -1;
    if (t[i] < s[i]) return 1;
  }
  if (s.size() > t.size()) return -1;  // proper extensions come first
  if (s.size() < t.size()) return 1;
  return 0;
}

std::vector<std::vector<std::uint32_t>> kb_sort(std::vector<std::vector<std::uint32_t>> nodes) {
  std::sort(nodes.begin(), nodes.end(),
            [](const auto& a, const auto& b) { return kb_compare(a, b) < 0; });
  return nodes;
}

}  // namespace caristi
