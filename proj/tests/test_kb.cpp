#include "caristi/kb.hpp"

#include <set>

#include "caristi/rng.hpp"
#include "doctest.h"

using namespace caristi;
using Seq = std::vector<std::uint32_t>;

TEST_CASE("kb order: extensions first, then leftmost") {
  CHECK(kb_compare({0}, {}) == -1);   // proper extension comes first
  CHECK(kb_compare({}, {0}) == 1);
  CHECK(kb_compare({0}, {1}) == -1);  // smaller digit first
  CHECK(kb_compare({1}, {0}) == 1);
  CHECK(kb_compare({0, 5}, {1}) == -1);
  CHECK(kb_compare({1, 0}, {0, 9, 9}) == 1);
  CHECK(kb_compare({2, 3}, {2, 3}) == 0);
  CHECK(kb_compare({2, 3, 0}, {2, 3}) == -1);
}

TEST_CASE("the fixed linearization example") {
  auto sorted = kb_sort({{}, {0}, {1}});
  REQUIRE(sorted.size() == 3);
  CHECK(sorted[0] == Seq{0});
  CHECK(sorted[1] == Seq{1});
  CHECK(sorted[2] == Seq{});  // the root is the greatest element
}

TEST_CASE("kb is a linear order on random node sets") {
  SampleRng rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    std::set<Seq> nodes{{}};
    while (nodes.size() < 50) {
      Seq s;
      std::size_t len = rng.below(6);
      for (std::size_t i = 0; i < len; ++i) s.push_back(static_cast<std::uint32_t>(rng.below(4)));
      // keep downward closure so the set is an actual tree
      for (std::size_t k = 0; k <= s.size(); ++k) nodes.insert(Seq(s.begin(), s.begin() + k));
    }
    std::vector<Seq> v(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) {
        int ij = kb_compare(v[i], v[j]);
        CHECK(ij == -kb_compare(v[j], v[i]));           // antisymmetry
        CHECK((ij == 0) == (v[i] == v[j]));             // totality
        if (ij == 0) continue;
        for (std::size_t k = 0; k < v.size(); ++k) {    // transitivity
          if (kb_compare(v[i], v[j]) < 0 && kb_compare(v[j], v[k]) < 0)
            CHECK(kb_compare(v[i], v[k]) < 0);
        }
        // the empty sequence tops everything
        if (!v[i].empty()) CHECK(kb_compare(v[i], Seq{}) == -1);
      }
    auto sorted = kb_sort(v);
    CHECK(sorted.back() == Seq{});
    for (std::size_t i = 1; i < sorted.size(); ++i)
      CHECK(kb_compare(sorted[i - 1], sorted[i]) == -1);
  }
}
