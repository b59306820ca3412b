#include <catch2/catch_amalgamated.hpp>

#include "adjointforge/small_set.hpp"

using namespace adjointforge;

TEST_CASE("bit helpers") {
  set64 s = bits::from_elements({0, 3, 5});
  CHECK(bits::count(s) == 3);
  CHECK(bits::contains(s, 3));
  CHECK(!bits::contains(s, 1));
  CHECK(bits::elements(s) == std::vector<int>{0, 3, 5});
  CHECK(bits::subset(bits::from_elements({0, 5}), s));
  CHECK(!bits::subset(bits::from_elements({0, 1}), s));
  CHECK(bits::lowest(s) == 0);
  CHECK(bits::full(3) == 7);
}

TEST_CASE("subset iteration covers the powerset") {
  set64 mask = bits::from_elements({1, 2, 4});
  std::vector<set64> seen;
  bits::for_each_subset(mask, [&](set64 s) { seen.push_back(s); });
  std::sort(seen.begin(), seen.end());
  CHECK(seen.size() == 8);
  for (set64 s : seen) CHECK(bits::subset(s, mask));
}

TEST_CASE("k-subset iteration is ordered and complete") {
  std::vector<set64> seen;
  bits::for_each_ksubset(5, 2, [&](set64 s) { seen.push_back(s); });
  CHECK(seen.size() == 10);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
  for (set64 s : seen) CHECK(bits::count(s) == 2);
}

TEST_CASE("set family canonical order and antichain extraction") {
  SetFamily f(4, {bits::from_elements({0, 1}), bits::from_elements({0}), bits::from_elements({0, 1}),
                  bits::from_elements({2, 3}), 0});
  CHECK(f.size() == 4);  // duplicate dropped
  CHECK(std::is_sorted(f.members().begin(), f.members().end()));
  CHECK(f.minimal_members().members() == std::vector<set64>{0});
  SetFamily maxs = f.maximal_members();
  CHECK(maxs.size() == 2);
  CHECK(maxs.contains(bits::from_elements({0, 1})));
  CHECK(maxs.contains(bits::from_elements({2, 3})));
  CHECK(!f.is_downward_closed());
  CHECK(f.downward_closure().is_downward_closed());
}
