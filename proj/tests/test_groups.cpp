#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "matchfield/groups.hpp"

using namespace matchfield::groups;

namespace {

// Recompute the edge predicate independently of find_matching.
bool has_edge(const GroupDescriptor& g, const GroupSubset& A,
              const GroupElement& a, const GroupElement& b) {
  return !A.contains(add(g, a, b));
}

}  // namespace

TEST_CASE("find_matching produces a verifiable bijection on Z5") {
  GroupDescriptor z5 = GroupDescriptor::cyclic(5);
  GroupSubset A = GroupSubset::of(z5, {{1}, {2}});
  GroupSubset B = GroupSubset::of(z5, {{1}, {3}});
  GroupMatchingResult r = find_matching(A, B, z5);
  REQUIRE(r.bijection.has_value());
  CHECK(*r.bijection == std::vector<size_t>{1, 0});  // 1->3, 2->1
  for (size_t i = 0; i < A.size(); ++i)
    CHECK(has_edge(z5, A, A.elements[i], B.elements[(*r.bijection)[i]]));
}

TEST_CASE("find_matching surfaces a Hall violator on Z4") {
  GroupDescriptor z4 = GroupDescriptor::cyclic(4);
  GroupSubset A = GroupSubset::of(z4, {{0}, {2}});
  GroupSubset B = GroupSubset::of(z4, {{1}, {2}});
  GroupMatchingResult r = find_matching(A, B, z4);
  CHECK_FALSE(r.bijection.has_value());
  REQUIRE_FALSE(r.deficient.empty());
  // The reported set must genuinely out-number its joint neighborhood.
  std::set<size_t> neighborhood;
  for (size_t i : r.deficient) {
    REQUIRE(i < A.size());
    for (size_t j = 0; j < B.size(); ++j)
      if (has_edge(z4, A, A.elements[i], B.elements[j])) neighborhood.insert(j);
  }
  CHECK(neighborhood.size() < r.deficient.size());
}

TEST_CASE("an identity element in B starves its partners") {
  GroupDescriptor z5 = GroupDescriptor::cyclic(5);
  GroupSubset A = GroupSubset::of(z5, {{1}, {2}});
  GroupSubset B = GroupSubset::of(z5, {{0}, {1}});
  GroupMatchingResult r = find_matching(A, B, z5);
  CHECK_FALSE(r.bijection.has_value());
  // 1+0 and 1+1 both land in A, so A-index 0 is isolated.
  CHECK(r.deficient == std::vector<size_t>{0});
}

TEST_CASE("free abelian matchings over integer tuples") {
  GroupDescriptor z1 = GroupDescriptor::free_abelian(1);
  GroupMatchingResult r1 = find_matching(GroupSubset::of(z1, {{0}}),
                                         GroupSubset::of(z1, {{1}}), z1);
  REQUIRE(r1.bijection.has_value());
  CHECK(*r1.bijection == std::vector<size_t>{0});

  GroupDescriptor z2 = GroupDescriptor::free_abelian(2);
  GroupSubset A = GroupSubset::of(z2, {{0, 0}, {1, 0}});
  GroupSubset B = GroupSubset::of(z2, {{0, 1}, {1, 0}});
  GroupMatchingResult r2 = find_matching(A, B, z2);
  REQUIRE(r2.bijection.has_value());
  for (size_t i = 0; i < A.size(); ++i)
    CHECK(has_edge(z2, A, A.elements[i], B.elements[(*r2.bijection)[i]]));
  // (0,0) + (1,0) = (1,0) stays in A, so that edge is forbidden.
  CHECK(*r2.bijection == std::vector<size_t>{0, 1});
}

TEST_CASE("descriptor and subset validation") {
  CHECK_THROWS_AS(GroupDescriptor::cyclic(0), std::invalid_argument);
  CHECK_THROWS_AS(GroupDescriptor::free_abelian(0), std::invalid_argument);
  CHECK(GroupDescriptor::cyclic(4).name() == "Z4");
  CHECK(GroupDescriptor::free_abelian(2).name() == "Z^2");

  GroupDescriptor z5 = GroupDescriptor::cyclic(5);
  CHECK_THROWS_AS(GroupSubset::of(z5, {{1}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupSubset::of(z5, {{7}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupSubset::of(z5, {{1, 2}}), std::invalid_argument);
  GroupDescriptor z2 = GroupDescriptor::free_abelian(2);
  CHECK_THROWS_AS(GroupSubset::of(z2, {{1}}), std::invalid_argument);

  GroupSubset sorted = GroupSubset::of(z5, {{3}, {1}});
  CHECK(sorted.elements == std::vector<GroupElement>{{1}, {3}});

  CHECK_THROWS_AS(find_matching(GroupSubset::of(z5, {{1}}),
                                GroupSubset::of(z5, {{1}, {2}}), z5),
                  std::invalid_argument);
}

TEST_CASE("matching_property_scan separates prime and composite moduli") {
  ScanReport z5 = matching_property_scan(GroupDescriptor::cyclic(5), 3);
  CHECK_FALSE(z5.counterexample.has_value());
  CHECK(z5.pairs_scanned > 0);
  CHECK(z5.matched == z5.pairs_scanned);
  CHECK(z5.b2b_checked > 0);
  CHECK(z5.b2b_failures == 0);

  ScanReport z4 = matching_property_scan(GroupDescriptor::cyclic(4), 2);
  REQUIRE(z4.counterexample.has_value());
  CHECK(z4.counterexample->A.elements ==
        std::vector<GroupElement>{{0}, {2}});
  CHECK(z4.counterexample->B.elements ==
        std::vector<GroupElement>{{1}, {2}});
  CHECK(z4.matched < z4.pairs_scanned);
  CHECK(z4.b2b_failures == 0);
  GroupDescriptor g4 = GroupDescriptor::cyclic(4);
  CHECK_FALSE(
      find_matching(z4.counterexample->A, z4.counterexample->B, g4).bijection);

  ScanReport z6 = matching_property_scan(GroupDescriptor::cyclic(6), 2);
  REQUIRE(z6.counterexample.has_value());
  GroupDescriptor g6 = GroupDescriptor::cyclic(6);
  CHECK_FALSE(
      find_matching(z6.counterexample->A, z6.counterexample->B, g6).bijection);
  CHECK(z6.b2b_failures == 0);
}

TEST_CASE("matching_property_scan refuses unenumerable groups") {
  CHECK_THROWS_AS(matching_property_scan(GroupDescriptor::free_abelian(1), 2),
                  matchfield::GuardExceeded);
}
