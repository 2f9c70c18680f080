#include <catch2/catch_amalgamated.hpp>

#include "sunflower/enumerate.hpp"
#include "sunflower/family_spec.hpp"
#include "sunflower/finite_lemma.hpp"
#include "sunflower/oracles.hpp"

using namespace sunflower;

namespace {

std::vector<FiniteSet> first(const FamilySpec& f, std::uint64_t k,
                             std::uint64_t budget = Budget::kDefault) {
  Budget b(budget);
  return enumerate_family(f, k, b).members.members();
}

}  // namespace

TEST_CASE("parse_spec builds the expected nodes") {
  CHECK(parse_spec("matching(2)").kind() == FamilySpec::Kind::matching);
  CHECK(parse_spec("matching(2)").param() == 2);

  FamilySpec u = parse_spec("union(star({0}), initial_segments)");
  REQUIRE(u.kind() == FamilySpec::Kind::union_families);
  CHECK(u.left().kind() == FamilySpec::Kind::star);
  CHECK(u.left().center() == FiniteSet{0});
  CHECK(u.right().kind() == FamilySpec::Kind::initial_segments);

  FamilySpec l = parse_spec("link(0, slice(2, initial_segments))");
  REQUIRE(l.kind() == FamilySpec::Kind::link);
  CHECK(l.param() == 0);
  CHECK(l.inner().kind() == FamilySpec::Kind::slice);
  CHECK(l.inner().param() == 2);
  CHECK(l.inner().inner().kind() == FamilySpec::Kind::initial_segments);

  FamilySpec e = parse_spec("explicit{{0,1},{2}}");
  REQUIRE(e.kind() == FamilySpec::Kind::explicit_members);
  CHECK(e.members().size() == 2);

  FamilySpec g = parse_spec("gadget(identity; mod 3; const_after 2 7; explicit[(0,5)(1,5)]; undefined)");
  REQUIRE(g.kind() == FamilySpec::Kind::gadget);
  CHECK(g.table().rows.size() == 5);
}

TEST_CASE("parse round-trips through to_string") {
  for (const char* text :
       {"matching(2)", "union(star({0}),initial_segments)", "link(0,slice(2,initial_segments))",
        "explicit{{0,1},{2}}", "pad(3,matching(2))", "graded_blocks",
        "gadget(identity;mod 3;explicit[(0,5)(1,5)];undefined)", "strip(0,star({0,4}))"}) {
    FamilySpec spec = parse_spec(text);
    CHECK(parse_spec(spec.to_string()).to_string() == spec.to_string());
  }
}

TEST_CASE("parse errors carry positions and kinds") {
  CHECK_THROWS_MATCHES(parse_spec("matchin(2)"), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("SyntaxError")));
  CHECK_THROWS_MATCHES(parse_spec("matching(2"), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("offset")));
  CHECK_THROWS_MATCHES(parse_spec("matching(2,3)"), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("ArityError")));
  CHECK_THROWS_MATCHES(parse_spec("union(matching(2))"), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("ArityError")));
  CHECK_THROWS_MATCHES(parse_spec("matching(0)"), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NonPositiveParameter")));
  CHECK_THROWS_MATCHES(parse_spec("explicit{{0},{0}}"), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("duplicate")));
  CHECK_THROWS_MATCHES(parse_spec("matching(2) trailing"), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("trailing")));
}

TEST_CASE("pad construction validates the size bound") {
  CHECK_THROWS_MATCHES(parse_spec("pad(2, initial_segments)"), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("BoundViolation")));
  CHECK_THROWS_MATCHES(FamilySpec::pad(1, FamilySpec::matching(2)), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("BoundViolation")));
  CHECK_NOTHROW(parse_spec("pad(2, matching(2))"));
  CHECK_NOTHROW(parse_spec("pad(5, slice(3, initial_segments))"));
}

TEST_CASE("enumeration follows the canonical generator orders") {
  CHECK(first(FamilySpec::initial_segments(), 3) ==
        std::vector<FiniteSet>{{0}, {0, 1}, {0, 1, 2}});
  CHECK(first(FamilySpec::graded_blocks(), 3) ==
        std::vector<FiniteSet>{{0, 9}, {0, 2, 15}, {0, 2, 25}});
  CHECK(first(FamilySpec::matching(2), 2) == std::vector<FiniteSet>{{0, 1}, {2, 3}});
  CHECK(first(FamilySpec::star({0}), 3) == std::vector<FiniteSet>{{0, 1}, {0, 2}, {0, 3}});
  // star of the empty set enumerates all singletons from 0
  CHECK(first(FamilySpec::star({}), 3) == std::vector<FiniteSet>{{0}, {1}, {2}});
}

TEST_CASE("union alternates strictly and suppresses duplicates") {
  FamilySpec u = FamilySpec::union_of(FamilySpec::star({0}), FamilySpec::matching(2));
  CHECK(first(u, 5) == std::vector<FiniteSet>{{0, 1}, {0, 2}, {2, 3}, {0, 3}, {4, 5}});
}

TEST_CASE("filters keep the parent order") {
  CHECK(first(parse_spec("link(2, initial_segments)"), 2) ==
        std::vector<FiniteSet>{{0, 1, 2}, {0, 1, 2, 3}});
  CHECK(first(parse_spec("strip(0, star({0}))"), 3) ==
        std::vector<FiniteSet>{{1}, {2}, {3}});
  CHECK(first(parse_spec("slice(2, initial_segments)"), 1) ==
        std::vector<FiniteSet>{{0, 1}});
}

TEST_CASE("stripping never yields the empty set") {
  Budget b(500);
  Enumeration e = enumerate_family(parse_spec("strip(0, matching(1))"), 1, b);
  CHECK(e.members.empty());
  CHECK(e.exhausted);  // the stream cannot prove emptiness by search
  CHECK(member_count(parse_spec("strip(0, matching(1))")) == Cardinality::finite(0));
}

TEST_CASE("enumeration is prefix-stable") {
  for (const char* text : {"initial_segments", "graded_blocks", "matching(3)",
                           "union(star({0}), matching(2))", "pad(3, matching(2))",
                           "link(0, union(star({0}), initial_segments))",
                           "gadget(identity; mod 2)"}) {
    FamilySpec spec = parse_spec(text);
    std::vector<FiniteSet> eight = first(spec, 8);
    std::vector<FiniteSet> nine = first(spec, 9);
    REQUIRE(eight.size() == 8);
    REQUIRE(nine.size() == 9);
    CHECK(std::equal(eight.begin(), eight.end(), nine.begin()));
  }
}

TEST_CASE("enumeration reports budget exhaustion as a flag") {
  Budget b(3);
  Enumeration e = enumerate_family(FamilySpec::initial_segments(), 10, b);
  CHECK(e.members.size() == 3);
  CHECK(e.exhausted);

  Budget enough(10);
  Enumeration full = enumerate_family(parse_spec("explicit{{0},{1}}"), 10, enough);
  CHECK(full.members.size() == 2);
  CHECK_FALSE(full.exhausted);  // the family is complete, not cut off
}

TEST_CASE("member_count closed forms") {
  CHECK(member_count(parse_spec("explicit{{0},{1}}")) == Cardinality::finite(2));
  CHECK(member_count(FamilySpec::initial_segments()) == Cardinality::infinite());
  CHECK(member_count(parse_spec("link(7, matching(2))")) == Cardinality::finite(1));
  CHECK(member_count(parse_spec("union(explicit{{0},{1}}, explicit{{0},{2}})")) ==
        Cardinality::finite(3));
  CHECK(member_count(parse_spec("pad(3, matching(2))")) == Cardinality::infinite());
  CHECK(member_count(FamilySpec::gadget(FnTable{})) == Cardinality::infinite());
  CHECK(member_count(parse_spec("link(0, union(star({0}), initial_segments))")) ==
        Cardinality::infinite());
  // a filter stack over a union resolves by materializing both finite sides
  CHECK(member_count(parse_spec("slice(9, link(0, union(initial_segments, graded_blocks)))")) ==
        Cardinality::finite(9));
}

TEST_CASE("size_class_count closed forms") {
  CHECK(size_class_count(FamilySpec::star({0}), 2) == Cardinality::infinite());
  for (std::uint64_t m = 1; m <= 5; ++m) {
    CHECK(size_class_count(FamilySpec::graded_blocks(), m + 1) == Cardinality::finite(m));
  }
  CHECK(size_class_count(FamilySpec::initial_segments(), 0) == Cardinality::finite(0));
  CHECK(size_class_count(FamilySpec::initial_segments(), 4) == Cardinality::finite(1));
  CHECK(size_class_count(FamilySpec::matching(3), 3) == Cardinality::infinite());
  CHECK(size_class_count(FamilySpec::matching(3), 2) == Cardinality::finite(0));
}

TEST_CASE("point_degree closed forms") {
  CHECK(point_degree(FamilySpec::initial_segments(), 2) == Cardinality::infinite());
  CHECK(point_degree(FamilySpec::matching(2), 3) == Cardinality::finite(1));
  CHECK(point_degree(FamilySpec::star({0}), 0) == Cardinality::infinite());
  CHECK(point_degree(FamilySpec::star({0}), 5) == Cardinality::finite(1));
  CHECK(point_degree(FamilySpec::graded_blocks(), 9) == Cardinality::finite(1));
  CHECK(point_degree(FamilySpec::graded_blocks(), 0) == Cardinality::infinite());
}

TEST_CASE("finite counts agree with enumeration") {
  for (const char* text :
       {"explicit{{0,1},{1,2},{3}}", "link(7, matching(2))", "link(3, graded_blocks)",
        "slice(2, star({0,1}))", "slice(4, link(2, initial_segments))",
        "union(explicit{{0},{1}}, explicit{{1},{2},{3}})", "link(15, graded_blocks)"}) {
    FamilySpec spec = parse_spec(text);
    Cardinality c = member_count(spec);
    REQUIRE(c.is_finite());
    Budget b(50000);
    Enumeration e = enumerate_family(spec, c.count() + 1, b);
    INFO(text);
    CHECK(e.members.size() == c.count());
  }
}

TEST_CASE("infinite size classes agree with enumeration at bounded depth") {
  FamilySpec spec = parse_spec("union(star({0}), matching(2))");
  Cardinality c = size_class_count(spec, 2);
  REQUIRE(c.is_infinite());
  std::vector<FiniteSet> slice_members = first(FamilySpec::slice(2, spec), 12);
  CHECK(slice_members.size() == 12);
  for (const auto& s : slice_members) CHECK(s.size() == 2);
}

TEST_CASE("link, strip and slice semantics hold on enumerated members") {
  FamilySpec base = parse_spec("union(initial_segments, graded_blocks)");
  for (const auto& s : first(FamilySpec::link(2, base), 10)) CHECK(s.contains(2));
  std::vector<FiniteSet> sliced = first(FamilySpec::slice(3, base), 3);
  REQUIRE(sliced.size() == 3);  // [3] plus the two block-2 sets
  for (const auto& s : sliced) CHECK(s.size() == 3);
  std::vector<FiniteSet> stripped = first(FamilySpec::strip(0, base), 10);
  std::vector<FiniteSet> parents = first(FamilySpec::link(0, base), 11);
  // the parent [1] strips to the empty set and is dropped
  std::vector<FiniteSet> expected;
  for (const auto& p : parents) {
    FiniteSet rest = p.without(0);
    if (!rest.empty()) expected.push_back(rest);
  }
  REQUIRE(stripped.size() == 10);
  for (std::size_t i = 0; i < stripped.size(); ++i) {
    CHECK_FALSE(stripped[i].contains(0));
    CHECK(stripped[i] == expected[i]);
  }
}

TEST_CASE("graded blocks intersect in the lower block's core") {
  std::vector<FiniteSet> members = first(FamilySpec::graded_blocks(), 15);  // blocks 1..5
  auto block_of = [](const FiniteSet& s) { return s.size() - 1; };
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      std::uint64_t m = std::min(block_of(members[i]), block_of(members[j]));
      std::vector<Element> core_elements;
      for (std::uint64_t e = 0; e < m; ++e) core_elements.push_back(2 * e);
      if (members[i] == members[j]) continue;
      CHECK(intersect(members[i], members[j]) == FiniteSet(core_elements));
    }
  }
}

TEST_CASE("size classes agree with filtered enumeration for built-ins") {
  std::vector<FiniteSet> graded = first(FamilySpec::graded_blocks(), 50);
  for (std::uint64_t m = 1; m <= 6; ++m) {
    std::uint64_t seen = 0;
    for (const auto& s : graded) {
      if (s.size() == m + 1) ++seen;
    }
    CHECK(seen == size_class_count(FamilySpec::graded_blocks(), m + 1).count());
  }
  std::vector<FiniteSet> segments = first(FamilySpec::initial_segments(), 20);
  std::uint64_t fours = 0;
  for (const auto& s : segments) {
    if (s.size() == 4) ++fours;
  }
  CHECK(fours == size_class_count(FamilySpec::initial_segments(), 4).count());
}

TEST_CASE("parser rejects out-of-range integers") {
  CHECK_THROWS_MATCHES(parse_spec("matching(99999999999999999999999)"), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("out of range")));
}

TEST_CASE("ground truth certification") {
  CHECK(ground_truth_sunflower(FamilySpec::matching(2)) == GroundTruth::yes);
  CHECK(ground_truth_sunflower(FamilySpec::star({0, 1})) == GroundTruth::yes);
  CHECK(ground_truth_sunflower(FamilySpec::initial_segments()) == GroundTruth::no);
  CHECK(ground_truth_sunflower(FamilySpec::graded_blocks()) == GroundTruth::no);
  CHECK(ground_truth_sunflower(parse_spec("explicit{{0},{1,2}}")) == GroundTruth::no);
  CHECK(ground_truth_sunflower(parse_spec("pad(4, matching(3))")) == GroundTruth::yes);
  CHECK(ground_truth_sunflower(parse_spec("pad(2, slice(2, initial_segments))")) ==
        GroundTruth::no);  // finite inner
  CHECK(ground_truth_sunflower(parse_spec("union(matching(2), initial_segments)")) ==
        GroundTruth::yes);
  CHECK(ground_truth_sunflower(parse_spec("union(initial_segments, graded_blocks)")) ==
        GroundTruth::unknown);
  CHECK(ground_truth_sunflower(parse_spec("gadget(mod 4; undefined)")) == GroundTruth::no);
  CHECK(ground_truth_sunflower(parse_spec("gadget(mod 4; identity)")) == GroundTruth::yes);
  CHECK(ground_truth_sunflower(parse_spec("link(0, initial_segments)")) ==
        GroundTruth::unknown);
}

TEST_CASE("graded-block truncations have slowly growing maxima") {
  // the largest sunflower in blocks 1..B is one full block plus one higher
  // member, so the brute-force maximum tracks B instead of exploding
  Budget b;
  Enumeration five_blocks = enumerate_family(FamilySpec::graded_blocks(), 15, b);
  CHECK(max_sunflower_exact(five_blocks.members, 15).size == 5);
  Enumeration six_blocks = enumerate_family(FamilySpec::graded_blocks(), 21, b);
  CHECK(max_sunflower_exact(six_blocks.members, 21).size == 6);
}

TEST_CASE("degree finiteness analysis") {
  CHECK(all_point_degrees_finite(FamilySpec::matching(5)) == Trivalent::yes);
  CHECK(all_point_degrees_finite(FamilySpec::star({0})) == Trivalent::no);
  CHECK(all_point_degrees_finite(FamilySpec::star({})) == Trivalent::yes);
  CHECK(all_point_degrees_finite(FamilySpec::initial_segments()) == Trivalent::no);
  CHECK(all_point_degrees_finite(parse_spec("explicit{{0,1},{0,2}}")) == Trivalent::yes);
  CHECK(all_point_degrees_finite(parse_spec("union(matching(2), matching(3))")) ==
        Trivalent::yes);
  CHECK(all_point_degrees_finite(parse_spec("union(matching(2), star({1}))")) ==
        Trivalent::no);
}
