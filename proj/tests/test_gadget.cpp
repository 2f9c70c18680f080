#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sunflower/enumerate.hpp"
#include "sunflower/gadget.hpp"

using namespace sunflower;

TEST_CASE("cantor pairing is a bijection on a sampled range") {
  for (std::uint64_t a = 0; a < 40; ++a) {
    for (std::uint64_t b = 0; b < 40; ++b) {
      auto [x, y] = cantor_unpair(cantor_pair(a, b));
      CHECK(x == a);
      CHECK(y == b);
    }
  }
  for (std::uint64_t z = 0; z < 500; ++z) {
    auto [a, b] = cantor_unpair(z);
    CHECK(cantor_pair(a, b) == z);
  }
}

TEST_CASE("cantor pairing reports overflow") {
  CHECK_THROWS_MATCHES(cantor_pair(std::uint64_t(1) << 33, std::uint64_t(1) << 33), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("Overflow")));
}

TEST_CASE("eset encodes the spine plus one tip") {
  CHECK(eset(2, 5) == FiniteSet{0, 2, 5, 30});
  CHECK(eset(0, 0) == FiniteSet{0});
  CHECK(eset(1, 0) == FiniteSet{0, 2});  // the m=0 tip lands on the spine
  CHECK(eset(0, 3) == FiniteSet{0, 6});
}

TEST_CASE("eset is injective for nonzero tips") {
  std::vector<FiniteSet> seen;
  for (std::uint64_t n = 0; n < 8; ++n) {
    for (std::uint64_t m = 1; m < 8; ++m) {
      FiniteSet s = eset(n, m);
      CHECK(std::find(seen.begin(), seen.end(), s) == seen.end());
      seen.push_back(s);
    }
  }
}

TEST_CASE("distinct esets intersect in the lower backbone set") {
  CHECK(e_intersection(2, 5, 3, 7) == eset(2, 0));
  CHECK(e_intersection(4, 1, 4, 9) == eset(4, 0));
  CHECK(e_intersection(0, 3, 1, 3) == FiniteSet{0});

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint64_t> dist(0, 12);
  int checked = 0;
  while (checked < 200) {
    std::uint64_t n = dist(rng), m = dist(rng), n2 = dist(rng), m2 = dist(rng);
    if (eset(n, m) == eset(n2, m2)) continue;
    CHECK(e_intersection(n, m, n2, m2) == eset(std::min(n, n2), 0));
    ++checked;
  }
}

TEST_CASE("row evaluation and ranges") {
  FnTable t{{RowSpec::identity(), RowSpec::mod(3), RowSpec::const_after(2, 7),
             RowSpec::explicit_pairs({{0, 5}, {1, 5}}), RowSpec::undefined()}};
  CHECK(row_range(t, 0) == Cardinality::infinite());
  CHECK(row_range(t, 1) == Cardinality::finite(3));
  CHECK(row_range(t, 2) == Cardinality::finite(3));  // values {0,1,7}
  CHECK(row_range(t, 3) == Cardinality::finite(1));
  CHECK(row_range(t, 4) == Cardinality::finite(0));
  CHECK(row_range(t, 99) == Cardinality::finite(0));  // rows beyond the table diverge

  CHECK(t.rows[1].eval(7) == 1);
  CHECK(t.rows[2].eval(1) == 1);
  CHECK(t.rows[2].eval(5) == 7);
  CHECK(t.rows[3].eval(1) == 5);
  CHECK_FALSE(t.rows[3].eval(2).has_value());
  CHECK_FALSE(t.rows[4].eval(0).has_value());
}

TEST_CASE("gadget enumeration is staged with duplicates suppressed") {
  Budget b;
  FnTable undefined_only{{RowSpec::undefined()}};
  Enumeration backbone = enumerate_family(gadget_family(undefined_only), 5, b);
  for (std::size_t n = 0; n < 5; ++n) CHECK(backbone.members[n] == eset(n, 0));

  FnTable identity{{RowSpec::identity()}};
  Enumeration with_row = enumerate_family(gadget_family(identity), 20, b);
  // row 0 contributes E(0, m) for every m
  int tips = 0;
  for (const auto& s : with_row.members) {
    if (s.size() == 2 && s.contains(0) && !(s == eset(1, 0))) ++tips;
  }
  CHECK(tips >= 4);

  FnTable mod2{{RowSpec::mod(2)}};
  Budget b2(10000);
  Enumeration bounded = enumerate_family(gadget_family(mod2), 40, b2);
  int row0 = 0;
  for (const auto& s : bounded.members) {
    if (s == eset(0, 0) || s == eset(0, 1)) ++row0;
    if (s.size() <= 2 && s.contains(0)) {
      CHECK((s == eset(0, 0) || s == eset(0, 1) || s == eset(1, 0)));
    }
  }
  CHECK(row0 == 2);  // range {0,1} only
}

TEST_CASE("truncate_gadget materializes the staged prefix") {
  FnTable identity{{RowSpec::identity()}};
  FiniteFamily b20 = truncate_gadget(identity, 20);
  CHECK(b20.contains(eset(0, 0)));
  CHECK(b20.contains(eset(20, 0)));
  CHECK(b20.contains(eset(0, 5)));     // stage pi(0,5) = 20
  CHECK_FALSE(b20.contains(eset(0, 6)));
  Budget b;
  // the truncation is a prefix-closed subset of the spec's enumeration
  Enumeration stream = enumerate_family(gadget_family(identity), b20.size(), b);
  for (const auto& m : stream.members) CHECK(b20.contains(m));
}

TEST_CASE("verify_claim on all-finite tables") {
  FnTable t{{RowSpec::mod(2), RowSpec::explicit_pairs({{0, 5}, {1, 5}})}};
  GadgetReport report = verify_claim(t, 20);
  CHECK(report.classification_expected == 1);
  CHECK(report.classification_actual == 1);
  CHECK(report.max_sunflower_truncated <= 4);
  CHECK(report.bound_limit == 4);
  CHECK(report.within_bound);
  CHECK_FALSE(report.witness_core.has_value());
}

TEST_CASE("verify_claim with an identity row") {
  FnTable t{{RowSpec::identity()}};
  GadgetReport report = verify_claim(t, 20);
  CHECK(report.classification_expected == 2);
  CHECK(report.classification_actual == 2);
  REQUIRE(report.witness_core.has_value());
  CHECK(*report.witness_core == eset(0, 0));
}

TEST_CASE("verify_claim on empty rows") {
  FnTable t{{RowSpec::undefined(), RowSpec::undefined()}};
  GadgetReport report = verify_claim(t, 10);
  CHECK(report.classification_expected == 1);
  CHECK(report.classification_actual == 1);
  CHECK(report.max_sunflower_truncated == 2);  // backbone pairs only
  CHECK(report.per_row_range[0] == Cardinality::finite(0));
}

TEST_CASE("identity-row truncations grow strictly") {
  FnTable t{{RowSpec::identity()}};
  GadgetReport r20 = verify_claim(t, 20);
  GadgetReport r40 = verify_claim(t, 40);
  GadgetReport r80 = verify_claim(t, 80);
  CHECK(r20.max_sunflower_truncated < r40.max_sunflower_truncated);
  CHECK(r40.max_sunflower_truncated < r80.max_sunflower_truncated);
}
