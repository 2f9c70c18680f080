#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "sunflower/finite_lemma.hpp"

using namespace sunflower;

TEST_CASE("er_bound evaluates k!(t-1)^k") {
  CHECK(er_bound(2, 3) == 8);
  CHECK(er_bound(1, 3) == 2);
  CHECK(er_bound(3, 2) == 6);
  CHECK(er_bound(4, 1) == 0);
  CHECK_THROWS_MATCHES(er_bound(0, 3), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NonPositiveParameter")));
  CHECK_THROWS_MATCHES(er_bound(30, 30), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("Overflow")));
}

TEST_CASE("max_sunflower_exact on the worked examples") {
  FiniteFamily triangles{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  SearchResult two = max_sunflower_exact(triangles);
  CHECK(two.size == 2);
  CHECK(two.exhaustive);

  SearchResult whole = max_sunflower_exact({{0, 1}, {2, 3}, {4, 5}});
  CHECK(whole.size == 3);
  CHECK(whole.witness == FiniteFamily{{0, 1}, {2, 3}, {4, 5}});

  CHECK(max_sunflower_exact({{0}}).size == 1);
  CHECK(max_sunflower_exact(FiniteFamily{}).size == 0);
}

TEST_CASE("max_sunflower_exact honors the guard") {
  std::vector<FiniteSet> many;
  for (Element i = 0; i < 25; ++i) many.push_back({2 * i, 2 * i + 1});
  CHECK_THROWS_MATCHES(max_sunflower_exact(FiniteFamily::from_distinct(many)), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("TooLarge")));
  CHECK(max_sunflower_exact(FiniteFamily::from_distinct(many), 25).size == 25);
}

TEST_CASE("exact search agrees with full subset enumeration") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 120; ++trial) {
    FiniteFamily f = oracles::random_family(rng, 9, 9, 4);
    oracles::NaiveMax expected = oracles::naive_max_sunflower(f);
    SearchResult got = max_sunflower_exact(f);
    REQUIRE(got.size == expected.size);
    CHECK(got.witness.canonicalized() == expected.witness.canonicalized());
  }
}

TEST_CASE("maximal_disjoint is greedy in canonical order") {
  CHECK(maximal_disjoint({{0, 1}, {1, 2}, {2, 3}}) == FiniteFamily{{0, 1}, {2, 3}});
  CHECK(maximal_disjoint({{0}, {1}, {2}}) == FiniteFamily{{0}, {1}, {2}});
  CHECK(maximal_disjoint({{0, 1}, {0, 2}}) == FiniteFamily{{0, 1}});
}

TEST_CASE("erdos_rado_find on the worked examples") {
  // 9 distinct 2-sets exceed the k=2, t=3 bound of 8
  FiniteFamily nine{{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {6, 7}, {6, 8}, {7, 8}};
  auto found = erdos_rado_find(nine, 3);
  REQUIRE(found.has_value());
  CHECK(found->size >= 3);
  CHECK(is_sunflower(found->witness).verdict);
  for (const auto& m : found->witness) CHECK(nine.contains(m));

  FiniteFamily triangles{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  CHECK_FALSE(erdos_rado_find(triangles, 3).has_value());
  CHECK(max_sunflower_exact(triangles).size == 2);

  auto singletons = erdos_rado_find({{0}, {1}, {2}}, 3);
  REQUIRE(singletons.has_value());
  CHECK(singletons->size == 3);
}

TEST_CASE("erdos_rado_find requires a uniform family") {
  CHECK_THROWS_MATCHES(erdos_rado_find({{0}, {1, 2}}, 2), error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::StartsWith("NotUniform")));
}

TEST_CASE("above the bound the search always succeeds") {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 200; ++trial) {
    FiniteFamily f = oracles::random_uniform_family(rng, er_bound(2, 3) + 1, 2, 12);
    auto found = erdos_rado_find(f, 3);
    REQUIRE(found.has_value());
    REQUIRE(found->size >= 3);
    CHECK(is_sunflower(found->witness).verdict);
    for (const auto& m : found->witness) CHECK(f.contains(m));
    // oracle agreement: a found witness lower-bounds the exact maximum
    CHECK(oracles::naive_max_sunflower(f).size >= 3);
  }
}

TEST_CASE("the bound holds across small k and t") {
  std::mt19937_64 rng(910);
  for (std::uint64_t k = 1; k <= 3; ++k) {
    for (std::uint64_t t = 2; t <= 4; ++t) {
      std::uint64_t universe = 4 * k * t + 4;
      for (int trial = 0; trial < 40; ++trial) {
        FiniteFamily f = oracles::random_uniform_family(rng, er_bound(k, t) + 1, k, universe);
        auto found = erdos_rado_find(f, t);
        INFO("k=" << k << " t=" << t);
        REQUIRE(found.has_value());
        CHECK(found->size >= t);
        CHECK(is_sunflower(found->witness).verdict);
      }
    }
  }
}
