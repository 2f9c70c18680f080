#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sunflower/detector.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family_spec.hpp"
#include "sunflower/finite_lemma.hpp"
#include "sunflower/finite_set.hpp"
#include "sunflower/fn_table.hpp"
#include "sunflower/pairing.hpp"

namespace sunflower {

// The family B of all backbone sets E(n,0) plus E(n, row_n(m)) wherever row
// n is defined at m, as a lazily enumerable spec.
inline FamilySpec gadget_family(const FnTable& t) { return FamilySpec::gadget(t); }

struct GadgetReport {
  std::uint64_t truncation = 0;
  std::vector<Cardinality> per_row_range;
  std::uint64_t truncated_member_count = 0;
  std::uint64_t max_sunflower_truncated = 0;
  int classification_expected = 1;  // 2 iff some row range is infinite
  int classification_actual = 1;
  std::uint64_t bound_limit = 0;  // max row-range size + 2 (all-finite tables)
  bool within_bound = true;
  std::optional<FiniteSet> witness_core;
};

// The members contributed by stages 0..truncation, first occurrence order.
inline FiniteFamily truncate_gadget(const FnTable& t, std::uint64_t truncation) {
  std::vector<FiniteSet> members;
  std::unordered_set<FiniteSet, FiniteSetHash> seen;
  for (std::uint64_t stage = 0; stage <= truncation; ++stage) {
    FiniteSet backbone = eset(stage, 0);
    if (seen.insert(backbone).second) members.push_back(std::move(backbone));
    auto [n, m] = cantor_unpair(stage);
    if (auto v = t.row(n).eval(m)) {
      FiniteSet s = eset(n, *v);
      if (seen.insert(s).second) members.push_back(std::move(s));
    }
  }
  return FiniteFamily::from_distinct(std::move(members));
}

// Desk-scale check of the reduction's claim: all row ranges finite iff the
// family has no infinite sunflower. Brute-forces the truncation and compares
// against the detector's verdict on the full spec.
inline GadgetReport verify_claim(const FnTable& t, std::uint64_t truncation,
                                 std::size_t guard = 256) {
  GadgetReport report;
  report.truncation = truncation;

  bool any_infinite = false;
  std::uint64_t max_range = 0;
  for (std::size_t n = 0; n < t.rows.size(); ++n) {
    Cardinality range = row_range(t, n);
    if (range.is_infinite()) {
      any_infinite = true;
      if (!report.witness_core) report.witness_core = eset(n, 0);
    } else {
      max_range = std::max(max_range, range.count());
    }
    report.per_row_range.push_back(range);
  }
  report.classification_expected = any_infinite ? 2 : 1;

  FiniteFamily truncated = truncate_gadget(t, truncation);
  if (truncated.size() > guard) {
    throw error(errc::pool_too_large, "truncated family of " + std::to_string(truncated.size()) +
                                          " sets exceeds the guard " + std::to_string(guard));
  }
  report.truncated_member_count = truncated.size();
  report.max_sunflower_truncated = max_sunflower_exact(truncated, guard).size;

  report.classification_actual = classify(FamilySpec::gadget(t)).code();

  if (!any_infinite) {
    report.bound_limit = max_range + 2;
    report.within_bound = report.max_sunflower_truncated <= report.bound_limit;
  }
  return report;
}

}  // namespace sunflower
