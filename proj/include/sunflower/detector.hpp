#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sunflower/enumerate.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family_spec.hpp"
#include "sunflower/finite_set.hpp"
#include "sunflower/fn_table.hpp"
#include "sunflower/oracles.hpp"
#include "sunflower/same_size.hpp"

namespace sunflower {

// Pairwise intersections of the first k enumerated members, duplicate-free
// in first-occurrence order. Every sunflower of size >= 2 has its core here
// once two of its members have been enumerated.
inline std::vector<FiniteSet> candidate_cores(const FamilySpec& f, std::uint64_t k,
                                              Budget& budget) {
  Enumeration e = enumerate_family(f, k, budget);
  const auto& ms = e.members.members();
  std::vector<FiniteSet> cores;
  for (std::size_t j = 1; j < ms.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      FiniteSet r = intersect(ms[i], ms[j]);
      if (std::find(cores.begin(), cores.end(), r) == cores.end()) {
        cores.push_back(std::move(r));
      }
    }
  }
  return cores;
}

namespace detail {

constexpr std::size_t kMaxPackingCandidates = 4096;
constexpr std::uint64_t kMaxPackingNodes = 500000;

// Backtracking search for t pairwise-disjoint petals over the collected
// candidates, bounded by a node cap. Indices ascending, so the first
// solution found is deterministic.
inline bool packing_of_size(const std::vector<FiniteSet>& petals, std::uint64_t t,
                            std::vector<std::size_t>& chosen) {
  std::uint64_t nodes = 0;
  auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (chosen.size() == t) return true;
    if (++nodes > kMaxPackingNodes) return false;
    for (std::size_t i = start; i < petals.size(); ++i) {
      if (petals.size() - i < t - chosen.size()) break;
      bool ok = true;
      for (std::size_t c : chosen) {
        if (!disjoint(petals[c], petals[i])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(i);
      if (self(self, i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace detail

// At least t members of f containing r with pairwise intersections exactly r
// (petals pairwise disjoint). Greedy over the enumeration first, then
// backtracking over the collected candidates. Exhausted (nullopt) is not a
// proof of absence, only of the budget.
inline std::optional<FiniteFamily> find_exact_core_sunflower(const FamilySpec& f,
                                                             const FiniteSet& r, std::uint64_t t,
                                                             Budget& budget) {
  if (t == 0) return FiniteFamily{};
  MemberStream stream(f);
  std::vector<FiniteSet> candidates;  // members containing r, enumeration order
  std::vector<FiniteSet> petals;
  std::vector<std::size_t> greedy;
  FiniteSet greedy_support;

  while (true) {
    MemberStream::Pull p = stream.next(budget);
    if (p.status != MemberStream::Pull::Status::member) break;
    if (!r.subset_of(p.value)) continue;
    FiniteSet petal = set_difference(p.value, r);
    if (candidates.size() < detail::kMaxPackingCandidates) {
      candidates.push_back(p.value);
      petals.push_back(petal);
    }
    if (disjoint(petal, greedy_support)) {
      greedy_support = set_union(greedy_support, petal);
      if (candidates.empty() || candidates.back() != p.value) {
        // greedy pick past the collection cap; track it directly
        candidates.push_back(p.value);
        petals.push_back(petal);
      }
      greedy.push_back(candidates.size() - 1);
      if (greedy.size() >= t) {
        std::vector<FiniteSet> out;
        out.reserve(t);
        for (std::size_t i : greedy) out.push_back(candidates[i]);
        return FiniteFamily::from_distinct(std::move(out));
      }
    }
  }

  // Budget (or the family) ran out before the greedy pass reached t; try a
  // full packing search over what was collected.
  std::vector<std::size_t> chosen;
  if (detail::packing_of_size(petals, t, chosen)) {
    std::vector<FiniteSet> out;
    out.reserve(t);
    for (std::size_t i : chosen) out.push_back(candidates[i]);
    return FiniteFamily::from_distinct(std::move(out));
  }
  return std::nullopt;
}

namespace detail {

// Does the spec algebra certify exact-core-r sunflowers of every finite size?
inline bool certify_unbounded_core(const FamilySpec& f, const FiniteSet& r) {
  using Kind = FamilySpec::Kind;
  switch (f.kind()) {
    case Kind::matching:
      return r.empty();
    case Kind::star:
      return r == f.center();
    case Kind::gadget: {
      const FnTable& t = f.table();
      for (std::size_t n = 0; n < t.rows.size(); ++n) {
        if (t.rows[n].range_cardinality().is_infinite() && eset(n, 0) == r) return true;
      }
      return false;
    }
    case Kind::pad: {
      std::vector<Element> halved;
      for (Element e : r) {
        if (e % 2 != 0) return false;
        halved.push_back(e / 2);
      }
      return certify_unbounded_core(f.inner(), FiniteSet(std::move(halved)));
    }
    case Kind::union_families:
      return certify_unbounded_core(f.left(), r) || certify_unbounded_core(f.right(), r);
    default:
      return false;
  }
}

// Greedy diagonal over growing exact-core witnesses: a witness of size
// |support|+2 has pairwise-disjoint petals, so at most |support| of them
// meet the support and at least one un-emitted member survives.
struct DiagonalStream final : SunflowerStream::Impl {
  FamilySpec spec;
  FiniteSet core;
  FiniteSet support;  // union of emitted petals
  std::unordered_set<FiniteSet, FiniteSetHash> emitted;

  DiagonalStream(FamilySpec f, FiniteSet r) : spec(std::move(f)), core(std::move(r)) {}

  FiniteSet next(Budget& budget) override {
    std::uint64_t t = support.size() + 2;
    std::optional<FiniteFamily> witness = find_exact_core_sunflower(spec, core, t, budget);
    if (!witness) {
      throw error(errc::budget_exhausted, "stream ran out of budget; retry with more");
    }
    for (const auto& m : *witness) {
      if (emitted.count(m)) continue;
      FiniteSet petal = set_difference(m, core);
      if (!disjoint(petal, support)) continue;
      emitted.insert(m);
      support = set_union(support, petal);
      return m;
    }
    throw error(errc::budget_exhausted, "witness yielded no fresh member; retry with more");
  }
};

}  // namespace detail

// Infinite exact-core-r sunflower stream. Requires the spec algebra to
// certify arbitrarily large exact-core-r witnesses.
inline SunflowerStream extract_sunflower(const FamilySpec& f, const FiniteSet& r) {
  if (!detail::certify_unbounded_core(f, r)) {
    throw error(errc::uncertified_core, "core " + set_to_string(r) +
                                            " is not certified unbounded for " + f.to_string());
  }
  return SunflowerStream(r, std::make_unique<detail::DiagonalStream>(f, r));
}

struct UnknownReport {
  struct CoreRecord {
    FiniteSet core;
    std::uint64_t largest_found = 0;  // largest exact-core sunflower found
  };
  std::vector<CoreRecord> per_core;
};

// Classification result with an integer coding for the first three outcomes
// and an honest fourth when nothing certifies.
class Classification {
 public:
  enum class Outcome {
    not_infinite_family,    // code 0
    no_infinite_sunflower,  // code 1
    witness,                // code 2 (stream handle)
    unknown,
  };

  Outcome outcome = Outcome::unknown;
  std::optional<FiniteSet> core;
  std::optional<SunflowerStream> stream;
  std::optional<UnknownReport> report;

  // Integer code; -1 for unknown.
  int code() const {
    switch (outcome) {
      case Outcome::not_infinite_family: return 0;
      case Outcome::no_infinite_sunflower: return 1;
      case Outcome::witness: return 2;
      case Outcome::unknown: return -1;
    }
    return -1;
  }
};

namespace detail {

// The certified core for a ground-truth-yes spec, mirroring its structure.
inline FiniteSet witness_core_for(const FamilySpec& f) {
  using Kind = FamilySpec::Kind;
  switch (f.kind()) {
    case Kind::matching:
      return {};
    case Kind::star:
      return f.center();
    case Kind::gadget: {
      const FnTable& t = f.table();
      for (std::size_t n = 0; n < t.rows.size(); ++n) {
        if (t.rows[n].range_cardinality().is_infinite()) return eset(n, 0);
      }
      break;
    }
    case Kind::pad: {
      FiniteSet inner = witness_core_for(f.inner());
      std::vector<Element> doubled;
      for (Element e : inner) doubled.push_back(2 * e);
      return FiniteSet::from_sorted_unique(std::move(doubled));
    }
    case Kind::union_families:
      if (ground_truth_sunflower(f.left()) == GroundTruth::yes) {
        return witness_core_for(f.left());
      }
      return witness_core_for(f.right());
    default:
      break;
  }
  throw error(errc::uncertified_core, "no certified core for " + f.to_string());
}

constexpr std::uint64_t kCoreProbeMembers = 12;
constexpr std::uint64_t kCoreProbeCap = 32;
constexpr std::uint64_t kCoreProbeBudget = 2000;

}  // namespace detail

inline Classification classify(const FamilySpec& f, Budget budget = Budget{}) {
  Classification out;
  Cardinality mc = member_count(f);
  if (mc.is_finite()) {
    out.outcome = Classification::Outcome::not_infinite_family;
    return out;
  }

  GroundTruth gt = ground_truth_sunflower(f);
  if (gt == GroundTruth::no && mc.is_infinite()) {
    out.outcome = Classification::Outcome::no_infinite_sunflower;
    return out;
  }
  if (gt == GroundTruth::yes) {
    FiniteSet core = detail::witness_core_for(f);
    out.stream = extract_sunflower(f, core);
    out.core = std::move(core);
    out.outcome = Classification::Outcome::witness;
    return out;
  }

  // Uncertified ground truth: an infinite uniform family still certifies a
  // sunflower by extraction, with the pinned set as its core.
  try {
    SunflowerStream stream = extract_uniform_sunflower(f, budget);
    out.core = stream.core();
    out.stream = std::move(stream);
    out.outcome = Classification::Outcome::witness;
    return out;
  } catch (const error&) {
    // fall through to the budgeted finite-stage search
  }

  UnknownReport report;
  std::vector<FiniteSet> cores = candidate_cores(f, detail::kCoreProbeMembers, budget);
  for (const auto& r : cores) {
    UnknownReport::CoreRecord record{r, 0};
    for (std::uint64_t t = 1; t <= detail::kCoreProbeCap && budget.remaining > 0; ++t) {
      // each probe gets a bounded slice so one dead end cannot starve the rest
      Budget probe(std::min(budget.remaining, detail::kCoreProbeBudget));
      std::uint64_t slice = probe.remaining;
      bool found = find_exact_core_sunflower(f, r, t, probe).has_value();
      budget.remaining -= slice - probe.remaining;
      if (!found) break;
      record.largest_found = t;
    }
    report.per_core.push_back(std::move(record));
  }
  out.report = std::move(report);
  out.outcome = Classification::Outcome::unknown;
  return out;
}

}  // namespace sunflower
