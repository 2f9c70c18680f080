#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sunflower/cardinality.hpp"
#include "sunflower/enumerate.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family_spec.hpp"
#include "sunflower/finite_set.hpp"
#include "sunflower/pairing.hpp"

namespace sunflower {

enum class Trivalent { yes, no, unknown };

namespace detail {

// A count query: members s with required subset of s and, optionally,
// |s| = exact_size. Filters push their constraints into the query, so a
// Strip/Link/Slice stack over one base generator is answered exactly by
// the base's closed form.
struct MemberQuery {
  FiniteSet required;
  std::optional<std::uint64_t> exact_size;
};

constexpr std::uint64_t kOracleBudget = std::uint64_t(1) << 22;

inline FamilySpec apply_query(FamilySpec f, const MemberQuery& q) {
  for (Element e : q.required) f = FamilySpec::link(e, f);
  if (q.exact_size) f = FamilySpec::slice(*q.exact_size, f);
  return f;
}

Cardinality count_members(const FamilySpec& f, const MemberQuery& q);

// Materializes exactly `count` query-matching members. The count must come
// from a certified Cardinality, so the enumeration terminates by itself.
inline FiniteFamily materialize_matching(const FamilySpec& f, const MemberQuery& q,
                                         std::uint64_t count) {
  Budget budget(kOracleBudget);
  Enumeration e = enumerate_family(apply_query(f, q), count, budget);
  if (e.members.size() != count) {
    throw error(errc::budget_exhausted, "oracle materialization exceeded internal budget");
  }
  return e.members;
}

struct GadgetQueryView {
  std::uint64_t spine_min = 0;                                 // least admissible n
  std::vector<std::pair<std::uint64_t, std::uint64_t>> tips;   // decoded non-spine pairs
};

inline GadgetQueryView decode_gadget_query(const FiniteSet& required) {
  GadgetQueryView view;
  for (Element u : required) {
    auto [a, b] = cantor_unpair(u);
    if (a == 0) {
      view.spine_min = std::max(view.spine_min, b);
    } else {
      view.tips.emplace_back(a, b);
    }
  }
  return view;
}

inline Cardinality count_members(const FamilySpec& f, const MemberQuery& q) {
  using Kind = FamilySpec::Kind;
  if (q.exact_size && *q.exact_size == 0) return Cardinality::finite(0);  // no empty member

  switch (f.kind()) {
    case Kind::explicit_members: {
      std::uint64_t count = 0;
      for (const auto& s : f.members()) {
        if (!q.required.subset_of(s)) continue;
        if (q.exact_size && s.size() != *q.exact_size) continue;
        ++count;
      }
      return Cardinality::finite(count);
    }

    case Kind::initial_segments: {
      std::uint64_t need = q.required.empty() ? 1 : q.required.max() + 1;
      if (!q.exact_size) return Cardinality::infinite();
      return Cardinality::finite(*q.exact_size >= need ? 1 : 0);
    }

    case Kind::matching: {
      std::uint64_t w = f.param();
      if (q.exact_size && *q.exact_size != w) return Cardinality::finite(0);
      if (q.required.empty()) return Cardinality::infinite();
      std::uint64_t block = q.required.min() / w;
      for (Element e : q.required) {
        if (e / w != block) return Cardinality::finite(0);
      }
      return Cardinality::finite(1);
    }

    case Kind::star: {
      const FiniteSet& c = f.center();
      if (q.exact_size && *q.exact_size != c.size() + 1) return Cardinality::finite(0);
      FiniteSet extra = set_difference(q.required, c);
      if (extra.empty()) return Cardinality::infinite();
      if (extra.size() > 1) return Cardinality::finite(0);
      Element start = c.empty() ? 0 : c.max() + 1;
      return Cardinality::finite(extra.min() >= start ? 1 : 0);
    }

    case Kind::graded_blocks: {
      std::uint64_t block_min = 1;
      std::vector<Element> odds;
      for (Element e : q.required) {
        if (e % 2 == 0) {
          block_min = std::max(block_min, e / 2 + 1);
        } else {
          odds.push_back(e);
        }
      }
      if (odds.size() >= 2) return Cardinality::finite(0);
      if (odds.size() == 1) {
        auto [m, j] = cantor_unpair((odds[0] - 1) / 2);
        bool valid = m >= block_min && j >= 1 && j <= m;
        if (q.exact_size) valid = valid && (m + 1 == *q.exact_size);
        return Cardinality::finite(valid ? 1 : 0);
      }
      if (!q.exact_size) return Cardinality::infinite();
      std::uint64_t m = *q.exact_size - 1;  // block m has m members of size m+1
      if (m < block_min) return Cardinality::finite(0);
      return Cardinality::finite(m);
    }

    case Kind::gadget: {
      const FnTable& t = f.table();
      GadgetQueryView view = decode_gadget_query(q.required);
      if (view.tips.size() >= 2) return Cardinality::finite(0);
      if (view.tips.size() == 1) {
        auto [v, n] = view.tips[0];
        bool valid = n >= view.spine_min && t.row(n).range_contains(v);
        if (q.exact_size) valid = valid && (*q.exact_size == n + 2);
        return Cardinality::finite(valid ? 1 : 0);
      }
      if (!q.exact_size) return Cardinality::infinite();  // the backbone is unbounded
      std::uint64_t s = *q.exact_size;
      std::uint64_t total = 0;
      if (s >= 1 && s - 1 >= view.spine_min) ++total;  // E(s-1, 0)
      if (s >= 2 && s - 2 >= view.spine_min) {
        const RowSpec& row = t.row(s - 2);
        Cardinality range = row.range_cardinality();
        if (range.is_infinite()) return Cardinality::infinite();
        total += range.count() - (row.range_contains(0) ? 1 : 0);
      }
      return Cardinality::finite(total);
    }

    case Kind::union_families: {
      Cardinality a = count_members(f.left(), q);
      Cardinality b = count_members(f.right(), q);
      if (a.is_infinite() || b.is_infinite()) return Cardinality::infinite();
      if (a.is_unknown() || b.is_unknown()) return Cardinality::unknown();
      if (a.count() == 0) return b;
      if (b.count() == 0) return a;
      // Finite on both sides: count the overlap exactly.
      FiniteFamily left = materialize_matching(f.left(), q, a.count());
      FiniteFamily right = materialize_matching(f.right(), q, b.count());
      std::uint64_t shared = 0;
      for (const auto& s : right) {
        if (left.contains(s)) ++shared;
      }
      return Cardinality::finite(a.count() + b.count() - shared);
    }

    case Kind::pad: {
      if (q.exact_size && *q.exact_size != f.param()) return Cardinality::finite(0);
      std::vector<Element> halved;
      for (Element e : q.required) {
        if (e % 2 != 0) return Cardinality::unknown();  // fresh tags are allocation-dependent
        halved.push_back(e / 2);
      }
      return count_members(f.inner(), {FiniteSet(std::move(halved)), std::nullopt});
    }

    case Kind::link: {
      MemberQuery q2{q.required.with(f.param()), q.exact_size};
      return count_members(f.inner(), q2);
    }

    case Kind::strip: {
      Element a = f.param();
      if (q.required.contains(a)) return Cardinality::finite(0);
      MemberQuery q2{q.required.with(a),
                     q.exact_size ? std::optional(*q.exact_size + 1) : std::nullopt};
      Cardinality c = count_members(f.inner(), q2);
      if (!q.exact_size && q.required.empty()) {
        // The member {a} strips to the empty set, which is never a member.
        Cardinality singleton = count_members(f.inner(), {FiniteSet{a}, 1});
        if (singleton.is_unknown()) return c.is_infinite() ? c : Cardinality::unknown();
        return cardinality_minus(c, singleton.count());
      }
      return c;
    }

    case Kind::slice: {
      if (q.exact_size && *q.exact_size != f.param()) return Cardinality::finite(0);
      MemberQuery q2{q.required, f.param()};
      return count_members(f.inner(), q2);
    }
  }
  return Cardinality::unknown();
}

// Whether every element has finitely many query-matching members through it.
// Exact where the structure decides it; Unknown only from mixed unions.
inline Trivalent degrees_finite(const FamilySpec& f, const MemberQuery& q) {
  using Kind = FamilySpec::Kind;
  if (q.exact_size && *q.exact_size == 0) return Trivalent::yes;  // empty family

  switch (f.kind()) {
    case Kind::explicit_members:
      return Trivalent::yes;

    case Kind::initial_segments:
      return q.exact_size ? Trivalent::yes : Trivalent::no;

    case Kind::matching:
      return Trivalent::yes;  // each element lies in exactly one block

    case Kind::star: {
      const FiniteSet& c = f.center();
      if (q.exact_size && *q.exact_size != c.size() + 1) return Trivalent::yes;
      if (!set_difference(q.required, c).empty()) return Trivalent::yes;  // <= 1 member
      return c.empty() ? Trivalent::yes : Trivalent::no;
    }

    case Kind::graded_blocks: {
      for (Element e : q.required) {
        if (e % 2 == 1) return Trivalent::yes;  // <= 1 member
      }
      return q.exact_size ? Trivalent::yes : Trivalent::no;
    }

    case Kind::gadget: {
      GadgetQueryView view = decode_gadget_query(q.required);
      if (!view.tips.empty()) return Trivalent::yes;  // <= 1 member
      if (!q.exact_size) return Trivalent::no;        // (0,0) lies in every member
      std::uint64_t s = *q.exact_size;
      if (s >= 2 && s - 2 >= view.spine_min &&
          f.table().row(s - 2).range_cardinality().is_infinite()) {
        return Trivalent::no;
      }
      return Trivalent::yes;
    }

    case Kind::union_families: {
      Trivalent a = degrees_finite(f.left(), q);
      Trivalent b = degrees_finite(f.right(), q);
      if (a == Trivalent::no || b == Trivalent::no) return Trivalent::no;
      if (a == Trivalent::unknown || b == Trivalent::unknown) return Trivalent::unknown;
      return Trivalent::yes;
    }

    case Kind::pad: {
      if (q.exact_size && *q.exact_size != f.param()) return Trivalent::yes;
      std::vector<Element> halved;
      for (Element e : q.required) {
        if (e % 2 != 0) return Trivalent::yes;  // a fresh tag pins at most one image
        halved.push_back(e / 2);
      }
      return degrees_finite(f.inner(), {FiniteSet(std::move(halved)), std::nullopt});
    }

    case Kind::link:
      return degrees_finite(f.inner(), {q.required.with(f.param()), q.exact_size});

    case Kind::strip: {
      Element a = f.param();
      if (q.required.contains(a)) return Trivalent::yes;
      return degrees_finite(
          f.inner(), {q.required.with(a),
                      q.exact_size ? std::optional(*q.exact_size + 1) : std::nullopt});
    }

    case Kind::slice: {
      if (q.exact_size && *q.exact_size != f.param()) return Trivalent::yes;
      return degrees_finite(f.inner(), {q.required, f.param()});
    }
  }
  return Trivalent::unknown;
}

}  // namespace detail

inline Cardinality member_count(const FamilySpec& f) {
  return detail::count_members(f, {FiniteSet{}, std::nullopt});
}

inline Cardinality size_class_count(const FamilySpec& f, std::uint64_t n) {
  return detail::count_members(f, {FiniteSet{}, n});
}

inline Cardinality point_degree(const FamilySpec& f, Element a) {
  return detail::count_members(f, {FiniteSet{a}, std::nullopt});
}

inline Trivalent all_point_degrees_finite(const FamilySpec& f) {
  return detail::degrees_finite(f, {FiniteSet{}, std::nullopt});
}

// Structurally certified answer to "does this family contain an infinite
// sunflower?". Unknown rather than a guess when the algebra cannot certify.
inline GroundTruth ground_truth_sunflower(const FamilySpec& f) {
  using Kind = FamilySpec::Kind;
  if (member_count(f).is_finite()) return GroundTruth::no;

  switch (f.kind()) {
    case Kind::explicit_members:
      return GroundTruth::no;  // finite, handled above
    case Kind::matching:
    case Kind::star:
      return GroundTruth::yes;
    case Kind::initial_segments:
    case Kind::graded_blocks:
      return GroundTruth::no;
    case Kind::gadget: {
      const FnTable& t = f.table();
      for (std::size_t n = 0; n < t.rows.size(); ++n) {
        if (t.rows[n].range_cardinality().is_infinite()) return GroundTruth::yes;
      }
      return GroundTruth::no;
    }
    case Kind::pad:
      return ground_truth_sunflower(f.inner());
    case Kind::union_families: {
      if (ground_truth_sunflower(f.left()) == GroundTruth::yes) return GroundTruth::yes;
      if (ground_truth_sunflower(f.right()) == GroundTruth::yes) return GroundTruth::yes;
      // Two No sides can still hide a cross-family sunflower.
      return GroundTruth::unknown;
    }
    case Kind::link:
    case Kind::strip:
    case Kind::slice:
      return GroundTruth::unknown;
  }
  return GroundTruth::unknown;
}

}  // namespace sunflower
