#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sunflower/error.hpp"

namespace sunflower {

using Element = std::uint64_t;

// A finite set of naturals, stored as a strictly increasing element vector.
// Immutable value type; all operations return new sets.
class FiniteSet {
 public:
  FiniteSet() = default;

  FiniteSet(std::initializer_list<Element> xs) : FiniteSet(std::vector<Element>(xs)) {}

  explicit FiniteSet(std::vector<Element> xs) : elements_(std::move(xs)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }

  // Trusted constructor: input must already be strictly increasing.
  static FiniteSet from_sorted_unique(std::vector<Element> xs) {
    FiniteSet s;
    s.elements_ = std::move(xs);
    return s;
  }

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  bool contains(Element e) const {
    return std::binary_search(elements_.begin(), elements_.end(), e);
  }

  Element min() const { return elements_.front(); }
  Element max() const { return elements_.back(); }

  bool subset_of(const FiniteSet& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(),
                         elements_.begin(), elements_.end());
  }

  FiniteSet with(Element e) const {
    std::vector<Element> xs = elements_;
    auto it = std::lower_bound(xs.begin(), xs.end(), e);
    if (it == xs.end() || *it != e) xs.insert(it, e);
    return from_sorted_unique(std::move(xs));
  }

  FiniteSet without(Element e) const {
    std::vector<Element> xs = elements_;
    auto it = std::lower_bound(xs.begin(), xs.end(), e);
    if (it != xs.end() && *it == e) xs.erase(it);
    return from_sorted_unique(std::move(xs));
  }

  bool operator==(const FiniteSet& other) const = default;

  // Canonical order: by size, then lexicographically on the elements.
  std::strong_ordering operator<=>(const FiniteSet& other) const {
    if (auto c = elements_.size() <=> other.elements_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(elements_.begin(), elements_.end(),
                                                  other.elements_.begin(),
                                                  other.elements_.end());
  }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  std::vector<Element> elements_;
};

inline FiniteSet intersect(const FiniteSet& p, const FiniteSet& q) {
  std::vector<Element> out;
  std::set_intersection(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(out));
  return FiniteSet::from_sorted_unique(std::move(out));
}

inline FiniteSet set_union(const FiniteSet& p, const FiniteSet& q) {
  std::vector<Element> out;
  std::set_union(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(out));
  return FiniteSet::from_sorted_unique(std::move(out));
}

inline FiniteSet set_difference(const FiniteSet& p, const FiniteSet& q) {
  std::vector<Element> out;
  std::set_difference(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(out));
  return FiniteSet::from_sorted_unique(std::move(out));
}

inline bool disjoint(const FiniteSet& p, const FiniteSet& q) {
  auto i = p.begin();
  auto j = q.begin();
  while (i != p.end() && j != q.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else return false;
  }
  return true;
}

struct FiniteSetHash {
  std::size_t operator()(const FiniteSet& s) const {
    std::size_t h = 1469598103934665603ull;
    for (Element e : s) {
      h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// A duplicate-free sequence of finite sets. Order is meaningful (it is the
// enumeration order for explicit families); canonicalized() sorts members.
class FiniteFamily {
 public:
  FiniteFamily() = default;

  FiniteFamily(std::initializer_list<FiniteSet> ms)
      : FiniteFamily(std::vector<FiniteSet>(ms)) {}

  explicit FiniteFamily(std::vector<FiniteSet> ms) {
    for (auto& m : ms) add(std::move(m));
  }

  // Trusted constructor: members must already be pairwise distinct.
  static FiniteFamily from_distinct(std::vector<FiniteSet> ms) {
    FiniteFamily f;
    f.members_ = std::move(ms);
    return f;
  }

  const std::vector<FiniteSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  const FiniteSet& operator[](std::size_t i) const { return members_[i]; }

  bool contains(const FiniteSet& s) const {
    return std::find(members_.begin(), members_.end(), s) != members_.end();
  }

  // Returns false (and keeps the family unchanged) on a duplicate.
  bool add(FiniteSet s) {
    if (contains(s)) return false;
    members_.push_back(std::move(s));
    return true;
  }

  FiniteFamily canonicalized() const {
    std::vector<FiniteSet> ms = members_;
    std::sort(ms.begin(), ms.end());
    return from_distinct(std::move(ms));
  }

  bool operator==(const FiniteFamily& other) const = default;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<FiniteSet> members_;
};

// Canonical order on families: lexicographic over canonically sorted members.
inline bool canonical_less(const FiniteFamily& a, const FiniteFamily& b) {
  auto ca = a.canonicalized();
  auto cb = b.canonicalized();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

struct SunflowerCheck {
  struct Violation {
    // Two member-index pairs whose intersections differ.
    std::size_t first_i, first_j;
    std::size_t second_i, second_j;
  };

  bool verdict = false;
  std::optional<FiniteSet> core;       // present iff verdict and >= 2 members
  std::optional<Violation> violation;  // present iff !verdict
};

// Def: a family is a sunflower when all pairwise intersections of distinct
// members coincide. Families of size <= 1 pass vacuously (core undetermined).
inline SunflowerCheck is_sunflower(const FiniteFamily& f) {
  SunflowerCheck out;
  if (f.size() <= 1) {
    out.verdict = true;
    return out;
  }
  FiniteSet core = intersect(f[0], f[1]);
  for (std::size_t j = 1; j < f.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (i == 0 && j == 1) continue;
      if (intersect(f[i], f[j]) != core) {
        out.verdict = false;
        out.violation = SunflowerCheck::Violation{0, 1, i, j};
        return out;
      }
    }
  }
  out.verdict = true;
  out.core = std::move(core);
  return out;
}

// The common intersection r. Absent for families of size <= 1, where r is
// not determined by the definition.
inline std::optional<FiniteSet> core_of(const FiniteFamily& f) {
  SunflowerCheck check = is_sunflower(f);
  if (!check.verdict) {
    throw error(errc::not_a_sunflower, "core_of requires a sunflower");
  }
  return check.core;
}

inline std::string set_to_string(const FiniteSet& s) {
  std::string out = "{";
  bool first = true;
  for (Element e : s) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

inline std::ostream& operator<<(std::ostream& os, const FiniteSet& s) {
  return os << set_to_string(s);
}

}  // namespace sunflower
