#pragma once

#include <cstdint>
#include <ostream>

namespace sunflower {

// Exact three-valued cardinality: Finite(count) | Infinite | Unknown.
// Oracles built on this type must be exact-or-Unknown, never wrong.
class Cardinality {
 public:
  static Cardinality finite(std::uint64_t count) { return Cardinality(Tag::finite, count); }
  static Cardinality infinite() { return Cardinality(Tag::infinite, 0); }
  static Cardinality unknown() { return Cardinality(Tag::unknown, 0); }

  bool is_finite() const { return tag_ == Tag::finite; }
  bool is_infinite() const { return tag_ == Tag::infinite; }
  bool is_unknown() const { return tag_ == Tag::unknown; }

  std::uint64_t count() const { return count_; }  // meaningful iff finite

  bool operator==(const Cardinality& other) const = default;

 private:
  enum class Tag { finite, infinite, unknown };

  Cardinality(Tag t, std::uint64_t c) : tag_(t), count_(c) {}

  Tag tag_;
  std::uint64_t count_;
};

// Sum of disjoint contributions: Infinite absorbs, Unknown wins otherwise.
inline Cardinality cardinality_sum(const Cardinality& a, const Cardinality& b) {
  if (a.is_infinite() || b.is_infinite()) return Cardinality::infinite();
  if (a.is_unknown() || b.is_unknown()) return Cardinality::unknown();
  return Cardinality::finite(a.count() + b.count());
}

// Difference by a finite amount never changes Infinite, and Unknown sticks.
inline Cardinality cardinality_minus(const Cardinality& a, std::uint64_t k) {
  if (!a.is_finite()) return a;
  return Cardinality::finite(a.count() >= k ? a.count() - k : 0);
}

inline std::ostream& operator<<(std::ostream& os, const Cardinality& c) {
  if (c.is_infinite()) return os << "infinite";
  if (c.is_unknown()) return os << "unknown";
  return os << "finite(" << c.count() << ")";
}

enum class GroundTruth { yes, no, unknown };

inline std::ostream& operator<<(std::ostream& os, GroundTruth g) {
  switch (g) {
    case GroundTruth::yes: return os << "yes";
    case GroundTruth::no: return os << "no";
    case GroundTruth::unknown: return os << "unknown";
  }
  return os;
}

}  // namespace sunflower
