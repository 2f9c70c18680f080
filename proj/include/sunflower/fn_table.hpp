#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sunflower/cardinality.hpp"
#include "sunflower/error.hpp"
#include "sunflower/finite_set.hpp"
#include "sunflower/pairing.hpp"

namespace sunflower {

// A row of the gadget table: one partial function omega -> omega with a
// decidable range. Rows stand in for the programs of the reduction.
struct RowSpec {
  struct Identity {
    bool operator==(const Identity&) const = default;
  };
  struct Mod {
    std::uint64_t p;  // positive
    bool operator==(const Mod&) const = default;
  };
  struct ConstAfter {
    std::uint64_t k;  // value m for m < k, then constant v
    std::uint64_t v;
    bool operator==(const ConstAfter&) const = default;
  };
  struct Explicit {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // distinct m
    bool operator==(const Explicit&) const = default;
  };
  struct Undefined {
    bool operator==(const Undefined&) const = default;
  };

  std::variant<Identity, Mod, ConstAfter, Explicit, Undefined> value = Undefined{};

  static RowSpec identity() { return {Identity{}}; }
  static RowSpec mod(std::uint64_t p) {
    if (p == 0) throw error(errc::non_positive_parameter, "mod requires p >= 1");
    return {Mod{p}};
  }
  static RowSpec const_after(std::uint64_t k, std::uint64_t v) { return {ConstAfter{k, v}}; }
  static RowSpec explicit_pairs(std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      if (pairs[i].first == pairs[i - 1].first) {
        throw error(errc::invalid_node, "explicit row has a repeated argument");
      }
    }
    return {Explicit{std::move(pairs)}};
  }
  static RowSpec undefined() { return {Undefined{}}; }

  bool operator==(const RowSpec&) const = default;

  std::optional<std::uint64_t> eval(std::uint64_t m) const {
    if (std::holds_alternative<Identity>(value)) return m;
    if (auto* f = std::get_if<Mod>(&value)) return m % f->p;
    if (auto* f = std::get_if<ConstAfter>(&value)) return m < f->k ? m : f->v;
    if (auto* f = std::get_if<Explicit>(&value)) {
      for (const auto& [arg, val] : f->pairs) {
        if (arg == m) return val;
      }
      return std::nullopt;
    }
    return std::nullopt;
  }

  Cardinality range_cardinality() const {
    if (std::holds_alternative<Identity>(value)) return Cardinality::infinite();
    if (auto* f = std::get_if<Mod>(&value)) return Cardinality::finite(f->p);
    if (auto* f = std::get_if<ConstAfter>(&value)) {
      return Cardinality::finite(f->k + (f->v >= f->k ? 1 : 0));
    }
    if (auto* f = std::get_if<Explicit>(&value)) {
      std::set<std::uint64_t> values;
      for (const auto& [arg, val] : f->pairs) values.insert(val);
      return Cardinality::finite(values.size());
    }
    return Cardinality::finite(0);
  }

  bool range_contains(std::uint64_t v) const {
    if (std::holds_alternative<Identity>(value)) return true;
    if (auto* f = std::get_if<Mod>(&value)) return v < f->p;
    if (auto* f = std::get_if<ConstAfter>(&value)) return v < f->k || v == f->v;
    if (auto* f = std::get_if<Explicit>(&value)) {
      for (const auto& [arg, val] : f->pairs) {
        if (val == v) return true;
      }
      return false;
    }
    return false;
  }
};

// A finite table of rows; rows beyond the table are Undefined. Row n models
// the n-th partial function of the reduction's input.
struct FnTable {
  std::vector<RowSpec> rows;

  bool operator==(const FnTable&) const = default;

  const RowSpec& row(std::uint64_t n) const {
    static const RowSpec undefined = RowSpec::undefined();
    return n < rows.size() ? rows[n] : undefined;
  }
};

// E(n, m) = {(0,i) : i in [n+1]} united with {(m,n)}, elementwise coded by
// the Cantor pairing. |E(n,m)| = n+2 except m = 0 where the tip lands on
// the spine and |E(n,0)| = n+1.
inline FiniteSet eset(std::uint64_t n, std::uint64_t m) {
  std::vector<Element> xs;
  xs.reserve(n + 2);
  for (std::uint64_t i = 0; i <= n; ++i) xs.push_back(cantor_pair(0, i));
  xs.push_back(cantor_pair(m, n));
  return FiniteSet(std::move(xs));
}

// Intersection of two esets. For distinct sets this equals eset(min(n,n'),0).
inline FiniteSet e_intersection(std::uint64_t n, std::uint64_t m, std::uint64_t n2,
                                std::uint64_t m2) {
  return intersect(eset(n, m), eset(n2, m2));
}

inline Cardinality row_range(const FnTable& t, std::uint64_t n) {
  return t.row(n).range_cardinality();
}

inline std::string row_to_string(const RowSpec& r) {
  if (std::holds_alternative<RowSpec::Identity>(r.value)) return "identity";
  if (auto* f = std::get_if<RowSpec::Mod>(&r.value)) return "mod " + std::to_string(f->p);
  if (auto* f = std::get_if<RowSpec::ConstAfter>(&r.value)) {
    return "const_after " + std::to_string(f->k) + " " + std::to_string(f->v);
  }
  if (auto* f = std::get_if<RowSpec::Explicit>(&r.value)) {
    std::string out = "explicit[";
    for (const auto& [arg, val] : f->pairs) {
      out += "(" + std::to_string(arg) + "," + std::to_string(val) + ")";
    }
    return out + "]";
  }
  return "undefined";
}

inline std::string table_to_string(const FnTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (i) out += ";";
    out += row_to_string(t.rows[i]);
  }
  return out;
}

}  // namespace sunflower
