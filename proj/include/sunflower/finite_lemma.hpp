#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sunflower/error.hpp"
#include "sunflower/finite_set.hpp"

namespace sunflower {

struct SearchResult {
  std::uint64_t size = 0;
  FiniteFamily witness;
  bool exhaustive = false;
};

// k! * (t-1)^k for k-uniform sets and t petals, overflow-checked.
inline std::uint64_t er_bound(std::uint64_t k, std::uint64_t t) {
  if (k == 0 || t == 0) {
    throw error(errc::non_positive_parameter, "er_bound requires k, t >= 1");
  }
  std::uint64_t result = 1;
  for (std::uint64_t i = 2; i <= k; ++i) {
    if (__builtin_mul_overflow(result, i, &result)) {
      throw error(errc::overflow, "er_bound exceeds the machine range");
    }
  }
  for (std::uint64_t i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(result, t - 1, &result)) {
      throw error(errc::overflow, "er_bound exceeds the machine range");
    }
  }
  return result;
}

namespace detail {

// Largest pairwise-disjoint subset of the given petals (maximum set packing),
// branch and bound over the candidate order.
inline std::uint64_t max_packing_size(const std::vector<FiniteSet>& petals) {
  std::size_t n = petals.size();
  std::vector<std::vector<char>> conflict(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      conflict[i][j] = conflict[j][i] = !disjoint(petals[i], petals[j]);
    }
  }
  std::uint64_t best = 0;
  std::vector<std::size_t> initial(n);
  for (std::size_t i = 0; i < n; ++i) initial[i] = i;

  auto rec = [&](auto&& self, const std::vector<std::size_t>& available,
                 std::uint64_t chosen) -> void {
    best = std::max(best, chosen);
    if (available.empty() || chosen + available.size() <= best) return;
    std::size_t pick = available.front();
    // include pick
    std::vector<std::size_t> compatible;
    compatible.reserve(available.size());
    for (std::size_t i = 1; i < available.size(); ++i) {
      if (!conflict[pick][available[i]]) compatible.push_back(available[i]);
    }
    self(self, compatible, chosen + 1);
    // exclude pick
    std::vector<std::size_t> rest(available.begin() + 1, available.end());
    self(self, rest, chosen);
  };
  rec(rec, initial, 0);
  return best;
}

inline bool compatible_with(const std::vector<FiniteSet>& chosen, const FiniteSet& candidate) {
  if (chosen.size() < 1) return true;
  FiniteSet core = intersect(chosen[0], chosen.size() >= 2 ? chosen[1] : candidate);
  for (const auto& m : chosen) {
    if (intersect(m, candidate) != core) return false;
  }
  return true;
}

// First sunflower of exactly `target` members in lexicographic combination
// order over canonically sorted members; nullopt when none exists.
inline bool lex_first_sunflower(const std::vector<FiniteSet>& members, std::size_t start,
                                std::vector<FiniteSet>& chosen, std::uint64_t target) {
  if (chosen.size() == target) return true;
  for (std::size_t i = start; i < members.size(); ++i) {
    if (members.size() - i < target - chosen.size()) break;
    if (!compatible_with(chosen, members[i])) continue;
    chosen.push_back(members[i]);
    if (lex_first_sunflower(members, i + 1, chosen, target)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace detail

// Exact maximum sunflower size with the lexicographically least witness of
// that size. Exponential in the worst case; the limit guard keeps general
// inputs honest, callers with structured pools may raise it.
inline SearchResult max_sunflower_exact(const FiniteFamily& f, std::size_t limit = 20) {
  if (f.size() > limit) {
    throw error(errc::too_large, "family of " + std::to_string(f.size()) +
                                     " sets exceeds the exact-search guard " +
                                     std::to_string(limit));
  }
  FiniteFamily canon = f.canonicalized();
  if (canon.size() <= 1) {
    return {canon.size(), canon, true};
  }
  const auto& ms = canon.members();

  // Any sunflower of >= 2 members has core equal to a pairwise intersection.
  std::vector<FiniteSet> cores;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      FiniteSet r = intersect(ms[i], ms[j]);
      if (std::find(cores.begin(), cores.end(), r) == cores.end()) cores.push_back(std::move(r));
    }
  }
  std::uint64_t best = 1;
  for (const auto& r : cores) {
    std::vector<FiniteSet> petals;
    for (const auto& m : ms) {
      if (r.subset_of(m)) petals.push_back(set_difference(m, r));
    }
    best = std::max(best, detail::max_packing_size(petals));
  }

  std::vector<FiniteSet> witness;
  detail::lex_first_sunflower(ms, 0, witness, best);
  return {best, FiniteFamily::from_distinct(std::move(witness)), true};
}

// Greedy maximal pairwise-disjoint subfamily in canonical order. Every
// member of f meets the union of the result.
inline FiniteFamily maximal_disjoint(const FiniteFamily& f) {
  FiniteFamily canon = f.canonicalized();
  std::vector<FiniteSet> picked;
  FiniteSet used;
  for (const auto& m : canon) {
    if (disjoint(m, used)) {
      picked.push_back(m);
      used = set_union(used, m);
    }
  }
  return FiniteFamily::from_distinct(std::move(picked));
}

// Recursive Erdos-Rado search for a sunflower with at least t petals in a
// k-uniform family. Succeeds whenever |f| > er_bound(k, t); below the bound
// NotFound (nullopt) is possible.
inline std::optional<SearchResult> erdos_rado_find(const FiniteFamily& f, std::uint64_t t) {
  if (t == 0) throw error(errc::non_positive_parameter, "erdos_rado_find requires t >= 1");
  if (f.empty()) return std::nullopt;
  std::size_t k = f[0].size();
  for (const auto& m : f) {
    if (m.size() != k) {
      throw error(errc::not_uniform, "erdos_rado_find requires a uniform family");
    }
  }

  FiniteFamily disjoint_part = maximal_disjoint(f);
  if (disjoint_part.size() >= t) {
    return SearchResult{disjoint_part.size(), disjoint_part.canonicalized(), false};
  }
  if (k <= 1) return std::nullopt;

  // Some element of the union of the maximal disjoint part meets many
  // members; recurse on its stripped link.
  std::map<Element, std::uint64_t> degree;
  for (const auto& m : disjoint_part) {
    for (Element e : m) degree[e] = 0;
  }
  for (const auto& m : f) {
    for (auto& [e, d] : degree) {
      if (m.contains(e)) ++d;
    }
  }
  Element pick = 0;
  std::uint64_t pick_degree = 0;
  for (const auto& [e, d] : degree) {
    if (d > pick_degree) {
      pick = e;
      pick_degree = d;
    }
  }

  std::vector<FiniteSet> stripped;
  for (const auto& m : f) {
    if (m.contains(pick)) stripped.push_back(m.without(pick));
  }
  auto sub = erdos_rado_find(FiniteFamily::from_distinct(std::move(stripped)), t);
  if (!sub) return std::nullopt;
  std::vector<FiniteSet> witness;
  witness.reserve(sub->witness.size());
  for (const auto& w : sub->witness) witness.push_back(w.with(pick));
  return SearchResult{sub->size, FiniteFamily::from_distinct(std::move(witness)).canonicalized(),
                      false};
}

}  // namespace sunflower
