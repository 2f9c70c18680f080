#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "sunflower/enumerate.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family_spec.hpp"
#include "sunflower/finite_set.hpp"
#include "sunflower/oracles.hpp"

namespace sunflower {

struct TreeLevel {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::vector<FiniteFamily> nodes;  // canonical order
};

struct TreeStats {
  std::uint64_t n = 0;
  std::uint64_t depth = 0;
  std::vector<std::uint64_t> per_level_counts;      // k = 0..depth
  std::vector<std::uint64_t> cumulative_distinct;   // equal to per-level: levels nest
  std::uint64_t longest_strict_chain = 0;
  std::vector<FiniteFamily> chain_witness;
};

namespace detail {

constexpr std::size_t kMaxTreeNodes = std::size_t(1) << 20;

// All members of f with size in [1, max_size], certified finite first.
inline std::vector<FiniteSet> tree_pool(const FamilySpec& f, std::uint64_t max_size,
                                        Budget& budget, std::size_t pool_guard) {
  std::uint64_t total = 0;
  for (std::uint64_t m = 1; m <= max_size; ++m) {
    Cardinality c = size_class_count(f, m);
    if (c.is_infinite()) {
      throw error(errc::pool_infinite,
                  "size class " + std::to_string(m) + " is infinite");
    }
    if (c.is_unknown()) {
      throw error(errc::uncertified, "size class " + std::to_string(m) + " is unknown");
    }
    total += c.count();
  }
  if (total > pool_guard) {
    throw error(errc::pool_too_large, "pool of " + std::to_string(total) +
                                          " sets exceeds the guard " +
                                          std::to_string(pool_guard));
  }
  std::vector<FiniteSet> pool;
  pool.reserve(total);
  MemberStream stream(f);
  while (pool.size() < total) {
    MemberStream::Pull p = stream.next(budget);
    if (p.status == MemberStream::Pull::Status::out_of_budget) {
      throw error(errc::budget_exhausted, "pool enumeration ran out of budget");
    }
    if (p.status == MemberStream::Pull::Status::finished) break;
    if (p.value.size() <= max_size) pool.push_back(std::move(p.value));
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline bool extends_sunflower(const std::vector<FiniteSet>& chosen, const FiniteSet& candidate) {
  if (chosen.size() < 1) return true;
  FiniteSet core = intersect(chosen[0], chosen.size() >= 2 ? chosen[1] : candidate);
  for (const auto& m : chosen) {
    if (intersect(m, candidate) != core) return false;
  }
  return true;
}

// Enumerates every sunflower subfamily of the pool whose minimum member size
// is <= n, in canonical (DFS preorder) order. The pool must be canonically
// sorted, so the first chosen member realizes the minimum size.
template <typename Fn>
void for_each_tree_node(const std::vector<FiniteSet>& pool, std::uint64_t n, Fn&& visit) {
  std::vector<FiniteSet> chosen;
  std::size_t emitted = 0;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < pool.size(); ++i) {
      if (chosen.empty() && pool[i].size() > n) break;  // min size would exceed n
      if (!extends_sunflower(chosen, pool[i])) continue;
      chosen.push_back(pool[i]);
      if (++emitted > kMaxTreeNodes) {
        throw error(errc::too_large, "tree level exceeds the node cap");
      }
      visit(const_cast<const std::vector<FiniteSet>&>(chosen));
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

// Level k of the n-th sunflower tree: all nonempty sunflower subfamilies of
// {s in f : |s| <= n+k} that contain a member of size <= n.
inline TreeLevel tree_level(const FamilySpec& f, std::uint64_t n, std::uint64_t k,
                            Budget& budget, std::size_t pool_guard = 24) {
  std::vector<FiniteSet> pool = detail::tree_pool(f, n + k, budget, pool_guard);
  TreeLevel level{n, k, {}};
  detail::for_each_tree_node(pool, n, [&](const std::vector<FiniteSet>& node) {
    level.nodes.push_back(FiniteFamily::from_distinct(node));
  });
  return level;
}

// Children of a level-k node at level k+1: the extensions of the node by
// sets of size exactly n+k+1, the stagnant child (the node itself) included.
inline std::vector<FiniteFamily> children(const FamilySpec& f, std::uint64_t n, std::uint64_t k,
                                          const FiniteFamily& node, Budget& budget,
                                          std::size_t pool_guard = 24) {
  if (node.empty()) throw error(errc::invalid_node, "tree nodes are nonempty");
  if (!is_sunflower(node).verdict) {
    throw error(errc::not_a_sunflower, "node is not a sunflower");
  }
  std::vector<FiniteSet> pool = detail::tree_pool(f, n + k, budget, pool_guard);
  std::uint64_t min_size = node[0].size(), max_size = node[0].size();
  for (const auto& m : node) {
    min_size = std::min<std::uint64_t>(min_size, m.size());
    max_size = std::max<std::uint64_t>(max_size, m.size());
    if (std::find(pool.begin(), pool.end(), m) == pool.end()) {
      throw error(errc::invalid_node, "node member " + set_to_string(m) +
                                          " is not in the level pool");
    }
  }
  if (min_size > n || max_size > n + k) {
    throw error(errc::invalid_node, "node violates the level size window");
  }

  Cardinality next_class = size_class_count(f, n + k + 1);
  if (next_class.is_infinite()) {
    throw error(errc::pool_infinite,
                "size class " + std::to_string(n + k + 1) + " is infinite");
  }
  if (next_class.is_unknown()) {
    throw error(errc::uncertified,
                "size class " + std::to_string(n + k + 1) + " is unknown");
  }
  std::vector<FiniteSet> candidates;
  if (next_class.count() > 0) {
    Enumeration e = enumerate_family(FamilySpec::slice(n + k + 1, f), next_class.count(), budget);
    if (e.members.size() < next_class.count()) {
      throw error(errc::budget_exhausted, "candidate enumeration ran out of budget");
    }
    candidates = e.members.members();
    std::sort(candidates.begin(), candidates.end());
  }

  std::vector<FiniteFamily> out;
  std::vector<FiniteSet> chosen(node.begin(), node.end());
  auto emit = [&]() {
    FiniteFamily child = FiniteFamily::from_distinct(chosen).canonicalized();
    out.push_back(std::move(child));
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    emit();
    for (std::size_t i = start; i < candidates.size(); ++i) {
      if (!detail::extends_sunflower(chosen, candidates[i])) continue;
      chosen.push_back(candidates[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Growth statistics for levels 0..depth, from a single enumeration of the
// depth-level pool. A node enters at level max(0, max member size - n); the
// longest strict chain is realized by canonical prefixes of a largest node.
inline TreeStats tree_stats(const FamilySpec& f, std::uint64_t n, std::uint64_t depth,
                            Budget& budget, std::size_t pool_guard = 24) {
  std::vector<FiniteSet> pool = detail::tree_pool(f, n + depth, budget, pool_guard);
  TreeStats stats;
  stats.n = n;
  stats.depth = depth;
  std::vector<std::uint64_t> entering(depth + 1, 0);
  std::vector<FiniteSet> best_chain_node;
  detail::for_each_tree_node(pool, n, [&](const std::vector<FiniteSet>& node) {
    std::uint64_t max_size = 0;
    for (const auto& m : node) max_size = std::max<std::uint64_t>(max_size, m.size());
    std::uint64_t entry = max_size > n ? max_size - n : 0;
    ++entering[entry];
    if (node.size() > best_chain_node.size()) best_chain_node = node;
  });
  stats.per_level_counts.resize(depth + 1);
  std::uint64_t running = 0;
  for (std::uint64_t k = 0; k <= depth; ++k) {
    running += entering[k];
    stats.per_level_counts[k] = running;
  }
  stats.cumulative_distinct = stats.per_level_counts;  // levels are nested
  stats.longest_strict_chain = best_chain_node.size();
  for (std::size_t len = 1; len <= best_chain_node.size(); ++len) {
    stats.chain_witness.push_back(FiniteFamily::from_distinct(
        std::vector<FiniteSet>(best_chain_node.begin(), best_chain_node.begin() + len)));
  }
  return stats;
}

}  // namespace sunflower
