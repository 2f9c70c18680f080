#pragma once

#include <cstdint>
#include <memory>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sunflower/error.hpp"
#include "sunflower/family_spec.hpp"
#include "sunflower/finite_set.hpp"
#include "sunflower/fn_table.hpp"
#include "sunflower/pairing.hpp"

namespace sunflower {

// Single-consumer stream of the distinct members of a spec, in the spec's
// canonical enumeration order. Pulls are atomic with respect to the budget:
// an out-of-budget pull leaves the stream state unchanged, so callers can
// retry with a fresh budget.
class MemberStream {
 public:
  struct Pull {
    enum class Status { member, finished, out_of_budget };
    Status status;
    FiniteSet value;  // meaningful iff status == member
  };

  explicit MemberStream(const FamilySpec& spec) : root_(build(spec)) {}

  Pull next(Budget& budget) { return root_->next(budget); }

 private:
  struct Node {
    virtual ~Node() = default;
    virtual Pull next(Budget& budget) = 0;
  };

  static Pull member(FiniteSet s) { return {Pull::Status::member, std::move(s)}; }
  static Pull finished() { return {Pull::Status::finished, {}}; }
  static Pull out_of_budget() { return {Pull::Status::out_of_budget, {}}; }

  struct ExplicitNode : Node {
    FiniteFamily family;
    std::size_t index = 0;

    explicit ExplicitNode(FiniteFamily f) : family(std::move(f)) {}

    Pull next(Budget& budget) override {
      if (index >= family.size()) return finished();
      if (!budget.try_consume()) return out_of_budget();
      return member(family[index++]);
    }
  };

  struct InitialSegmentsNode : Node {
    Element n = 1;

    Pull next(Budget& budget) override {
      if (!budget.try_consume()) return out_of_budget();
      std::vector<Element> xs(n);
      for (Element i = 0; i < n; ++i) xs[i] = i;
      ++n;
      return member(FiniteSet::from_sorted_unique(std::move(xs)));
    }
  };

  struct MatchingNode : Node {
    std::uint64_t width;
    std::uint64_t block = 0;

    explicit MatchingNode(std::uint64_t w) : width(w) {}

    Pull next(Budget& budget) override {
      if (!budget.try_consume()) return out_of_budget();
      std::vector<Element> xs(width);
      for (std::uint64_t i = 0; i < width; ++i) xs[i] = block * width + i;
      ++block;
      return member(FiniteSet::from_sorted_unique(std::move(xs)));
    }
  };

  struct StarNode : Node {
    FiniteSet center;
    Element x;

    explicit StarNode(FiniteSet c)
        : center(std::move(c)), x(center.empty() ? 0 : center.max() + 1) {}

    Pull next(Budget& budget) override {
      if (!budget.try_consume()) return out_of_budget();
      return member(center.with(x++));
    }
  };

  struct GradedBlocksNode : Node {
    std::uint64_t block = 1;
    std::uint64_t j = 1;

    Pull next(Budget& budget) override {
      if (!budget.try_consume()) return out_of_budget();
      std::vector<Element> xs;
      xs.reserve(block + 1);
      for (std::uint64_t i = 0; i < block; ++i) xs.push_back(2 * i);
      xs.push_back(2 * cantor_pair(block, j) + 1);
      FiniteSet s(std::move(xs));
      if (++j > block) {
        ++block;
        j = 1;
      }
      return member(std::move(s));
    }
  };

  // Staged: stage s yields the backbone set E(s,0), then E(n, row_n(m)) for
  // the (n,m) with pair code s if row n is defined at m. Duplicates are
  // suppressed in first-occurrence order.
  struct GadgetNode : Node {
    FnTable table;
    std::uint64_t stage = 0;
    bool backbone_pending = true;
    std::unordered_set<FiniteSet, FiniteSetHash> seen;

    explicit GadgetNode(FnTable t) : table(std::move(t)) {}

    Pull next(Budget& budget) override {
      while (true) {
        if (backbone_pending) {
          if (!budget.try_consume()) return out_of_budget();
          FiniteSet s = eset(stage, 0);
          backbone_pending = false;
          if (seen.insert(s).second) return member(std::move(s));
          continue;
        }
        auto [n, m] = cantor_unpair(stage);
        ++stage;
        backbone_pending = true;
        if (auto v = table.row(n).eval(m)) {
          if (!budget.try_consume()) {
            // undo the stage advance so the retry re-examines this pair
            --stage;
            backbone_pending = false;
            return out_of_budget();
          }
          FiniteSet s = eset(n, *v);
          if (seen.insert(s).second) return member(std::move(s));
        }
      }
    }
  };

  // Strict left/right alternation over distinct child members; cross-side
  // duplicates are suppressed at first occurrence.
  struct UnionNode : Node {
    std::unique_ptr<Node> left, right;
    bool turn_left = true;
    bool left_done = false, right_done = false;
    std::unordered_set<FiniteSet, FiniteSetHash> seen;

    UnionNode(std::unique_ptr<Node> l, std::unique_ptr<Node> r)
        : left(std::move(l)), right(std::move(r)) {}

    Pull next(Budget& budget) override {
      while (!(left_done && right_done)) {
        bool use_left = left_done ? false : (right_done ? true : turn_left);
        Node* side = use_left ? left.get() : right.get();
        Pull p = side->next(budget);
        if (p.status == Pull::Status::out_of_budget) return p;
        if (p.status == Pull::Status::finished) {
          (use_left ? left_done : right_done) = true;
          continue;
        }
        turn_left = !use_left;
        if (seen.insert(p.value).second) return p;
      }
      return finished();
    }
  };

  struct PadNode : Node {
    std::unique_ptr<Node> inner;
    std::uint64_t bound;
    std::uint64_t next_fresh = 0;

    PadNode(std::unique_ptr<Node> i, std::uint64_t b) : inner(std::move(i)), bound(b) {}

    Pull next(Budget& budget) override {
      Pull p = inner->next(budget);
      if (p.status != Pull::Status::member) return p;
      if (p.value.size() > bound) {
        throw error(errc::bound_violation, "padded member exceeds the bound");
      }
      std::vector<Element> xs;
      xs.reserve(bound);
      for (Element e : p.value) xs.push_back(2 * e);
      for (std::uint64_t k = p.value.size(); k < bound; ++k) {
        xs.push_back(2 * next_fresh++ + 1);
      }
      return member(FiniteSet(std::move(xs)));
    }
  };

  struct FilterNode : Node {
    std::unique_ptr<Node> inner;
    FamilySpec::Kind kind;
    std::uint64_t param;

    FilterNode(std::unique_ptr<Node> i, FamilySpec::Kind k, std::uint64_t p)
        : inner(std::move(i)), kind(k), param(p) {}

    Pull next(Budget& budget) override {
      while (true) {
        Pull p = inner->next(budget);
        if (p.status != Pull::Status::member) return p;
        switch (kind) {
          case FamilySpec::Kind::link:
            if (p.value.contains(param)) return p;
            break;
          case FamilySpec::Kind::strip:
            if (p.value.contains(param)) {
              FiniteSet stripped = p.value.without(param);
              if (!stripped.empty()) return member(std::move(stripped));
            }
            break;
          case FamilySpec::Kind::slice:
            if (p.value.size() == param) return p;
            break;
          default:
            break;
        }
      }
    }
  };

  static std::unique_ptr<Node> build(const FamilySpec& spec) {
    using Kind = FamilySpec::Kind;
    switch (spec.kind()) {
      case Kind::explicit_members:
        return std::make_unique<ExplicitNode>(spec.members());
      case Kind::initial_segments:
        return std::make_unique<InitialSegmentsNode>();
      case Kind::matching:
        return std::make_unique<MatchingNode>(spec.param());
      case Kind::star:
        return std::make_unique<StarNode>(spec.center());
      case Kind::graded_blocks:
        return std::make_unique<GradedBlocksNode>();
      case Kind::gadget:
        return std::make_unique<GadgetNode>(spec.table());
      case Kind::union_families:
        return std::make_unique<UnionNode>(build(spec.left()), build(spec.right()));
      case Kind::pad:
        return std::make_unique<PadNode>(build(spec.inner()), spec.param());
      case Kind::link:
      case Kind::strip:
      case Kind::slice:
        return std::make_unique<FilterNode>(build(spec.inner()), spec.kind(), spec.param());
    }
    throw error(errc::invalid_node, "unknown spec kind");
  }

  std::unique_ptr<Node> root_;
};

struct Enumeration {
  FiniteFamily members;
  bool exhausted = false;  // true when the budget ran out before k members
};

// Up to k distinct members in canonical enumeration order. The result for k
// is a prefix of the result for k+1 under the same budget start.
inline Enumeration enumerate_family(const FamilySpec& f, std::uint64_t k, Budget& budget) {
  MemberStream stream(f);
  std::vector<FiniteSet> out;
  while (out.size() < k) {
    MemberStream::Pull p = stream.next(budget);
    if (p.status == MemberStream::Pull::Status::member) {
      out.push_back(std::move(p.value));
    } else if (p.status == MemberStream::Pull::Status::finished) {
      return {FiniteFamily::from_distinct(std::move(out)), false};
    } else {
      return {FiniteFamily::from_distinct(std::move(out)), true};
    }
  }
  return {FiniteFamily::from_distinct(std::move(out)), false};
}

inline Enumeration enumerate_family(const FamilySpec& f, std::uint64_t k) {
  Budget budget;
  return enumerate_family(f, k, budget);
}

}  // namespace sunflower
