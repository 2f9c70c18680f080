#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sunflower/enumerate.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family_spec.hpp"
#include "sunflower/finite_set.hpp"
#include "sunflower/oracles.hpp"

namespace sunflower {

// Lazy infinite sunflower: every emitted prefix of >= 2 members is a
// sunflower with the stated core. Single-consumer; next() throws
// BudgetExhausted when the budget runs out and can be retried, the stream
// state is left intact.
class SunflowerStream {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual FiniteSet next(Budget& budget) = 0;
  };

  SunflowerStream(FiniteSet core, std::unique_ptr<Impl> impl)
      : core_(std::move(core)), impl_(std::move(impl)) {}

  const FiniteSet& core() const { return core_; }
  std::uint64_t emitted() const { return emitted_; }

  FiniteSet next(Budget& budget) {
    FiniteSet s = impl_->next(budget);
    ++emitted_;
    return s;
  }

  FiniteSet next() {
    Budget budget;
    return next(budget);
  }

  // Convenience: the next `count` members, one fresh default budget per pull.
  FiniteFamily take(std::uint64_t count) {
    std::vector<FiniteSet> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(next());
    return FiniteFamily::from_distinct(std::move(out));
  }

 private:
  FiniteSet core_;
  std::unique_ptr<Impl> impl_;
  std::uint64_t emitted_ = 0;
};

enum class ExtractionTerminal { base1, disjoint };

struct ExtractionPlan {
  std::vector<Element> pinned;  // Case 1 choices, in pin order
  FamilySpec residual;          // the Strip(Link(...)) stack after pinning
  ExtractionTerminal terminal;
  std::uint64_t member_size = 0;  // uniform size n of the source

  FiniteSet pinned_set() const { return FiniteSet(std::vector<Element>(pinned)); }
};

// Certifies that f is an infinite family of n-element sets and returns n.
inline std::uint64_t check_uniform(const FamilySpec& f) {
  Cardinality total = member_count(f);
  if (total.is_finite()) {
    throw error(errc::not_infinite, "family is finite (" + std::to_string(total.count()) +
                                        " members)");
  }
  if (total.is_unknown()) {
    throw error(errc::uncertified, "member count of " + f.to_string() + " is unknown");
  }
  SizeBound bound = max_member_size(f);
  if (!bound.bounded) {
    throw error(errc::not_uniform, "member sizes are unbounded");
  }
  std::uint64_t uniform = 0;
  bool found = false;
  for (std::uint64_t m = 1; m <= bound.value; ++m) {
    Cardinality c = size_class_count(f, m);
    if (c.is_unknown()) {
      throw error(errc::uncertified, "size class " + std::to_string(m) + " is unknown");
    }
    if (c.is_finite() && c.count() == 0) continue;
    if (found) {
      throw error(errc::not_uniform, "members of sizes " + std::to_string(uniform) + " and " +
                                         std::to_string(m) + " both occur");
    }
    uniform = m;
    found = true;
    if (!c.is_infinite()) {
      throw error(errc::not_infinite, "only finitely many members in the single size class");
    }
  }
  if (!found) {
    throw error(errc::uncertified, "no nonempty size class found below the bound");
  }
  return uniform;
}

// While some element has infinite degree, pin the first such element
// (ascending over elements of enumerated members, dovetailed with deeper
// enumeration) and recurse on its stripped link; stop at member size 1 or
// once every degree is certifiably finite.
inline ExtractionPlan plan_extraction(const FamilySpec& f, Budget budget = Budget{}) {
  std::uint64_t n = check_uniform(f);
  ExtractionPlan plan{{}, f, ExtractionTerminal::base1, n};
  std::uint64_t size = n;

  while (size > 1) {
    Trivalent finite_everywhere = all_point_degrees_finite(plan.residual);
    if (finite_everywhere == Trivalent::unknown) {
      throw error(errc::oracle_incomplete, "degree finiteness of the residual is unknown");
    }
    if (finite_everywhere == Trivalent::yes) {
      plan.terminal = ExtractionTerminal::disjoint;
      return plan;
    }

    // Some element has infinite degree; find the first one.
    MemberStream stream(plan.residual);
    std::set<Element> untested;
    std::set<Element> tested;
    std::uint64_t chunk = 8;
    bool stream_finished = false;
    bool pinned_this_round = false;
    while (!pinned_this_round) {
      for (std::uint64_t pulls = 0; pulls < chunk && !stream_finished; ++pulls) {
        MemberStream::Pull p = stream.next(budget);
        if (p.status == MemberStream::Pull::Status::out_of_budget) {
          throw error(errc::budget_exhausted, "pin search ran out of budget");
        }
        if (p.status == MemberStream::Pull::Status::finished) {
          stream_finished = true;
          break;
        }
        for (Element e : p.value) {
          if (!tested.count(e)) untested.insert(e);
        }
      }
      if (stream_finished && untested.empty()) {
        throw error(errc::oracle_incomplete, "no infinite-degree element found");
      }
      for (Element e : untested) {
        Cardinality d = point_degree(plan.residual, e);
        if (d.is_unknown()) {
          throw error(errc::oracle_incomplete, "point degree of " + std::to_string(e) +
                                                   " is unknown");
        }
        tested.insert(e);
        if (d.is_infinite()) {
          plan.pinned.push_back(e);
          plan.residual = FamilySpec::strip(e, FamilySpec::link(e, plan.residual));
          --size;
          pinned_this_round = true;
          break;
        }
      }
      untested.clear();
      chunk *= 2;
    }
  }
  plan.terminal = ExtractionTerminal::base1;
  return plan;
}

// Exactly the members of f meeting the union of q0, computed as the union
// of the links over the elements of that union. Finite under Case 2.
inline FiniteFamily interfering_sets(const FamilySpec& f, const FiniteFamily& q0,
                                     Budget& budget) {
  FiniteSet support;
  for (const auto& m : q0) support = set_union(support, m);
  FiniteFamily out;
  for (Element a : support) {
    Cardinality d = point_degree(f, a);
    if (d.is_unknown()) {
      throw error(errc::oracle_incomplete,
                  "point degree of " + std::to_string(a) + " is unknown");
    }
    if (d.is_infinite()) {
      throw error(errc::oracle_incomplete,
                  "element " + std::to_string(a) + " has infinite degree (not Case 2)");
    }
    Enumeration link = enumerate_family(FamilySpec::link(a, f), d.count(), budget);
    if (link.exhausted) {
      throw error(errc::budget_exhausted, "link enumeration ran out of budget");
    }
    for (const auto& m : link.members) out.add(m);
  }
  return out;
}

namespace detail {

// Base-case stream: residual members are singletons {x}; emit pinned + {x}.
struct Base1Stream final : SunflowerStream::Impl {
  MemberStream residual;
  FiniteSet pinned;

  Base1Stream(const FamilySpec& residual_spec, FiniteSet pinned_set)
      : residual(residual_spec), pinned(std::move(pinned_set)) {}

  FiniteSet next(Budget& budget) override {
    MemberStream::Pull p = residual.next(budget);
    if (p.status == MemberStream::Pull::Status::out_of_budget) {
      throw error(errc::budget_exhausted, "stream ran out of budget; retry with more");
    }
    if (p.status == MemberStream::Pull::Status::finished) {
      throw error(errc::budget_exhausted, "residual enumeration finished unexpectedly");
    }
    return set_union(pinned, p.value);
  }
};

// Case 2 stream: greedily keep residual members disjoint from everything
// already used, then re-attach the pinned elements.
struct DisjointStream final : SunflowerStream::Impl {
  MemberStream residual;
  FiniteSet pinned;
  FiniteSet used;

  DisjointStream(const FamilySpec& residual_spec, FiniteSet pinned_set)
      : residual(residual_spec), pinned(std::move(pinned_set)) {}

  FiniteSet next(Budget& budget) override {
    while (true) {
      MemberStream::Pull p = residual.next(budget);
      if (p.status == MemberStream::Pull::Status::out_of_budget) {
        throw error(errc::budget_exhausted, "stream ran out of budget; retry with more");
      }
      if (p.status == MemberStream::Pull::Status::finished) {
        throw error(errc::budget_exhausted, "residual enumeration finished unexpectedly");
      }
      if (!disjoint(p.value, used)) continue;
      used = set_union(used, p.value);
      return set_union(pinned, p.value);
    }
  }
};

}  // namespace detail

// An infinite sunflower stream from an infinite uniform family. The core is
// exactly the pinned set of the extraction plan.
inline SunflowerStream extract_uniform_sunflower(const FamilySpec& f,
                                                 Budget planning_budget = Budget{}) {
  ExtractionPlan plan = plan_extraction(f, planning_budget);
  FiniteSet core = plan.pinned_set();
  if (plan.terminal == ExtractionTerminal::base1) {
    return SunflowerStream(core, std::make_unique<detail::Base1Stream>(plan.residual, core));
  }
  return SunflowerStream(core, std::make_unique<detail::DisjointStream>(plan.residual, core));
}

}  // namespace sunflower
