#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "sunflower/enumerate.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family_spec.hpp"
#include "sunflower/finite_set.hpp"

namespace sunflower {

// Image of one source set under the tagged coding: original a -> 2a, and
// n - |s| fresh odd codes 2j+1 drawn from a single monotone counter.
inline FiniteSet pad_image(const FiniteSet& s, std::uint64_t bound, std::uint64_t& counter,
                           std::vector<Element>* fresh_out = nullptr) {
  if (s.size() > bound) {
    throw error(errc::bound_violation, "member " + set_to_string(s) + " exceeds pad bound " +
                                           std::to_string(bound));
  }
  std::vector<Element> xs;
  xs.reserve(bound);
  for (Element e : s) xs.push_back(2 * e);
  for (std::uint64_t k = s.size(); k < bound; ++k) {
    Element fresh = 2 * counter++ + 1;
    xs.push_back(fresh);
    if (fresh_out) fresh_out->push_back(fresh);
  }
  return FiniteSet(std::move(xs));
}

// The original part of a padded set: {a : 2a in p}.
inline FiniteSet unpad_set(const FiniteSet& p) {
  std::vector<Element> xs;
  for (Element e : p) {
    if (e % 2 == 0) xs.push_back(e / 2);
  }
  return FiniteSet::from_sorted_unique(std::move(xs));
}

struct PaddedFamily {
  std::variant<FiniteFamily, FamilySpec> target;
  std::uint64_t bound = 0;
  // Source-to-image association in enumeration order. For a spec target this
  // holds only the prefix materialized so far (empty until requested).
  std::vector<std::pair<FiniteSet, FiniteSet>> map;
  std::vector<std::vector<Element>> counter_trace;  // fresh codes per member

  const FiniteFamily& family() const { return std::get<FiniteFamily>(target); }
  const FamilySpec& spec() const { return std::get<FamilySpec>(target); }
};

inline PaddedFamily pad_family(const FiniteFamily& x, std::uint64_t bound) {
  if (bound == 0) throw error(errc::non_positive_parameter, "pad requires bound >= 1");
  PaddedFamily out;
  out.bound = bound;
  std::uint64_t counter = 0;
  std::vector<FiniteSet> images;
  images.reserve(x.size());
  for (const auto& s : x) {
    std::vector<Element> fresh;
    FiniteSet image = pad_image(s, bound, counter, &fresh);
    images.push_back(image);
    out.map.emplace_back(s, std::move(image));
    out.counter_trace.push_back(std::move(fresh));
  }
  out.target = FiniteFamily::from_distinct(std::move(images));
  return out;
}

// Lazy form for specs: the target is Pad(bound, x). The bound is certified
// structurally by the Pad factory; the map materializes per prefix.
inline PaddedFamily pad_family(const FamilySpec& x, std::uint64_t bound) {
  PaddedFamily out;
  out.bound = bound;
  out.target = FamilySpec::pad(bound, x);
  return out;
}

// Materializes the source-to-image map for the first k members of a spec.
inline std::vector<std::pair<FiniteSet, FiniteSet>> materialize_pad_map(
    const FamilySpec& inner, std::uint64_t bound, std::uint64_t k, Budget& budget) {
  Enumeration sources = enumerate_family(inner, k, budget);
  std::vector<std::pair<FiniteSet, FiniteSet>> map;
  std::uint64_t counter = 0;
  for (const auto& s : sources.members) {
    FiniteSet image = pad_image(s, bound, counter);
    map.emplace_back(s, std::move(image));
  }
  return map;
}

}  // namespace sunflower
