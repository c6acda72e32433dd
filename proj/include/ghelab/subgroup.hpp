#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "ghelab/group.hpp"

namespace ghelab {

/// Default cap on materialized closures. The groups this lab targets are
/// exhaustively enumerable; hitting the cap signals non-desk-scale input.
inline constexpr std::uint64_t kDefaultClosureCap = std::uint64_t{1} << 20;

/// The subgroup generated by a list of elements. Closure, order, and
/// membership structures are computed lazily with compute-once semantics,
/// so a Subgroup can be shared across threads; once computed for fixed
/// generators they never change.
///
/// BitVector parents get a GF(2) linear-algebra fast path: membership and
/// order come from an xor echelon basis without materializing the closure.
/// Every other family uses breadth-first closure. Both paths agree.
class Subgroup {
 public:
  Subgroup(Group parent, std::vector<Element> generators,
           std::uint64_t closure_cap = kDefaultClosureCap)
      : state_(std::make_shared<State>()) {
    for (const Element& g : generators) parent.require_valid(g);
    state_->parent = std::move(parent);
    state_->generators = std::move(generators);
    state_->cap = closure_cap;
  }

  const Group& parent() const { return state_->parent; }
  const std::vector<Element>& generators() const { return state_->generators; }
  std::uint64_t closure_cap() const { return state_->cap; }

  bool contains(const Element& x) const {
    state_->parent.require_valid(x);
    if (bitvector_path()) {
      ensure_basis();
      return reduce_against_basis(to_mask(x), state_->basis) == 0;
    }
    ensure_closure();
    return state_->closure_index.count(state_->parent.index_of(x)) != 0;
  }

  std::uint64_t order() const {
    if (bitvector_path()) {
      ensure_basis();
      return std::uint64_t{1} << state_->basis.size();
    }
    ensure_closure();
    return state_->closure.size();
  }

  /// Materialized closure in lexicographic order. Contains the identity,
  /// is closed under compose and inverse, and has exactly order() entries.
  const std::vector<Element>& elements() const {
    ensure_closure();
    return state_->closure;
  }

 private:
  struct State {
    Group parent = Group::bitvector(1);
    std::vector<Element> generators;
    std::uint64_t cap = kDefaultClosureCap;

    std::once_flag basis_once;
    std::vector<std::uint64_t> basis;  // xor echelon rows

    std::once_flag closure_once;
    std::vector<Element> closure;  // lexicographic
    std::unordered_set<std::uint64_t> closure_index;
  };

  bool bitvector_path() const {
    return state_->parent.family() == GroupFamily::BitVector;
  }

  std::uint64_t to_mask(const Element& x) const {
    std::uint64_t m = 0;
    for (std::uint64_t bit : x) m = (m << 1) | bit;
    return m;
  }

  static std::uint64_t reduce_against_basis(
      std::uint64_t v, const std::vector<std::uint64_t>& basis) {
    for (std::uint64_t row : basis) v = std::min(v, v ^ row);
    return v;
  }

  void ensure_basis() const {
    std::call_once(state_->basis_once, [this] {
      std::vector<std::uint64_t> basis;
      for (const Element& g : state_->generators) {
        const std::uint64_t reduced =
            reduce_against_basis(to_mask(g), basis);
        if (reduced != 0) basis.push_back(reduced);
      }
      state_->basis = std::move(basis);
    });
  }

  void ensure_closure() const {
    std::call_once(state_->closure_once, [this] {
      if (bitvector_path())
        build_closure_from_basis();
      else
        build_closure_bfs();
    });
  }

  void build_closure_from_basis() const {
    ensure_basis();
    const std::size_t rank = state_->basis.size();
    if (rank >= 63 || (std::uint64_t{1} << rank) > state_->cap)
      throw ClosureOverflowError(
          "closure: subgroup of order 2^" + std::to_string(rank) +
          " exceeds cap " + std::to_string(state_->cap));
    const unsigned lambda = state_->parent.lambda();
    std::vector<std::uint64_t> masks;
    masks.reserve(std::size_t{1} << rank);
    masks.push_back(0);
    for (std::uint64_t row : state_->basis) {
      const std::size_t n = masks.size();
      for (std::size_t i = 0; i < n; ++i) masks.push_back(masks[i] ^ row);
    }
    std::sort(masks.begin(), masks.end());
    std::vector<Element> closure;
    closure.reserve(masks.size());
    std::unordered_set<std::uint64_t> index;
    index.reserve(masks.size());
    for (std::uint64_t m : masks) {
      Element e(lambda);
      for (unsigned i = 0; i < lambda; ++i)
        e[i] = (m >> (lambda - 1 - i)) & 1;
      index.insert(m);
      closure.push_back(std::move(e));
    }
    state_->closure = std::move(closure);
    state_->closure_index = std::move(index);
  }

  void build_closure_bfs() const {
    const Group& g = state_->parent;

    // Deduplicate generators; closure is unaffected and the product scan
    // stays proportional to the number of distinct generators.
    std::vector<Element> gens;
    {
      std::unordered_set<std::uint64_t> seen;
      for (const Element& e : state_->generators)
        if (seen.insert(g.index_of(e)).second) gens.push_back(e);
    }

    std::vector<Element> discovered;
    std::unordered_set<std::uint64_t> index;
    discovered.push_back(g.identity());
    index.insert(g.index_of(discovered.front()));

    Element scratch(g.element_width());
    for (std::size_t i = 0; i < discovered.size(); ++i) {
      for (const Element& gen : gens) {
        g.compose_into(discovered[i], gen, scratch);
        const std::uint64_t idx = g.index_of(scratch);
        if (index.insert(idx).second) {
          if (index.size() > state_->cap)
            throw ClosureOverflowError(
                "closure: size exceeds cap " + std::to_string(state_->cap) +
                " over " + g.describe());
          discovered.push_back(scratch);
        }
      }
    }
    std::sort(discovered.begin(), discovered.end());
    state_->closure = std::move(discovered);
    state_->closure_index = std::move(index);
  }

  std::shared_ptr<State> state_;
};

/// Smallest subgroup containing the given elements, closure materialized.
inline Subgroup closure(const Group& g, const std::vector<Element>& elements,
                        std::uint64_t cap = kDefaultClosureCap) {
  Subgroup sub(g, elements, cap);
  sub.elements();
  return sub;
}

inline bool membership(const Group& g, const Subgroup& sub, const Element& x) {
  if (g != sub.parent())
    throw DomainError("membership: subgroup lives over a different group");
  return sub.contains(x);
}

inline std::uint64_t subgroup_order(const Group& g,
                                    const std::vector<Element>& generators,
                                    std::uint64_t cap = kDefaultClosureCap) {
  return Subgroup(g, generators, cap).order();
}

}  // namespace ghelab
