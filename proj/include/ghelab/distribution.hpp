#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "ghelab/group.hpp"
#include "ghelab/subgroup.hpp"

namespace ghelab {

/// A sampling distribution over a group's elements: probability mass
/// function plus a sampler. Immutable; samplers take an explicit Rng so
/// parallel trials never share state.
///
/// Masses whose denominators are powers of two (the uniform distribution
/// on power-of-two groups, and the skewed bitvector distribution below)
/// are exact in double precision at desk scale, so covering probabilities
/// over them sum exactly.
class GroupDistribution {
 public:
  /// pmf(x) = 1/|G| for every x.
  static GroupDistribution uniform(Group support) {
    auto impl = std::make_shared<Impl>(std::move(support));
    impl->kind = "uniform";
    return GroupDistribution(std::move(impl));
  }

  /// Heavily skewed distribution on bitvector(lambda), lambda >= 2:
  ///   pmf(v) = 2^-(lambda-1) - 2^-(lambda(lambda-1))  if v1 = 0
  ///   pmf(v) = 2^-(lambda(lambda-1))                  otherwise.
  /// The v1=1 half carries total mass 2^-((lambda-1)^2), so samples with a
  /// leading 1 are vanishingly rare even though every element is reachable.
  static GroupDistribution exotic(unsigned lambda) {
    if (lambda < 2 || lambda > 16)
      throw ParameterError("exotic: lambda must be in [2, 16]");
    auto impl = std::make_shared<Impl>(Group::bitvector(lambda));
    impl->kind = "exotic";
    impl->lambda = lambda;
    return GroupDistribution(std::move(impl));
  }

  /// Explicit pmf over support.enumerate() order (lexicographic).
  static GroupDistribution table(Group support, std::vector<double> pmf) {
    auto impl = std::make_shared<Impl>(std::move(support));
    impl->kind = "table";
    impl->elements = impl->support.enumerate();
    if (pmf.size() != impl->elements.size())
      throw ParameterError("table: pmf has " + std::to_string(pmf.size()) +
                           " entries for a group of order " +
                           std::to_string(impl->elements.size()));
    double total = 0;
    for (double p : pmf) {
      if (!(p >= 0))
        throw ParameterError("table: pmf entries must be non-negative");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw ParameterError("table: pmf sums to " + std::to_string(total) +
                           ", expected 1 within 1e-9");
    impl->masses = std::move(pmf);
    impl->cumulative.resize(impl->masses.size());
    double acc = 0;
    for (std::size_t i = 0; i < impl->masses.size(); ++i) {
      acc += impl->masses[i];
      impl->cumulative[i] = acc;
    }
    impl->cumulative.back() = 1.0;
    impl->mass_by_index.reserve(impl->elements.size());
    for (std::size_t i = 0; i < impl->elements.size(); ++i)
      impl->mass_by_index.emplace(impl->support.index_of(impl->elements[i]),
                                  impl->masses[i]);
    return GroupDistribution(std::move(impl));
  }

  const Group& support() const { return impl_->support; }
  const std::string& kind() const { return impl_->kind; }
  unsigned exotic_lambda() const { return impl_->lambda; }

  double pmf(const Element& x) const {
    impl_->support.require_valid(x);
    if (impl_->kind == "uniform")
      return 1.0 / static_cast<double>(impl_->support.order());
    if (impl_->kind == "exotic") {
      const double rare = rare_mass();
      return x[0] == 0 ? std::ldexp(1.0, -int(impl_->lambda - 1)) - rare
                       : rare;
    }
    return impl_->mass_by_index.at(impl_->support.index_of(x));
  }

  Element sample(Rng& rng) const {
    if (impl_->kind == "uniform") return impl_->support.sample_uniform(rng);
    if (impl_->kind == "exotic") {
      const unsigned lambda = impl_->lambda;
      // P(v1 = 1) equals the total mass of that half, 2^-((lambda-1)^2);
      // exact under the 53-bit bernoulli for lambda <= 8.
      const double p_rare =
          std::ldexp(1.0, -int((lambda - 1) * (lambda - 1)));
      Element v(lambda);
      v[0] = rng.bernoulli(p_rare) ? 1 : 0;
      for (unsigned i = 1; i < lambda; ++i) v[i] = rng.below(2);
      return v;
    }
    const double u = rng.real();
    const auto it = std::upper_bound(impl_->cumulative.begin(),
                                     impl_->cumulative.end(), u);
    const std::size_t pos = std::min<std::size_t>(
        it - impl_->cumulative.begin(), impl_->elements.size() - 1);
    return impl_->elements[pos];
  }

  Sampler sampler() const {
    auto self = *this;
    return [self](Rng& rng) { return self.sample(rng); };
  }

  /// Total mass of the v1=1 half of the exotic distribution.
  double rare_half_mass() const {
    if (impl_->kind != "exotic")
      throw ParameterError("rare_half_mass: distribution is not exotic");
    return std::ldexp(1.0, -int((impl_->lambda - 1) * (impl_->lambda - 1)));
  }

 private:
  struct Impl {
    explicit Impl(Group g) : support(std::move(g)) {}
    Group support;
    std::string kind;
    unsigned lambda = 0;
    std::vector<Element> elements;
    std::vector<double> masses;
    std::vector<double> cumulative;
    std::unordered_map<std::uint64_t, double> mass_by_index;
  };

  double rare_mass() const {
    return std::ldexp(1.0, -int(impl_->lambda * (impl_->lambda - 1)));
  }

  explicit GroupDistribution(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

/// Pr[x in sub] for x drawn from d: the sum of d's pmf over the closure.
inline double covering_probability(const Subgroup& sub,
                                   const GroupDistribution& d) {
  if (d.support() != sub.parent())
    throw DomainError(
        "covering_probability: distribution support differs from the "
        "subgroup's parent group");
  double total = 0;
  for (const Element& e : sub.elements()) total += d.pmf(e);
  return total;
}

inline bool is_delta_covering(const Subgroup& sub, const GroupDistribution& d,
                              double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw ParameterError("is_delta_covering: delta must be in [0, 1]");
  return covering_probability(sub, d) >= delta;
}

/// Sorts the support by descending mass (ties broken by canonical element
/// order), takes the smallest prefix h1..hb with cumulative mass >= delta
/// (always at least one element), and returns <h1,...,hb>. The result is
/// delta-covering by construction.
inline Subgroup greedy_covering_generators(
    const GroupDistribution& d, double delta,
    std::uint64_t cap = kDefaultClosureCap) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw ParameterError("greedy_covering_generators: delta must be in [0, 1]");
  std::vector<Element> elems = d.support().enumerate();
  std::stable_sort(elems.begin(), elems.end(),
                   [&](const Element& a, const Element& b) {
                     return d.pmf(a) > d.pmf(b);
                   });
  std::vector<Element> prefix;
  double acc = 0;
  for (const Element& e : elems) {
    prefix.push_back(e);
    acc += d.pmf(e);
    if (acc >= delta) break;
  }
  return Subgroup(d.support(), std::move(prefix), cap);
}

}  // namespace ghelab
