#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ghelab/games.hpp"
#include "ghelab/genset.hpp"
#include "ghelab/order_oracle.hpp"

namespace ghelab {

/// Membership decision from two order-oracle queries: |<gens>| and
/// |<gens, z>| are equal exactly when z already lies in <gens>. Outputs 0
/// ("member") iff the two reported orders agree. With a perfect oracle
/// and generators spanning the hidden subgroup this is a perfect decider.
inline int attack_with_generators(const Group& g,
                                  const std::vector<Element>& generators,
                                  const Element& z, const OrderOracle& oracle,
                                  Rng& rng,
                                  std::uint64_t cap = kDefaultClosureCap) {
  if (generators.empty())
    throw ParameterError("attack_with_generators: generator list is empty");
  const std::uint64_t base = oracle(g, generators, rng, cap);
  std::vector<Element> extended = generators;
  extended.push_back(z);
  const std::uint64_t with_z = oracle(g, extended, rng, cap);
  return base == with_z ? 0 : 1;
}

/// Membership adversary for uniformly sampled subgroups: draws k+4
/// subgroup samples as generators and decides by order comparison.
/// Success probability at least (3/4)(1-eps)^2 over the joint randomness.
inline SmpAdversary attack_uniform(unsigned k, OrderOracle oracle,
                                   std::uint64_t cap = kDefaultClosureCap) {
  if (k < 1) throw ParameterError("attack_uniform: k must be >= 1");
  return [k, oracle, cap](const SmpInstance& instance, const Element& z,
                          Rng& rng) {
    std::vector<Element> generators;
    generators.reserve(k + 4);
    for (unsigned i = 0; i < k + 4; ++i)
      generators.push_back(instance.sample_member(rng));
    return attack_with_generators(instance.group, generators, z, oracle, rng,
                                  cap);
  };
}

/// Membership adversary for arbitrary (unknown) sampling distributions:
/// chooses delta = delta_star = sqrt(1 - eps_star), draws N*k + 1 samples
/// with the blind generating-set sampler, and decides by order
/// comparison. Success probability at least (1 - eps_star)(1 - eps)^2.
inline SmpAdversary attack_arbitrary(unsigned k, double eps_star,
                                     OrderOracle oracle,
                                     std::uint64_t cap = kDefaultClosureCap) {
  if (k < 1) throw ParameterError("attack_arbitrary: k must be >= 1");
  if (!(eps_star > 0.0 && eps_star < 1.0))
    throw ParameterError("attack_arbitrary: eps_star must be in (0, 1)");
  const double delta = std::sqrt(1.0 - eps_star);
  return [k, delta, oracle, cap](const SmpInstance& instance, const Element& z,
                                 Rng& rng) {
    std::vector<Element> generators =
        sample_generators_blind(instance.sample_member, k, delta, delta, rng);
    return attack_with_generators(instance.group, generators, z, oracle, rng,
                                  cap);
  };
}

/// Distinguisher exploiting the half-deterministic wrapped encryption:
/// commits to (m*, random other message) and guesses "m*" exactly when
/// the challenge equals the public fixed ciphertext enc(m*; r*).
inline IndcpaAdversary estar_distinguisher(const Scheme& base,
                                           const Element& m_star,
                                           std::uint64_t r_star) {
  base.plaintext.require_valid(m_star);
  const Element fixed = base.encrypt(m_star, r_star);
  IndcpaAdversary adversary;
  adversary.choose_messages = [base, m_star](Rng& rng) {
    Element other = base.sample_message(rng);
    while (other == m_star) other = base.sample_message(rng);
    return std::make_pair(m_star, other);
  };
  adversary.guess = [fixed](const Element& challenge, Rng&) {
    return challenge == fixed ? 0 : 1;
  };
  return adversary;
}

/// Monte Carlo probe of the two-sided condition that makes the order
/// attack bite on a scheme: for candidate subgroup generators G_gens,
///   p_in  = Pr[ enc(m)      in <G_gens> ]
///   p_out = Pr[ enc(m') not in <G_gens> ]
/// both estimated over fresh encryption randomness.
struct ConditionProbe {
  std::uint64_t trials = 0;
  double p_in = 0.0;
  double p_out = 0.0;
  double halfwidth = 0.0;
};

inline ConditionProbe sufficient_condition_probe(
    const Scheme& scheme, const Element& m, const Element& m_prime,
    const std::vector<Element>& candidate_generators, std::uint64_t trials,
    std::uint64_t master_seed, std::uint64_t cap = kDefaultClosureCap) {
  if (trials == 0)
    throw ParameterError("sufficient_condition_probe: trials >= 1");
  scheme.plaintext.require_valid(m);
  scheme.plaintext.require_valid(m_prime);
  Subgroup sub(scheme.ciphertext_space, candidate_generators, cap);
  sub.elements();  // surface closure overflow before the trial loop

  std::uint64_t in_count = 0, out_count = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = Rng::derive(master_seed, i);
    if (sub.contains(scheme.encrypt_fresh(m, rng))) ++in_count;
    if (!sub.contains(scheme.encrypt_fresh(m_prime, rng))) ++out_count;
  }
  ConditionProbe probe;
  probe.trials = trials;
  probe.p_in = double(in_count) / double(trials);
  probe.p_out = double(out_count) / double(trials);
  probe.halfwidth = 1.96 * std::sqrt(0.25 / double(trials));
  return probe;
}

}  // namespace ghelab
