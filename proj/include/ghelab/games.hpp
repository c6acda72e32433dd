#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ghelab/distribution.hpp"
#include "ghelab/group.hpp"
#include "ghelab/parallel.hpp"
#include "ghelab/schemes.hpp"

namespace ghelab {

/// Outcome of a seeded decision game.
struct AdvantageReport {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;

  double success_rate() const {
    return trials == 0 ? 0.0
                       : static_cast<double>(successes) /
                             static_cast<double>(trials);
  }
  /// |success rate - 1/2|, in [0, 1/2].
  double advantage() const { return std::abs(success_rate() - 0.5); }
  /// Conservative 95% halfwidth, 1.96 * sqrt(0.25 / trials).
  double halfwidth() const {
    return trials == 0 ? 0.0 : 1.96 * std::sqrt(0.25 / double(trials));
  }
};

/// A subgroup-membership challenge: an ambient group G, a sampler for the
/// hidden subgroup H, and a sampler for G \ H. Generators of H may be
/// attached when known, but the standard instances leave them empty; the
/// attacks must work from samples alone. subgroup_order_hint carries |H|
/// when the instance construction knows it (it determines k).
struct SmpInstance {
  Group group = Group::bitvector(1);
  Sampler sample_member;
  Sampler sample_nonmember;
  std::vector<Element> subgroup_generators;
  std::uint64_t subgroup_order_hint = 0;
};

/// Decision procedure: given the instance and a challenge element, output
/// 0 for "member" and 1 for "non-member". Must be a pure function of its
/// inputs and the stream.
using SmpAdversary =
    std::function<int(const SmpInstance&, const Element&, Rng&)>;

/// Per trial: fair bit b, challenge z from H (b = 0) or G \ H (b = 1),
/// success iff the adversary outputs b.
inline AdvantageReport smp_experiment(const SmpInstance& instance,
                                      const SmpAdversary& adversary,
                                      std::uint64_t trials,
                                      std::uint64_t master_seed,
                                      unsigned threads = 1) {
  AdvantageReport report;
  report.trials = trials;
  report.successes = detail::count_successes(
      trials, master_seed, threads, [&](std::uint64_t, Rng& rng) {
        const int b = rng.coin();
        const Element z = b == 1 ? instance.sample_nonmember(rng)
                                 : instance.sample_member(rng);
        return adversary(instance, z, rng) == b;
      });
  return report;
}

/// Chosen-plaintext distinguishing game: the adversary commits to two
/// distinct messages, receives a fresh encryption of one of them chosen
/// by fair coin, and guesses which.
struct IndcpaAdversary {
  std::function<std::pair<Element, Element>(Rng&)> choose_messages;
  std::function<int(const Element& challenge, Rng&)> guess;
};

inline AdvantageReport indcpa_experiment(const Scheme& scheme,
                                         const IndcpaAdversary& adversary,
                                         std::uint64_t trials,
                                         std::uint64_t master_seed,
                                         unsigned threads = 1) {
  AdvantageReport report;
  report.trials = trials;
  report.successes = detail::count_successes(
      trials, master_seed, threads, [&](std::uint64_t, Rng& rng) {
        const auto [m0, m1] = adversary.choose_messages(rng);
        if (m0 == m1)
          throw GameError("indcpa_experiment: adversary chose equal messages");
        const int b = rng.coin();
        const Element challenge =
            scheme.encrypt(b == 1 ? m1 : m0, scheme.sample_randomness(rng));
        return adversary.guess(challenge, rng) == b;
      });
  return report;
}

/// The membership instance induced by a keyed scheme: the ambient group
/// is the ciphertext group, the hidden subgroup is the set of encryptions
/// of the identity message, and the complement sampler encrypts a uniform
/// non-identity message (fresh randomness in both cases).
inline SmpInstance smp_from_scheme(const Scheme& scheme) {
  if (scheme.plaintext.order() < 2)
    throw InstanceError(
        "smp_from_scheme: scheme has a trivial plaintext group");
  SmpInstance instance;
  instance.group = scheme.ciphertext_space;
  instance.sample_member = [scheme](Rng& rng) {
    return scheme.encrypt(scheme.identity_message(),
                          scheme.sample_randomness(rng));
  };
  instance.sample_nonmember = [scheme](Rng& rng) {
    const Element m = scheme.sample_message_nonidentity(rng);
    return scheme.encrypt(m, scheme.sample_randomness(rng));
  };
  // |H| = number of distinct identity encryptions, exact at desk scale.
  std::unordered_set<std::uint64_t> identity_class;
  const Element id = scheme.identity_message();
  for (std::uint64_t r = 0; r < scheme.randomness_size; ++r)
    identity_class.insert(
        scheme.ciphertext_space.index_of(scheme.encrypt(id, r)));
  instance.subgroup_order_hint = identity_class.size();
  return instance;
}

/// Membership instance with an adversarially skewed subgroup sampler:
/// ambient group bitvector(lambda + 1), hidden subgroup H = elements with
/// leading coordinate 0, member sampler the exotic distribution on the
/// trailing lambda coordinates, complement sampler uniform on the leading
/// coordinate 1 half.
inline SmpInstance exotic_bitvector_instance(unsigned lambda) {
  SmpInstance instance;
  instance.group = Group::bitvector(lambda + 1);
  const GroupDistribution skew = GroupDistribution::exotic(lambda);
  instance.sample_member = [skew, lambda](Rng& rng) {
    const Element inner = skew.sample(rng);
    Element z(lambda + 1, 0);
    for (unsigned i = 0; i < lambda; ++i) z[i + 1] = inner[i];
    return z;
  };
  instance.sample_nonmember = [lambda](Rng& rng) {
    Element z(lambda + 1);
    z[0] = 1;
    for (unsigned i = 0; i < lambda; ++i) z[i + 1] = rng.below(2);
    return z;
  };
  instance.subgroup_order_hint = std::uint64_t{1} << lambda;
  return instance;
}

/// The standard reduction: the returned distinguisher commits to
/// (identity, uniform non-identity message) and relays the challenge
/// ciphertext to the membership adversary on the scheme's induced
/// instance, forwarding its bit. Its distinguishing advantage equals the
/// membership adversary's advantage on that instance.
inline IndcpaAdversary reduce_smp_to_indcpa(const Scheme& scheme,
                                            const SmpAdversary& adversary) {
  auto instance = std::make_shared<const SmpInstance>(smp_from_scheme(scheme));
  IndcpaAdversary reduced;
  reduced.choose_messages = [scheme](Rng& rng) {
    return std::make_pair(scheme.identity_message(),
                          scheme.sample_message_nonidentity(rng));
  };
  reduced.guess = [instance, adversary](const Element& challenge, Rng& rng) {
    return adversary(*instance, challenge, rng);
  };
  return reduced;
}

}  // namespace ghelab
