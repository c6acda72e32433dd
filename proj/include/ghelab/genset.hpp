#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "ghelab/distribution.hpp"
#include "ghelab/group.hpp"
#include "ghelab/parallel.hpp"
#include "ghelab/subgroup.hpp"

namespace ghelab {

/// Number of samples per extension round,
///   N = ceil((log2(1 - delta_star) - log2(k)) / log2(delta)),
/// clamped below at 1. The ratio is base-invariant; base 2 is fixed here
/// so the reported numbers are unambiguous. With delta = delta_star =
/// sqrt(3)/2 this satisfies N <= 7 * (ceil(log2 k) + 2).
inline std::uint64_t samples_per_round(unsigned k, double delta,
                                       double delta_star) {
  if (k < 1) throw ParameterError("samples_per_round: k must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw ParameterError("samples_per_round: delta must be in (0, 1)");
  if (!(delta_star > 0.0 && delta_star < 1.0))
    throw ParameterError("samples_per_round: delta_star must be in (0, 1)");
  const double numerator = std::log2(1.0 - delta_star) - std::log2(double(k));
  const double n = std::ceil(numerator / std::log2(delta));
  if (!(n >= 1.0)) return 1;
  return static_cast<std::uint64_t>(n);
}

/// Per-round sampling parameters for the generating-set samplers.
struct SamplerConfig {
  unsigned k = 1;            // ceil(log2 |H|)
  double delta = 0.5;        // covering threshold
  double delta_star = 0.5;   // success threshold
  std::uint64_t samples_per_round = 1;

  static SamplerConfig make(unsigned k, double delta, double delta_star) {
    SamplerConfig c;
    c.k = k;
    c.delta = delta;
    c.delta_star = delta_star;
    c.samples_per_round = ghelab::samples_per_round(k, delta, delta_star);
    return c;
  }
};

/// Transcript of one run of the membership-tested sampler.
struct GenSetTrace {
  std::vector<Element> generating_set;  // deduplicated, first-seen order
  /// order_trace[0] is the order after the seed sample; each further entry
  /// is the order after a round that extended the set.
  std::vector<std::uint64_t> order_trace;
  std::vector<bool> round_extended;  // one entry per executed round
  std::uint64_t samples_drawn = 0;
  bool aborted = false;
};

/// Membership-tested generating-set sampler. Draws one seed sample, then
/// up to k rounds of N fresh samples each; a round whose samples all lie
/// in <S> aborts the loop (and its samples are discarded, matching the
/// early-exit reading), otherwise the samples join S. Duplicates are
/// dropped on insertion; the closure is unaffected.
inline GenSetTrace sample_generators_tested(
    const Group& g, const Sampler& sample, unsigned k, double delta,
    double delta_star, Rng& rng, std::uint64_t cap = kDefaultClosureCap) {
  const SamplerConfig config = SamplerConfig::make(k, delta, delta_star);
  const std::uint64_t per_round = config.samples_per_round;
  GenSetTrace trace;

  std::unordered_set<std::uint64_t> seen;
  auto insert = [&](const Element& e) {
    if (seen.insert(g.index_of(e)).second) trace.generating_set.push_back(e);
  };

  Element seed = sample(rng);
  g.require_valid(seed);
  ++trace.samples_drawn;
  insert(seed);

  Subgroup current(g, trace.generating_set, cap);
  trace.order_trace.push_back(current.order());

  for (unsigned round = 1; round <= k; ++round) {
    std::vector<Element> batch;
    batch.reserve(per_round);
    for (std::uint64_t i = 0; i < per_round; ++i) {
      batch.push_back(sample(rng));
      g.require_valid(batch.back());
    }
    trace.samples_drawn += per_round;

    bool all_inside = true;
    for (const Element& e : batch)
      if (!current.contains(e)) {
        all_inside = false;
        break;
      }

    if (all_inside) {
      trace.round_extended.push_back(false);
      trace.aborted = true;
      break;
    }
    for (const Element& e : batch) insert(e);
    trace.round_extended.push_back(true);
    current = Subgroup(g, trace.generating_set, cap);
    trace.order_trace.push_back(current.order());
  }
  return trace;
}

/// Blind generating-set sampler: exactly N*k + 1 samples, returned
/// verbatim. On the same randomness stream its output is a superset of
/// the membership-tested sampler's output, so it inherits that sampler's
/// success probability.
inline std::vector<Element> sample_generators_blind(const Sampler& sample,
                                                    unsigned k, double delta,
                                                    double delta_star,
                                                    Rng& rng) {
  const SamplerConfig config = SamplerConfig::make(k, delta, delta_star);
  const std::uint64_t per_round = config.samples_per_round;
  std::vector<Element> out;
  out.reserve(per_round * k + 1);
  for (std::uint64_t i = 0; i < per_round * k + 1; ++i)
    out.push_back(sample(rng));
  return out;
}

/// Fraction of seeded trials in which k+extra uniform samples generate the
/// whole group, k = ceil(log2 |G|). Success is decided exactly from the
/// subgroup order, never estimated.
inline double pak_bratus_estimate(const Group& g, unsigned extra,
                                  std::uint64_t trials,
                                  std::uint64_t master_seed,
                                  unsigned threads = 1,
                                  std::uint64_t cap = kDefaultClosureCap) {
  if (trials == 0) throw ParameterError("pak_bratus_estimate: trials >= 1");
  const unsigned k = ceil_log2(g.order());
  const std::uint64_t samples = std::uint64_t{k} + extra;
  const std::uint64_t successes = detail::count_successes(
      trials, master_seed, threads, [&](std::uint64_t, Rng& rng) {
        std::vector<Element> draw;
        draw.reserve(samples);
        for (std::uint64_t i = 0; i < samples; ++i)
          draw.push_back(g.sample_uniform(rng));
        return Subgroup(g, std::move(draw), cap).order() == g.order();
      });
  return static_cast<double>(successes) / static_cast<double>(trials);
}

}  // namespace ghelab
