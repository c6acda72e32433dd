#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "ghelab/qpe.hpp"
#include "ghelab/subgroup.hpp"

namespace ghelab {

/// |<S>| computed exactly by classical closure. Stands in for the quantum
/// order-finding subroutine with error probability 0; the subroutine's
/// runtime contract is deliberately not honored, this is desk scale only.
inline std::uint64_t exact_order(const Group& g,
                                 const std::vector<Element>& generators,
                                 std::uint64_t cap = kDefaultClosureCap) {
  return subgroup_order(g, generators, cap);
}

/// |<S>| with failure probability error_rate in [0, 1). A failing call
/// returns twice the true order, which is guaranteed wrong and adversarial
/// for equality-of-orders deciders, so measured attack success is a valid
/// lower-bound check against the (1-eps)^2 analyses. Failures across
/// calls are independent.
inline std::uint64_t noisy_order(const Group& g,
                                 const std::vector<Element>& generators,
                                 double error_rate, Rng& rng,
                                 std::uint64_t cap = kDefaultClosureCap) {
  if (!(error_rate >= 0.0 && error_rate < 1.0))
    throw ParameterError("noisy_order: error rate must be in [0, 1)");
  const std::uint64_t truth = exact_order(g, generators, cap);
  const bool fail = error_rate > 0.0 && rng.bernoulli(error_rate);
  return fail ? 2 * truth : truth;
}

/// A procedure returning |<S>| from a generating set, correct with
/// probability at least 1 - eps. Three realizations: exact classical,
/// eps-noisy, and the statevector phase-estimation demo (restricted to
/// single-generator subgroups of (Z/n)^*). Stateless given the Rng.
class OrderOracle {
 public:
  static OrderOracle exact() { return OrderOracle(Kind::Exact, 0.0, 0, 0); }

  static OrderOracle noisy(double error_rate) {
    if (!(error_rate >= 0.0 && error_rate < 1.0))
      throw ParameterError("OrderOracle::noisy: error rate must be in [0, 1)");
    return OrderOracle(Kind::Noisy, error_rate, 0, 0);
  }

  static OrderOracle quantum_cyclic(unsigned precision_qubits,
                                    unsigned shots) {
    if (shots == 0)
      throw ParameterError("OrderOracle::quantum_cyclic: shots >= 1");
    return OrderOracle(Kind::QuantumCyclic, 0.0, precision_qubits, shots);
  }

  std::uint64_t operator()(const Group& g,
                           const std::vector<Element>& generators, Rng& rng,
                           std::uint64_t cap = kDefaultClosureCap) const {
    switch (kind_) {
      case Kind::Exact:
        return exact_order(g, generators, cap);
      case Kind::Noisy:
        return noisy_order(g, generators, error_rate_, rng, cap);
      case Kind::QuantumCyclic: {
        if (g.family() != GroupFamily::MultMod)
          throw ParameterError(
              "quantum_cyclic oracle: group must be multmod(n)");
        std::unordered_set<std::uint64_t> distinct;
        for (const Element& e : generators) {
          g.require_valid(e);
          distinct.insert(e[0]);
        }
        if (distinct.size() != 1)
          throw ParameterError(
              "quantum_cyclic oracle: exactly one distinct generator "
              "required");
        return quantum_order_finding(*distinct.begin(), g.modulus(),
                                     precision_qubits_, shots_, rng)
            .order_estimate;
      }
    }
    return 0;
  }

  double error_rate() const { return error_rate_; }

 private:
  enum class Kind { Exact, Noisy, QuantumCyclic };

  OrderOracle(Kind kind, double error_rate, unsigned precision_qubits,
              unsigned shots)
      : kind_(kind),
        error_rate_(error_rate),
        precision_qubits_(precision_qubits),
        shots_(shots) {}

  Kind kind_;
  double error_rate_;
  unsigned precision_qubits_;
  unsigned shots_;
};

}  // namespace ghelab
