#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "ghelab/numeric.hpp"
#include "ghelab/rng.hpp"

namespace ghelab {

/// One measurement of the phase register.
struct ShotRecord {
  std::uint64_t phase_numerator = 0;  // measured y, a value in [0, 2^t)
  unsigned precision_qubits = 0;      // t
  /// Classically verified order candidate recovered from y, when one
  /// exists; always divides the true order of a mod n.
  std::optional<std::uint64_t> decoded_order;
};

struct Fraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
};

/// Best convergent s/r of y/Q with r <= denom_bound (the last convergent
/// of the continued-fraction expansion whose denominator fits the bound),
/// or none when even the first convergent does not fit.
inline std::optional<Fraction> continued_fraction_decode(
    std::uint64_t y, std::uint64_t q, std::uint64_t denom_bound) {
  if (q == 0 || y >= q)
    throw ParameterError("continued_fraction_decode: need 0 <= y < Q");
  std::uint64_t num = y, den = q;
  std::uint64_t h_prev = 1, h_prev2 = 0;  // convergent numerators
  std::uint64_t k_prev = 0, k_prev2 = 1;  // convergent denominators
  std::optional<Fraction> best;
  while (den != 0) {
    const std::uint64_t a = num / den;
    const std::uint64_t h = a * h_prev + h_prev2;
    const std::uint64_t k = a * k_prev + k_prev2;
    if (k > denom_bound) break;
    best = Fraction{h, k};
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const std::uint64_t r = num % den;
    num = den;
    den = r;
  }
  return best;
}

namespace detail {

// In-place radix-2 transform with e^{-2pi i xy/N} kernel, normalized by
// 1/sqrt(N). Applied to the control register column per work value.
inline void inverse_fourier_normalized(std::vector<std::complex<double>>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> root(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto u = v[i + j];
        const auto t = v[i + j + len / 2] * w;
        v[i + j] = u + t;
        v[i + j + len / 2] = u - t;
        w *= root;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& x : v) x *= scale;
}

// Order candidate from one measured phase: walk the convergents of y/Q,
// verify denominators against a^r = 1 mod n, and reduce a verified
// candidate to the minimal valid order so the result always divides the
// true order.
inline std::optional<std::uint64_t> decode_order_from_phase(std::uint64_t y,
                                                            std::uint64_t q,
                                                            std::uint64_t a,
                                                            std::uint64_t n) {
  std::uint64_t num = y, den = q;
  std::uint64_t h_prev = 1, h_prev2 = 0;
  std::uint64_t k_prev = 0, k_prev2 = 1;
  while (den != 0) {
    const std::uint64_t aa = num / den;
    const std::uint64_t h = aa * h_prev + h_prev2;
    const std::uint64_t k = aa * k_prev + k_prev2;
    if (k > n) break;
    if (k >= 1 && pow_mod(a, k, n) == 1) {
      std::uint64_t r = k;
      for (std::uint64_t p : prime_factors(r))
        while (r % p == 0 && pow_mod(a, r / p, n) == 1) r /= p;
      return r;
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const std::uint64_t rem = num % den;
    num = den;
    den = rem;
  }
  return std::nullopt;
}

}  // namespace detail

/// Measurement distribution over the 2^t control values for phase
/// estimation of the multiply-by-a permutation on Z_n, simulated as a
/// statevector: uniform superposition on the controls, modular
/// exponentiation as a classical permutation on the work register
/// (started at 1), inverse Fourier transform on the controls.
inline std::vector<double> phase_measurement_distribution(
    std::uint64_t a, std::uint64_t n, unsigned precision_qubits) {
  if (n < 2 || n > 64)
    throw ParameterError("phase estimation: n must be in [2, 64]");
  if (precision_qubits < 1 || precision_qubits > 12)
    throw ParameterError("phase estimation: precision must be in [1, 12]");
  a %= n;
  if (a == 0 || std::gcd(a, n) != 1)
    throw ParameterError("phase estimation: gcd(a, n) must be 1");

  const std::uint64_t q = std::uint64_t{1} << precision_qubits;
  // Work register value after the controlled multiplications is a^x mod n,
  // so the joint state is supported on pairs (x, a^x).
  std::vector<std::uint64_t> work(q);
  std::uint64_t w = 1 % n;
  for (std::uint64_t x = 0; x < q; ++x) {
    work[x] = w;
    w = mul_mod(w, a, n);
  }
  std::vector<std::vector<std::uint64_t>> positions(n);
  for (std::uint64_t x = 0; x < q; ++x) positions[work[x]].push_back(x);

  const double amp = 1.0 / std::sqrt(static_cast<double>(q));
  std::vector<double> prob(q, 0.0);
  std::vector<std::complex<double>> column(q);
  for (std::uint64_t value = 0; value < n; ++value) {
    if (positions[value].empty()) continue;
    std::fill(column.begin(), column.end(), std::complex<double>(0.0, 0.0));
    for (std::uint64_t x : positions[value]) column[x] = amp;
    detail::inverse_fourier_normalized(column);
    for (std::uint64_t y = 0; y < q; ++y) prob[y] += std::norm(column[y]);
  }
  return prob;
}

struct OrderFindingResult {
  /// Least common multiple of the decoded orders across shots; 0 when no
  /// shot decoded.
  std::uint64_t order_estimate = 0;
  std::vector<ShotRecord> shots;
};

/// Order-finding demo for the cyclic subgroup <a> of (Z/n)^*: simulates
/// the phase-estimation circuit once, samples `shots` measurements, and
/// decodes each by continued fractions with denominator bound n.
inline OrderFindingResult quantum_order_finding(std::uint64_t a,
                                                std::uint64_t n,
                                                unsigned precision_qubits,
                                                unsigned shots, Rng& rng) {
  const std::vector<double> prob =
      phase_measurement_distribution(a, n, precision_qubits);
  std::vector<double> cumulative(prob.size());
  double acc = 0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    acc += prob[i];
    cumulative[i] = acc;
  }
  cumulative.back() = std::max(cumulative.back(), 1.0);

  const std::uint64_t q = std::uint64_t{1} << precision_qubits;
  OrderFindingResult result;
  result.shots.reserve(shots);
  for (unsigned s = 0; s < shots; ++s) {
    const double u = rng.real();
    const std::size_t y =
        std::upper_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin();
    ShotRecord record;
    record.phase_numerator = std::min<std::uint64_t>(y, q - 1);
    record.precision_qubits = precision_qubits;
    record.decoded_order =
        detail::decode_order_from_phase(record.phase_numerator, q, a % n, n);
    if (record.decoded_order)
      result.order_estimate = result.order_estimate == 0
                                  ? *record.decoded_order
                                  : std::lcm(result.order_estimate,
                                             *record.decoded_order);
    result.shots.push_back(record);
  }
  return result;
}

}  // namespace ghelab
