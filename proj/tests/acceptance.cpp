// Acceptance suite: runs every bundled empirical claim at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exit status is
// the number of failed criteria. All experiments run single-threaded
// from the fixed master seed below.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "ghelab/attack.hpp"

using namespace ghelab;

namespace {

constexpr std::uint64_t kSeed = 42;

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

void report(int id, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

double halfwidth(std::uint64_t trials) {
  return 1.96 * std::sqrt(0.25 / double(trials));
}

std::set<Element> identity_encryptions(const Scheme& s) {
  std::set<Element> out;
  for (std::uint64_t r = 0; r < s.randomness_size; ++r)
    out.insert(s.encrypt(s.identity_message(), r));
  return out;
}

std::set<Element> encryption_image(const Scheme& s) {
  std::set<Element> image;
  for (const Element& m : s.plaintext.enumerate())
    for (std::uint64_t r = 0; r < s.randomness_size; ++r)
      image.insert(s.encrypt(m, r));
  return image;
}

SmpAdversary omniscient_adversary(const Scheme& s) {
  auto members = std::make_shared<std::unordered_set<std::uint64_t>>();
  for (const Element& c : identity_encryptions(s))
    members->insert(s.ciphertext_space.index_of(c));
  return [members](const SmpInstance& inst, const Element& z, Rng&) {
    return members->count(inst.group.index_of(z)) ? 0 : 1;
  };
}

Scheme elgamal_23_5() {
  Rng keygen = Rng::derive(kSeed, 0xe19);
  return make_toy_elgamal(23, 5, keygen);
}

// 1. Generation rate of k+4 uniform samples on bitvector(8): at least
//    3/4 and within 0.01 of the closed-form product, in under 30 s.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  Group g = Group::bitvector(8);
  const std::uint64_t trials = 20000;
  const double empirical = pak_bratus_estimate(g, 4, trials, kSeed);
  double product = 1.0;
  for (int i = 0; i < 8; ++i) product *= 1.0 - std::ldexp(1.0, -(12 - i));
  const double elapsed = seconds_since(start);
  const bool pass = empirical >= 0.75 &&
                    std::abs(empirical - product) <= 0.01 && elapsed <= 30.0;
  report(1, "uniform-sampling generation rate", pass,
         fmt("empirical %.5f, exact %.6f, |diff| %.5f <= 0.01, %.1fs",
             empirical, product, std::abs(empirical - product), elapsed));
}

// 2. Blind sampler on the skewed distribution: at least a 0.9 fraction of
//    2000 seeded runs yields an exactly verified 0.9-covering subgroup.
void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  const auto dist = GroupDistribution::exotic(6);
  const Group& g = dist.support();
  const Sampler sampler = dist.sampler();
  const std::uint64_t trials = 2000;
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(kSeed, t);
    Subgroup sub(g, sample_generators_blind(sampler, 6, 0.9, 0.9, rng));
    if (covering_probability(sub, dist) >= 0.9) ++successes;
  }
  const double fraction = double(successes) / double(trials);
  const double threshold = 0.9 - halfwidth(trials);
  const double elapsed = seconds_since(start);
  const bool pass = fraction >= threshold && elapsed <= 120.0;
  report(2, "covering fraction of the blind sampler", pass,
         fmt("fraction %.4f >= %.4f, %.1fs", fraction, threshold, elapsed));
}

// 3. Membership-tested sampler on uniform bitvector(6): every completed
//    extension round at least doubles the subgroup order; zero
//    violations across 10^4 trials.
void criterion_3() {
  const auto dist = GroupDistribution::uniform(Group::bitvector(6));
  const Group& g = dist.support();
  const Sampler sampler = dist.sampler();
  const std::uint64_t trials = 10000;
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(kSeed, t);
    const GenSetTrace trace =
        sample_generators_tested(g, sampler, 6, 0.9, 0.9, rng);
    for (std::size_t i = 0; i + 1 < trace.order_trace.size(); ++i)
      if (trace.order_trace[i + 1] < 2 * trace.order_trace[i]) ++violations;
    for (std::size_t l = 0; l < trace.order_trace.size(); ++l)
      if (trace.order_trace[l] < (std::uint64_t{1} << l)) ++violations;
  }
  report(3, "order doubling per extension round", violations == 0,
         fmt("%llu violations across %llu trials",
             (unsigned long long)violations, (unsigned long long)trials));
}

// 4. Order-comparison attack with full subgroup generators and the exact
//    oracle: error-free on exhaustive challenge sweeps.
void criterion_4() {
  std::uint64_t errors = 0, checked = 0;
  const OrderOracle oracle = OrderOracle::exact();
  Rng keygen = Rng::derive(kSeed, 0x41);
  const Scheme schemes[] = {make_toy_elgamal(7, 3, keygen),
                            make_goldwasser_micali(7, 11)};
  for (const Scheme& s : schemes) {
    const auto members = identity_encryptions(s);
    const std::vector<Element> gens(members.begin(), members.end());
    Rng rng = Rng::derive(kSeed, 0x42);
    for (const Element& z : encryption_image(s)) {
      const int want = members.count(z) ? 0 : 1;
      if (attack_with_generators(s.ciphertext_space, gens, z, oracle, rng) !=
          want)
        ++errors;
      ++checked;
    }
  }
  report(4, "generator attack, exhaustive challenge sweep", errors == 0,
         fmt("%llu errors over %llu challenges", (unsigned long long)errors,
             (unsigned long long)checked));
}

// 5. Uniform-sampling attack bound on elgamal(23, 5): success at least
//    0.75 (1-eps)^2 minus one halfwidth, for eps in {0, 0.1}.
void criterion_5() {
  const Scheme s = elgamal_23_5();
  const SmpInstance inst = smp_from_scheme(s);
  const unsigned k = ceil_log2(inst.subgroup_order_hint);  // 5
  const std::uint64_t trials = 5000;
  bool pass = true;
  std::string detail;
  for (const double eps : {0.0, 0.1}) {
    const auto start = std::chrono::steady_clock::now();
    const OrderOracle oracle =
        eps == 0.0 ? OrderOracle::exact() : OrderOracle::noisy(eps);
    const AdvantageReport r =
        smp_experiment(inst, attack_uniform(k, oracle), trials, kSeed);
    const double bound = 0.75 * (1.0 - eps) * (1.0 - eps);
    const double elapsed = seconds_since(start);
    const bool ok =
        r.success_rate() >= bound - r.halfwidth() && elapsed <= 120.0;
    pass = pass && ok;
    detail += fmt("eps=%.1f: %.4f >= %.4f in %.1fs; ", eps, r.success_rate(),
                  bound - r.halfwidth(), elapsed);
  }
  report(5, "uniform attack success bound", pass, detail);
}

// 6. Arbitrary-sampling attack at eps* = 1/4 on elgamal(23, 5) and on the
//    skewed embedded instance: success at least (3/4)(1-eps)^2 minus one
//    halfwidth, with exactly N*k + 1 samples per game and N within
//    7 (ceil(log2 k) + 2).
void criterion_6() {
  const double eps_star = 0.25;
  const double delta = std::sqrt(1.0 - eps_star);
  const std::uint64_t trials = 5000;
  bool pass = true;
  std::string detail;

  struct Case {
    std::string name;
    SmpInstance instance;
  };
  std::vector<Case> cases;
  cases.push_back({"elgamal", smp_from_scheme(elgamal_23_5())});
  cases.push_back({"skewed", exotic_bitvector_instance(6)});

  for (auto& c : cases) {
    const unsigned k = ceil_log2(c.instance.subgroup_order_hint);
    const std::uint64_t per_round = samples_per_round(k, delta, delta);
    const std::uint64_t expected_samples = per_round * k + 1;
    const bool n_ok = per_round <= 7 * (ceil_log2(k) + 2);

    std::uint64_t bad_counts = 0;
    const SmpAdversary inner = attack_arbitrary(k, eps_star,
                                                OrderOracle::exact());
    const SmpAdversary counted = [&](const SmpInstance& inst,
                                     const Element& z, Rng& rng) {
      auto count = std::make_shared<std::uint64_t>(0);
      SmpInstance local = inst;
      local.sample_member = [orig = inst.sample_member, count](Rng& r) {
        ++*count;
        return orig(r);
      };
      const int d = inner(local, z, rng);
      if (*count != expected_samples) ++bad_counts;
      return d;
    };
    const AdvantageReport r =
        smp_experiment(c.instance, counted, trials, kSeed);
    const double bound = 0.75;  // (3/4)(1-eps)^2 with the exact oracle
    const bool ok = r.success_rate() >= bound - r.halfwidth() &&
                    bad_counts == 0 && n_ok;
    pass = pass && ok;
    detail += fmt("%s: %.4f >= %.4f, N=%llu<=%u, samples=%llu; ",
                  c.name.c_str(), r.success_rate(), bound - r.halfwidth(),
                  (unsigned long long)per_round, 7 * (ceil_log2(k) + 2),
                  (unsigned long long)expected_samples);
  }
  report(6, "arbitrary-sampling attack bound", pass, detail);
}

// 7. The relayed adversary's distinguishing advantage matches its direct
//    membership advantage within the sum of halfwidths at 10^4 trials.
void criterion_7() {
  const Scheme s = elgamal_23_5();
  const SmpInstance inst = smp_from_scheme(s);
  const std::uint64_t trials = 10000;
  bool pass = true;
  std::string detail;

  struct Case {
    std::string name;
    SmpAdversary adversary;
  };
  const Case cases[] = {
      {"omniscient", omniscient_adversary(s)},
      {"attack-uniform", attack_uniform(5, OrderOracle::exact())}};
  for (const Case& c : cases) {
    const AdvantageReport direct =
        smp_experiment(inst, c.adversary, trials, kSeed);
    const AdvantageReport reduced = indcpa_experiment(
        s, reduce_smp_to_indcpa(s, c.adversary), trials, kSeed);
    const double diff = std::abs(direct.advantage() - reduced.advantage());
    const double tolerance = direct.halfwidth() + reduced.halfwidth();
    const bool ok = diff <= tolerance;
    pass = pass && ok;
    detail += fmt("%s: |%.4f - %.4f| = %.4f <= %.4f; ", c.name.c_str(),
                  direct.advantage(), reduced.advantage(), diff, tolerance);
  }
  report(7, "reduction advantage fidelity", pass, detail);
}

// 8. The distinguisher against the half-deterministic wrapper has
//    advantage 0.25 +/- 0.02 at 10^4 trials, and advantage at most 0.02
//    against the unwrapped scheme.
void criterion_8() {
  const Scheme base = elgamal_23_5();
  const Element m_star{2};
  const std::uint64_t r_star = 3;
  const Scheme wrapped = make_estar(base, m_star, r_star);
  const IndcpaAdversary adv = estar_distinguisher(base, m_star, r_star);
  const std::uint64_t trials = 10000;

  const AdvantageReport on_wrapped =
      indcpa_experiment(wrapped, adv, trials, kSeed);
  const AdvantageReport on_base = indcpa_experiment(base, adv, trials, kSeed);
  const bool wrapped_ok = std::abs(on_wrapped.advantage() - 0.25) <= 0.02;
  const bool base_ok = on_base.advantage() <= 0.02;
  report(8, "deterministic-reencryption distinguisher", wrapped_ok && base_ok,
         fmt("wrapped %.4f in 0.25 +/- 0.02; base %.4f <= 0.02",
             on_wrapped.advantage(), on_base.advantage()));
}

// 9. Exhaustive coset-structure verification passes on both bundled
//    schemes, and the collapsed-decryption control fails with a witness.
void criterion_9() {
  Rng keygen = Rng::derive(kSeed, 0x91);
  const Scheme elgamal = make_toy_elgamal(7, 3, keygen);
  const Scheme gm = make_goldwasser_micali(7, 11);

  const Fact1Report a = fact1_check(elgamal);
  const Fact1Report b = fact1_check(gm);
  const Fact1Report c = fact1_check(with_decrypt_collapsed(elgamal));
  bool c_witnessed = !c.passed && !c.failures.empty();
  for (const std::string& f : c.failures)
    if (f.find("witness") != std::string::npos) c_witnessed = true;
  const bool pass = a.passed && a.image_size == 36 &&
                    a.identity_class_size == 6 && b.passed &&
                    b.image_size == 30 && b.identity_class_size == 15 &&
                    c_witnessed;
  report(9, "identity-class coset structure", pass,
         fmt("elgamal |C|=%llu |C1|=%llu ok=%d; gm |C|=%llu |C1|=%llu ok=%d; "
             "control failures=%zu",
             (unsigned long long)a.image_size,
             (unsigned long long)a.identity_class_size, int(a.passed),
             (unsigned long long)b.image_size,
             (unsigned long long)b.identity_class_size, int(b.passed),
             c.failures.size()));
}

// 10. Phase-estimation demo: the 20-shot estimate recovers order 4 for
//     a=2, n=15 in at least 99 of 100 seeded repetitions within 60 s,
//     and the per-shot decode count matches its calibrated value.
void criterion_10() {
  const auto start = std::chrono::steady_clock::now();
  const unsigned reps = 100, shots = 20;
  unsigned recovered = 0;
  std::uint64_t decode_hits = 0;
  for (unsigned rep = 0; rep < reps; ++rep) {
    Rng rng = Rng::derive(kSeed, rep);
    const OrderFindingResult r = quantum_order_finding(2, 15, 8, shots, rng);
    if (r.order_estimate == 4) ++recovered;
    for (const auto& shot : r.shots)
      if (shot.decoded_order && *shot.decoded_order == 4) ++decode_hits;
  }
  // Calibrated per-shot decode count for this seed (rate 983/2000; the
  // exact peak analysis puts the true rate at 1/2).
  const std::uint64_t pinned_hits = 983;
  const double elapsed = seconds_since(start);
  const bool pass =
      recovered >= 99 && decode_hits == pinned_hits && elapsed <= 60.0;
  report(10, "phase-estimation order recovery", pass,
         fmt("recovered %u/100, per-shot hits %llu (pinned %llu), %.1fs",
             recovered, (unsigned long long)decode_hits,
             (unsigned long long)pinned_hits, elapsed));
}

}  // namespace

int main() {
  std::printf("acceptance suite, master seed %llu\n",
              (unsigned long long)kSeed);
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
