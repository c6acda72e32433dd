#include <doctest.h>

#include <cmath>
#include <map>

#include "ghelab/distribution.hpp"

using namespace ghelab;

namespace {

// Total variation distance between empirical frequencies and the pmf.
double empirical_tv(const GroupDistribution& d, std::uint64_t samples,
                    std::uint64_t seed) {
  const Group& g = d.support();
  std::map<Element, std::uint64_t> counts;
  Rng rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) ++counts[d.sample(rng)];
  double tv = 0;
  for (const Element& e : g.enumerate()) {
    const auto it = counts.find(e);
    const double freq =
        it == counts.end() ? 0.0 : double(it->second) / double(samples);
    tv += std::abs(freq - d.pmf(e));
  }
  return tv / 2;
}

}  // namespace

TEST_CASE("uniform pmf values") {
  auto d4 = GroupDistribution::uniform(Group::bitvector(2));
  for (const Element& e : d4.support().enumerate())
    CHECK(d4.pmf(e) == doctest::Approx(0.25));
  auto d7 = GroupDistribution::uniform(Group::multmod(7));
  CHECK(d7.pmf({3}) == doctest::Approx(1.0 / 6));
}

TEST_CASE("exotic pmf matches the closed form exactly") {
  // lambda = 2 degenerates to the uniform distribution.
  auto d2 = GroupDistribution::exotic(2);
  for (const Element& e : d2.support().enumerate())
    CHECK(d2.pmf(e) == 0.25);

  auto d3 = GroupDistribution::exotic(3);
  CHECK(d3.pmf({0, 0, 0}) == 15.0 / 64.0);
  CHECK(d3.pmf({0, 1, 1}) == 15.0 / 64.0);
  CHECK(d3.pmf({1, 0, 0}) == 1.0 / 64.0);

  CHECK_THROWS_AS(GroupDistribution::exotic(1), ParameterError);
}

TEST_CASE("exotic pmf sums to one") {
  for (unsigned lambda = 2; lambda <= 8; ++lambda) {
    auto d = GroupDistribution::exotic(lambda);
    double total = 0;
    for (const Element& e : d.support().enumerate()) total += d.pmf(e);
    if (lambda <= 7)
      CHECK(total == 1.0);  // dyadic masses, sums exact in double
    else
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("exotic leading-one half carries mass 2^-((lambda-1)^2)") {
  for (unsigned lambda = 3; lambda <= 7; ++lambda) {
    auto d = GroupDistribution::exotic(lambda);
    double mass_one = 0;
    for (const Element& e : d.support().enumerate())
      if (e[0] == 1) mass_one += d.pmf(e);
    const double expected =
        std::ldexp(1.0, -int((lambda - 1) * (lambda - 1)));
    CHECK(mass_one == expected);
    CHECK(d.rare_half_mass() == expected);
    // Per-vector mass on that half is 2^-(lambda(lambda-1)), not 2^-lambda.
    Element rare_vector(lambda, 0);
    rare_vector[0] = 1;
    CHECK(d.pmf(rare_vector) ==
          std::ldexp(1.0, -int(lambda * (lambda - 1))));
  }
}

TEST_CASE("covering probability on worked examples") {
  auto d3 = GroupDistribution::exotic(3);
  const Group& g = d3.support();

  Subgroup whole = closure(g, g.enumerate());
  CHECK(covering_probability(whole, d3) == 1.0);

  Subgroup plane = closure(g, {Element{0, 1, 0}, Element{0, 0, 1}});
  CHECK(covering_probability(plane, d3) == 60.0 / 64.0);

  Subgroup trivial = closure(g, {g.identity()});
  CHECK(covering_probability(trivial, d3) == 15.0 / 64.0);

  auto mismatch = GroupDistribution::uniform(Group::bitvector(4));
  CHECK_THROWS_AS(covering_probability(plane, mismatch), DomainError);
}

TEST_CASE("delta-covering predicate") {
  auto d3 = GroupDistribution::exotic(3);
  const Group& g = d3.support();
  Subgroup whole = closure(g, g.enumerate());
  CHECK(is_delta_covering(whole, d3, 1.0));
  Subgroup plane = closure(g, {Element{0, 1, 0}, Element{0, 0, 1}});
  CHECK(is_delta_covering(plane, d3, 0.9));
  Subgroup trivial = closure(g, {g.identity()});
  CHECK_FALSE(is_delta_covering(trivial, d3, 0.5));
  CHECK_THROWS_AS(is_delta_covering(plane, d3, 1.2), ParameterError);
  CHECK_THROWS_AS(is_delta_covering(plane, d3, -0.1), ParameterError);
}

TEST_CASE("greedy covering generators") {
  auto d3 = GroupDistribution::exotic(3);

  // delta = 0 still takes one generator; the lex-least top-mass element
  // is the identity, so the subgroup is trivial.
  Subgroup zero = greedy_covering_generators(d3, 0.0);
  CHECK(zero.generators().size() == 1);
  CHECK(zero.generators()[0] == d3.support().identity());
  CHECK(is_delta_covering(zero, d3, 0.0));

  // delta = 0.9 takes the four leading-zero elements and spans that half.
  Subgroup plane = greedy_covering_generators(d3, 0.9);
  CHECK(plane.generators().size() == 4);
  CHECK(plane.order() == 4);
  CHECK(covering_probability(plane, d3) == 60.0 / 64.0);

  auto u4 = GroupDistribution::uniform(Group::bitvector(2));
  Subgroup whole = greedy_covering_generators(u4, 1.0);
  CHECK(whole.order() == 4);

  CHECK_THROWS_AS(greedy_covering_generators(d3, 1.5), ParameterError);
}

TEST_CASE("greedy covering is delta-covering for random tables") {
  Group g = Group::bitvector(4);
  Rng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> pmf(g.order());
    double total = 0;
    for (double& p : pmf) {
      p = rng.real() + 1e-6;
      total += p;
    }
    for (double& p : pmf) p /= total;
    auto d = GroupDistribution::table(g, pmf);
    for (double delta : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      Subgroup sub = greedy_covering_generators(d, delta);
      // Float tables re-sum in closure order; allow summation noise at
      // the delta = 1 boundary. Dyadic distributions stay exact.
      CHECK(covering_probability(sub, d) >= delta - 1e-9);
    }
  }
}

TEST_CASE("table distribution validation") {
  Group g = Group::bitvector(2);
  CHECK_THROWS_AS(GroupDistribution::table(g, {0.5, 0.5}), ParameterError);
  CHECK_THROWS_AS(GroupDistribution::table(g, {0.5, 0.5, 0.25, 0.25}),
                  ParameterError);
  CHECK_THROWS_AS(GroupDistribution::table(g, {0.5, 0.5, -0.5, 0.5}),
                  ParameterError);
  auto ok = GroupDistribution::table(g, {0.1, 0.2, 0.3, 0.4});
  CHECK(ok.pmf({1, 1}) == doctest::Approx(0.4));
}

TEST_CASE("samplers agree with pmfs in total variation") {
  CHECK(empirical_tv(GroupDistribution::uniform(Group::bitvector(6)), 100000,
                     21) <= 0.02);
  CHECK(empirical_tv(GroupDistribution::exotic(6), 100000, 22) <= 0.02);
  Group cp = Group::cyclic_product({3, 4});
  std::vector<double> pmf = {0.3, 0.05, 0.05, 0.1, 0.1, 0.05,
                             0.05, 0.05, 0.05, 0.1, 0.05, 0.05};
  CHECK(empirical_tv(GroupDistribution::table(cp, pmf), 100000, 23) <= 0.02);
  CHECK(empirical_tv(GroupDistribution::uniform(Group::multmod(45)), 100000,
                     24) <= 0.02);
}

TEST_CASE("exotic sampler hits the rare half at its exact rate") {
  auto d = GroupDistribution::exotic(3);  // rare half mass 1/16
  Rng rng(4242);
  std::uint64_t rare = 0;
  const std::uint64_t n = 100000;
  for (std::uint64_t i = 0; i < n; ++i)
    if (d.sample(rng)[0] == 1) ++rare;
  const double freq = double(rare) / double(n);
  CHECK(freq == doctest::Approx(1.0 / 16).epsilon(0.1));
}
