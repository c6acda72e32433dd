#include <doctest.h>

#include "ghelab/serialize.hpp"

using namespace ghelab;

TEST_CASE("group json round trip") {
  const Group groups[] = {
      Group::bitvector(8), Group::multmod(15), Group::cyclic_product({4, 6}),
      Group::direct_product(Group::multmod(23), Group::multmod(23))};
  for (const Group& g : groups) {
    const Json j = group_to_json(g);
    CHECK(group_from_json(j) == g);
  }
  CHECK(group_from_json(Json::parse(R"({"family":"bitvector","lambda":8})")) ==
        Group::bitvector(8));
}

TEST_CASE("group json errors name the offending field") {
  CHECK_THROWS_WITH_AS(group_from_json(Json::parse(R"({"family":"ring"})")),
                       doctest::Contains("family"), ParameterError);
  CHECK_THROWS_WITH_AS(
      group_from_json(Json::parse(R"({"family":"bitvector"})")),
      doctest::Contains("lambda"), ParameterError);
  CHECK_THROWS_WITH_AS(
      group_from_json(Json::parse(R"({"family":"cyclic","moduli":3})")),
      doctest::Contains("moduli"), ParameterError);
}

TEST_CASE("element json accepts arrays and bare integers") {
  Group m15 = Group::multmod(15);
  CHECK(element_from_json(Json(7), m15) == Element{7});
  CHECK(element_from_json(Json::parse("[7]"), m15) == Element{7});
  CHECK_THROWS_AS(element_from_json(Json(5), m15), ParameterError);  // gcd 5
  Group bv = Group::bitvector(3);
  CHECK(element_from_json(Json::parse("[0,1,1]"), bv) == Element{0, 1, 1});
  CHECK_THROWS_WITH_AS(element_from_json(Json::parse("[0,1]"), bv, "z"),
                       doctest::Contains("z"), ParameterError);
}

TEST_CASE("distribution json") {
  auto exotic = distribution_from_json(
      Json::parse(R"({"kind":"exotic","lambda":6})"));
  CHECK(exotic.kind() == "exotic");
  CHECK(exotic.support() == Group::bitvector(6));

  auto uniform = distribution_from_json(
      Json::parse(R"({"kind":"uniform","group":{"family":"multmod","n":7}})"));
  CHECK(uniform.support() == Group::multmod(7));

  auto contextual = distribution_from_json(Json::parse(R"({"kind":"uniform"})"),
                                           Group::bitvector(4));
  CHECK(contextual.support() == Group::bitvector(4));
  CHECK_THROWS_AS(distribution_from_json(Json::parse(R"({"kind":"uniform"})")),
                  ParameterError);

  auto table = distribution_from_json(Json::parse(
      R"({"kind":"table","group":{"family":"bitvector","lambda":1},"pmf":[0.25,0.75]})"));
  CHECK(table.pmf({1}) == doctest::Approx(0.75));

  CHECK_THROWS_WITH_AS(
      distribution_from_json(Json::parse(R"({"kind":"zipf"})")),
      doctest::Contains("kind"), ParameterError);
}

TEST_CASE("scheme json") {
  const Scheme eg =
      scheme_from_json(Json::parse(R"({"scheme":"elgamal","p":23,"g":5})"), 42);
  CHECK(eg.kind == "elgamal");
  CHECK(eg.randomness_size == 22);
  // Same spec and seed give the same key.
  const Scheme eg2 =
      scheme_from_json(Json::parse(R"({"scheme":"elgamal","p":23,"g":5})"), 42);
  CHECK(eg.params == eg2.params);
  // Pinned secret exponent.
  const Scheme pinned = scheme_from_json(
      Json::parse(R"({"scheme":"elgamal","p":7,"g":3,"x":2})"), 0);
  CHECK(pinned.params[2].second == 2);

  const Scheme gm =
      scheme_from_json(Json::parse(R"({"scheme":"gm","p":7,"q":11})"), 0);
  CHECK(gm.kind == "gm");
  CHECK(gm.randomness_size == 60);

  const Scheme estar = scheme_from_json(
      Json::parse(
          R"({"scheme":"estar","base":{"scheme":"elgamal","p":23,"g":5},"m_star":2,"r_star":3})"),
      42);
  CHECK(estar.kind == "estar(elgamal)");
  CHECK(estar.randomness_size == 44);

  CHECK_THROWS_WITH_AS(
      scheme_from_json(Json::parse(R"({"scheme":"rsa","p":7})"), 0),
      doctest::Contains("scheme"), ParameterError);
  CHECK_THROWS_WITH_AS(
      scheme_from_json(Json::parse(R"({"scheme":"elgamal","p":23})"), 0),
      doctest::Contains("g"), ParameterError);
}
