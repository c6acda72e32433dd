// Command-line driver for the ghelab experiments. Every command is
// seeded and deterministic: identical configuration and seed reproduce
// the output byte for byte. Numeric results are printed with 6
// significant digits. Exit codes: 0 = success, 1 = usage/config error,
// 2 = the command ran correctly but a tested bound was violated.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghelab/attack.hpp"
#include "ghelab/serialize.hpp"

namespace {

using namespace ghelab;

double sig6(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return std::strtod(buf, nullptr);
}

struct Output {
  std::string path;       // empty = stdout
  std::string format;     // "json" | "csv"
  Json doc = Json::object();
  std::vector<std::string> csv_lines;  // used when non-empty and format=csv
  bool bound_violated = false;
};

void flatten_csv(const Json& j, const std::string& prefix,
                 std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten_csv(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten_csv(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.push_back(prefix + "," + j.dump());
  }
}

int emit(const Output& out) {
  std::string text;
  if (out.format == "csv") {
    if (!out.csv_lines.empty()) {
      for (const auto& line : out.csv_lines) text += line + "\n";
    } else {
      std::vector<std::string> lines;
      flatten_csv(out.doc, "", lines);
      text = "key,value\n";
      for (const auto& line : lines) text += line + "\n";
    }
  } else {
    text = out.doc.dump(2) + "\n";
  }
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw ParameterError("out: cannot open '" + out.path + "'");
    f << text;
  }
  return out.bound_violated ? 2 : 0;
}

Json advantage_json(const AdvantageReport& r) {
  return Json{{"trials", r.trials},
              {"successes", r.successes},
              {"success_rate", sig6(r.success_rate())},
              {"advantage", sig6(r.advantage())},
              {"halfwidth", sig6(r.halfwidth())}};
}

struct CommonArgs {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  unsigned threads = 1;
  std::string out_path;
  std::string format = "json";
  std::string config_path;  // consumed before parsing; kept for --help
};

void add_common(CLI::App* cmd, CommonArgs& a, std::uint64_t default_trials) {
  a.trials = default_trials;
  cmd->add_option("--config", a.config_path,
                  "JSON config file; explicit flags override its values");
  cmd->add_option("--seed", a.seed, "Master seed");
  if (default_trials > 0)
    cmd->add_option("--trials", a.trials, "Number of seeded trials");
  cmd->add_option("--threads", a.threads, "Worker threads for trials");
  cmd->add_option("--out", a.out_path, "Output path (default stdout)");
  cmd->add_option("--format", a.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

Json parse_json_arg(const std::string& text, const std::string& field) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw ParameterError(field + ": malformed JSON (" + e.what() + ")");
  }
}

// --- instance construction shared by the attack commands ---------------

struct BuiltInstance {
  SmpInstance instance;
  unsigned k = 0;
  Json config;
  std::optional<Scheme> scheme;
};

BuiltInstance build_instance(const std::string& scheme_text,
                             const std::string& instance_text,
                             std::uint64_t seed) {
  BuiltInstance built;
  if (!scheme_text.empty()) {
    const Json spec = parse_json_arg(scheme_text, "scheme");
    built.scheme = scheme_from_json(spec, seed);
    built.instance = smp_from_scheme(*built.scheme);
    built.config["scheme"] = spec;
  } else if (!instance_text.empty()) {
    const Json spec = parse_json_arg(instance_text, "instance");
    const std::string kind = spec.contains("instance")
                                 ? spec.at("instance").get<std::string>()
                                 : "";
    if (kind != "exotic")
      throw ParameterError("instance: unknown instance kind '" + kind + "'");
    const auto lambda =
        static_cast<unsigned>(detail::field_u64(spec, "lambda"));
    built.instance = exotic_bitvector_instance(lambda);
    built.config["instance"] = spec;
  } else {
    throw ParameterError("one of --scheme or --instance is required");
  }
  built.k = ceil_log2(built.instance.subgroup_order_hint);
  if (built.k == 0) built.k = 1;
  return built;
}

OrderOracle build_oracle(const std::string& kind, double eps) {
  if (kind == "exact") {
    if (eps != 0.0)
      throw ParameterError("eps: exact oracle takes no error rate");
    return OrderOracle::exact();
  }
  if (kind == "noisy") return OrderOracle::noisy(eps);
  throw ParameterError("oracle: unknown oracle kind '" + kind + "'");
}

// --- subcommand implementations -----------------------------------------

int cmd_pak_bratus(const CommonArgs& a, const std::string& group_text,
                   unsigned lambda, unsigned extra) {
  Group g = group_text.empty()
                ? Group::bitvector(lambda)
                : group_from_json(parse_json_arg(group_text, "group"));
  const double empirical =
      pak_bratus_estimate(g, extra, a.trials, a.seed, a.threads);

  Output out{a.out_path, a.format};
  out.doc["command"] = "pak-bratus";
  out.doc["config"] = Json{{"group", group_to_json(g)},
                           {"extra", extra},
                           {"trials", a.trials},
                           {"seed", a.seed}};
  Json results;
  results["k"] = ceil_log2(g.order());
  results["empirical"] = sig6(empirical);
  if (g.family() == GroupFamily::BitVector) {
    // Closed-form probability that k+extra uniform bitvectors span.
    const unsigned k = g.lambda();
    const unsigned m = k + extra;
    double product = 1.0;
    for (unsigned i = 0; i < k; ++i)
      product *= 1.0 - std::ldexp(1.0, -int(m - i));
    results["exact_product"] = sig6(product);
    results["empirical_minus_exact"] = sig6(empirical - product);
  }
  const bool has_bound = extra >= 4;
  results["bound"] = has_bound ? Json(0.75) : Json(nullptr);
  const bool ok = !has_bound || empirical >= 0.75;
  results["bound_satisfied"] = ok;
  out.doc["results"] = results;
  out.bound_violated = !ok;
  return emit(out);
}

int cmd_covering(const CommonArgs& a, const std::string& dist_text,
                 const std::string& group_text, double delta) {
  std::optional<Group> context;
  if (!group_text.empty())
    context = group_from_json(parse_json_arg(group_text, "group"));
  const GroupDistribution dist =
      distribution_from_json(parse_json_arg(dist_text, "dist"), context);
  const Subgroup sub = greedy_covering_generators(dist, delta);
  const double covering = covering_probability(sub, dist);

  Output out{a.out_path, a.format};
  out.doc["command"] = "covering";
  out.doc["config"] = Json{{"dist", distribution_to_json(dist)},
                           {"delta", sig6(delta)}};
  Json results;
  results["generator_count"] = sub.generators().size();
  Json gens = Json::array();
  for (const auto& g : sub.generators()) gens.push_back(element_to_json(g));
  results["generators"] = gens;
  results["subgroup_order"] = sub.order();
  results["covering_probability"] = sig6(covering);
  if (dist.kind() == "exotic") {
    const unsigned lambda = dist.exotic_lambda();
    results["leading_one_mass_per_vector"] =
        sig6(std::ldexp(1.0, -int(lambda * (lambda - 1))));
    results["leading_one_mass_total"] = sig6(dist.rare_half_mass());
  }
  results["bound"] = sig6(delta);
  const bool ok = covering >= delta;
  results["bound_satisfied"] = ok;
  out.doc["results"] = results;
  out.bound_violated = !ok;
  return emit(out);
}

int cmd_genset(const CommonArgs& a, const std::string& dist_text,
               const std::string& group_text, double delta, double delta_star,
               int algorithm, unsigned k_override) {
  std::optional<Group> context;
  if (!group_text.empty())
    context = group_from_json(parse_json_arg(group_text, "group"));
  const GroupDistribution dist =
      distribution_from_json(parse_json_arg(dist_text, "dist"), context);
  const Group& g = dist.support();
  const unsigned k =
      k_override != 0 ? k_override : std::max(1u, ceil_log2(g.order()));
  const std::uint64_t per_round = samples_per_round(k, delta, delta_star);
  if (algorithm != 1 && algorithm != 2)
    throw ParameterError("algorithm: must be 1 or 2");

  struct Row {
    std::uint64_t samples_used = 0;
    std::uint64_t subgroup_order = 0;
    double covering_prob = 0;
    bool success = false;
    bool doubling_violation = false;
  };
  std::vector<Row> rows(a.trials);
  const Sampler sampler = dist.sampler();
  for (std::uint64_t t = 0; t < a.trials; ++t) {
    Rng rng = Rng::derive(a.seed, t);
    Row& row = rows[t];
    Subgroup sub(g, {});
    if (algorithm == 1) {
      const GenSetTrace trace =
          sample_generators_tested(g, sampler, k, delta, delta_star, rng);
      row.samples_used = trace.samples_drawn;
      sub = Subgroup(g, trace.generating_set);
      for (std::size_t i = 0; i + 1 < trace.order_trace.size(); ++i)
        if (trace.order_trace[i + 1] < 2 * trace.order_trace[i])
          row.doubling_violation = true;
    } else {
      const std::vector<Element> samples =
          sample_generators_blind(sampler, k, delta, delta_star, rng);
      row.samples_used = samples.size();
      sub = Subgroup(g, samples);
    }
    row.subgroup_order = sub.order();
    row.covering_prob = covering_probability(sub, dist);
    row.success = row.covering_prob >= delta;
  }

  std::uint64_t successes = 0, violations = 0;
  for (const Row& r : rows) {
    successes += r.success;
    violations += r.doubling_violation;
  }
  const double fraction = double(successes) / double(a.trials);
  const double halfwidth = 1.96 * std::sqrt(0.25 / double(a.trials));
  const bool ok = fraction >= delta_star - halfwidth && violations == 0;

  Output out{a.out_path, a.format};
  out.doc["command"] = "genset";
  out.doc["config"] = Json{{"dist", distribution_to_json(dist)},
                           {"delta", sig6(delta)},
                           {"delta_star", sig6(delta_star)},
                           {"algorithm", algorithm},
                           {"k", k},
                           {"samples_per_round", per_round},
                           {"trials", a.trials},
                           {"seed", a.seed}};
  Json results;
  results["trials"] = a.trials;
  results["successes"] = successes;
  results["success_fraction"] = sig6(fraction);
  results["halfwidth"] = sig6(halfwidth);
  results["doubling_violations"] = violations;
  results["bound"] = sig6(delta_star);
  results["bound_satisfied"] = ok;
  out.doc["results"] = results;
  Json trials_json = Json::array();
  out.csv_lines.push_back("trial,samples_used,subgroup_order,covering_prob,success");
  for (std::uint64_t t = 0; t < a.trials; ++t) {
    const Row& r = rows[t];
    trials_json.push_back(Json{{"trial", t},
                               {"samples_used", r.samples_used},
                               {"subgroup_order", r.subgroup_order},
                               {"covering_prob", sig6(r.covering_prob)},
                               {"success", r.success}});
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%llu,%llu,%llu,%.6g,%d",
                  (unsigned long long)t, (unsigned long long)r.samples_used,
                  (unsigned long long)r.subgroup_order, r.covering_prob,
                  int(r.success));
    out.csv_lines.push_back(buf);
  }
  out.doc["trials_detail"] = trials_json;
  out.bound_violated = !ok;
  return emit(out);
}

int cmd_attack_smp(const CommonArgs& a, const std::string& scheme_text,
                   const std::string& instance_text, const std::string& attack,
                   const std::string& oracle_kind, double eps,
                   double eps_star) {
  BuiltInstance built = build_instance(scheme_text, instance_text, a.seed);
  const OrderOracle oracle = build_oracle(oracle_kind, eps);

  SmpAdversary adversary;
  double bound = 0;
  std::uint64_t samples_per_game = 0;
  if (attack == "uniform") {
    adversary = attack_uniform(built.k, oracle);
    bound = 0.75 * (1.0 - eps) * (1.0 - eps);
    samples_per_game = built.k + 4;
  } else if (attack == "arbitrary") {
    adversary = attack_arbitrary(built.k, eps_star, oracle);
    bound = (1.0 - eps_star) * (1.0 - eps) * (1.0 - eps);
    const double delta = std::sqrt(1.0 - eps_star);
    samples_per_game =
        samples_per_round(built.k, delta, delta) * built.k + 1;
  } else {
    throw ParameterError("attack: must be 'uniform' or 'arbitrary'");
  }

  const AdvantageReport report =
      smp_experiment(built.instance, adversary, a.trials, a.seed, a.threads);
  const bool ok = report.success_rate() >= bound - report.halfwidth();

  Output out{a.out_path, a.format};
  out.doc["command"] = "attack-smp";
  Json config = built.config;
  config["attack"] = attack;
  config["oracle"] = oracle_kind;
  config["eps"] = sig6(eps);
  if (attack == "arbitrary") config["eps_star"] = sig6(eps_star);
  config["k"] = built.k;
  config["samples_per_game"] = samples_per_game;
  config["trials"] = a.trials;
  config["seed"] = a.seed;
  out.doc["config"] = config;
  Json results = advantage_json(report);
  results["bound"] = sig6(bound);
  results["bound_satisfied"] = ok;
  out.doc["results"] = results;
  out.bound_violated = !ok;
  return emit(out);
}

int cmd_indcpa(const CommonArgs& a, const std::string& scheme_text,
               const std::string& adversary_kind) {
  const Json spec = parse_json_arg(scheme_text, "scheme");
  const Scheme scheme = scheme_from_json(spec, a.seed);

  IndcpaAdversary adversary;
  if (adversary_kind == "random") {
    const Element m0 = scheme.identity_message();
    Rng pick(a.seed);
    const Element m1 = scheme.sample_message_nonidentity(pick);
    adversary.choose_messages = [m0, m1](Rng&) {
      return std::make_pair(m0, m1);
    };
    adversary.guess = [](const Element&, Rng& rng) { return rng.coin(); };
  } else if (adversary_kind == "keyholder") {
    const Element m0 = scheme.identity_message();
    Rng pick(a.seed);
    const Element m1 = scheme.sample_message_nonidentity(pick);
    adversary.choose_messages = [m0, m1](Rng&) {
      return std::make_pair(m0, m1);
    };
    adversary.guess = [scheme, m0](const Element& c, Rng&) {
      const auto m = scheme.decrypt(c);
      return (m && *m == m0) ? 0 : 1;
    };
  } else {
    throw ParameterError("adversary: must be 'random' or 'keyholder'");
  }

  const AdvantageReport report =
      indcpa_experiment(scheme, adversary, a.trials, a.seed, a.threads);
  Output out{a.out_path, a.format};
  out.doc["command"] = "indcpa";
  out.doc["config"] = Json{{"scheme", spec},
                           {"adversary", adversary_kind},
                           {"trials", a.trials},
                           {"seed", a.seed}};
  out.doc["results"] = advantage_json(report);
  return emit(out);
}

int cmd_reduce_demo(const CommonArgs& a, const std::string& scheme_text,
                    const std::string& adversary_kind,
                    const std::string& oracle_kind, double eps,
                    double eps_star) {
  const Json spec = parse_json_arg(scheme_text, "scheme");
  const Scheme scheme = scheme_from_json(spec, a.seed);
  const SmpInstance instance = smp_from_scheme(scheme);
  const unsigned k = std::max(1u, ceil_log2(instance.subgroup_order_hint));

  SmpAdversary adversary;
  if (adversary_kind == "omniscient") {
    // Exhaustive membership table for the identity-encryption subgroup.
    auto members = std::make_shared<std::unordered_set<std::uint64_t>>();
    const Element id = scheme.identity_message();
    for (std::uint64_t r = 0; r < scheme.randomness_size; ++r)
      members->insert(scheme.ciphertext_space.index_of(scheme.encrypt(id, r)));
    adversary = [members](const SmpInstance& inst, const Element& z, Rng&) {
      return members->count(inst.group.index_of(z)) ? 0 : 1;
    };
  } else if (adversary_kind == "coin") {
    adversary = [](const SmpInstance&, const Element&, Rng& rng) {
      return rng.coin();
    };
  } else if (adversary_kind == "attack-uniform") {
    adversary = attack_uniform(k, build_oracle(oracle_kind, eps));
  } else if (adversary_kind == "attack-arbitrary") {
    adversary = attack_arbitrary(k, eps_star, build_oracle(oracle_kind, eps));
  } else {
    throw ParameterError(
        "adversary: must be omniscient|coin|attack-uniform|attack-arbitrary");
  }

  // Paired seeded runs: both experiments share the master seed.
  const AdvantageReport direct =
      smp_experiment(instance, adversary, a.trials, a.seed, a.threads);
  const AdvantageReport reduced = indcpa_experiment(
      scheme, reduce_smp_to_indcpa(scheme, adversary), a.trials, a.seed,
      a.threads);
  const double difference =
      std::abs(direct.advantage() - reduced.advantage());
  const double tolerance = direct.halfwidth() + reduced.halfwidth();
  const bool ok = difference <= tolerance;

  Output out{a.out_path, a.format};
  out.doc["command"] = "reduce-demo";
  out.doc["config"] = Json{{"scheme", spec},
                           {"adversary", adversary_kind},
                           {"k", k},
                           {"trials", a.trials},
                           {"seed", a.seed}};
  out.doc["results"] =
      Json{{"smp", advantage_json(direct)},
           {"indcpa", advantage_json(reduced)},
           {"advantage_difference", sig6(difference)},
           {"bound", sig6(tolerance)},
           {"bound_satisfied", ok}};
  out.bound_violated = !ok;
  return emit(out);
}

int cmd_estar_demo(const CommonArgs& a, const std::string& scheme_text,
                   const std::string& m_star_text, std::uint64_t r_star) {
  const Json spec = parse_json_arg(scheme_text, "scheme");
  const Scheme base = scheme_from_json(spec, a.seed);
  const Element m_star = element_from_json(
      parse_json_arg(m_star_text, "m-star"), base.plaintext, "m-star");
  const Scheme wrapped = make_estar(base, m_star, r_star);
  const IndcpaAdversary adversary = estar_distinguisher(base, m_star, r_star);

  const AdvantageReport on_wrapped =
      indcpa_experiment(wrapped, adversary, a.trials, a.seed, a.threads);
  const AdvantageReport on_base =
      indcpa_experiment(base, adversary, a.trials, a.seed, a.threads);
  const bool wrapped_ok = std::abs(on_wrapped.advantage() - 0.25) <= 0.02;
  const bool base_ok = on_base.advantage() <= 0.02;

  Output out{a.out_path, a.format};
  out.doc["command"] = "estar-demo";
  out.doc["config"] = Json{{"scheme", spec},
                           {"m_star", element_to_json(m_star)},
                           {"r_star", r_star},
                           {"trials", a.trials},
                           {"seed", a.seed}};
  out.doc["results"] =
      Json{{"wrapped", advantage_json(on_wrapped)},
           {"base", advantage_json(on_base)},
           {"wrapped_bound", "advantage = 0.25 +/- 0.02"},
           {"wrapped_bound_satisfied", wrapped_ok},
           {"base_bound", "advantage <= 0.02"},
           {"base_bound_satisfied", base_ok}};
  out.bound_violated = !(wrapped_ok && base_ok);
  return emit(out);
}

int cmd_fact1(const CommonArgs& a, const std::string& scheme_text,
              bool corrupt) {
  const Json spec = parse_json_arg(scheme_text, "scheme");
  Scheme scheme = scheme_from_json(spec, a.seed);
  if (corrupt) scheme = with_decrypt_collapsed(std::move(scheme));
  const Fact1Report report = fact1_check(scheme);

  Output out{a.out_path, a.format};
  out.doc["command"] = "fact1";
  out.doc["config"] =
      Json{{"scheme", spec}, {"corrupt", corrupt}, {"seed", a.seed}};
  Json results;
  results["passed"] = report.passed;
  results["image_size"] = report.image_size;
  results["identity_class_size"] = report.identity_class_size;
  results["class_sizes"] = report.class_sizes;
  results["failures"] = report.failures;
  out.doc["results"] = results;
  out.bound_violated = !report.passed;
  return emit(out);
}

int cmd_qorder(const CommonArgs& a, std::uint64_t alpha, std::uint64_t n,
               unsigned precision, unsigned shots) {
  Rng rng(a.seed);
  const OrderFindingResult result =
      quantum_order_finding(alpha, n, precision, shots, rng);
  std::uint64_t decoded = 0;
  for (const auto& shot : result.shots)
    if (shot.decoded_order) ++decoded;

  Output out{a.out_path, a.format};
  out.doc["command"] = "qorder";
  out.doc["config"] = Json{{"a", alpha},
                           {"n", n},
                           {"precision", precision},
                           {"shots", shots},
                           {"seed", a.seed}};
  Json results;
  results["order_estimate"] = result.order_estimate;
  results["decoded_shots"] = decoded;
  results["decode_rate"] = sig6(shots ? double(decoded) / shots : 0.0);
  Json shots_json = Json::array();
  out.csv_lines.push_back("shot,y,decoded_r");
  for (std::size_t i = 0; i < result.shots.size(); ++i) {
    const ShotRecord& s = result.shots[i];
    shots_json.push_back(
        Json{{"shot", i},
             {"y", s.phase_numerator},
             {"decoded_r", s.decoded_order ? Json(*s.decoded_order)
                                           : Json(nullptr)}});
    out.csv_lines.push_back(
        std::to_string(i) + "," + std::to_string(s.phase_numerator) + "," +
        (s.decoded_order ? std::to_string(*s.decoded_order) : ""));
  }
  results["shots"] = shots_json;
  out.doc["results"] = results;
  out.bound_violated = result.order_estimate == 0;
  return emit(out);
}

int cmd_condition_probe(const CommonArgs& a, const std::string& scheme_text,
                        const std::string& m_text,
                        const std::string& m_prime_text,
                        const std::string& gens_text) {
  const Json spec = parse_json_arg(scheme_text, "scheme");
  const Scheme scheme = scheme_from_json(spec, a.seed);
  const Element m =
      element_from_json(parse_json_arg(m_text, "m"), scheme.plaintext, "m");
  const Element m_prime = element_from_json(
      parse_json_arg(m_prime_text, "m-prime"), scheme.plaintext, "m-prime");
  const Json gens_json = parse_json_arg(gens_text, "gens");
  if (!gens_json.is_array())
    throw ParameterError("gens: expected an array of elements");
  std::vector<Element> gens;
  for (const auto& gj : gens_json)
    gens.push_back(element_from_json(gj, scheme.ciphertext_space, "gens"));

  const ConditionProbe probe =
      sufficient_condition_probe(scheme, m, m_prime, gens, a.trials, a.seed);

  Output out{a.out_path, a.format};
  out.doc["command"] = "condition-probe";
  out.doc["config"] = Json{{"scheme", spec},
                           {"m", element_to_json(m)},
                           {"m_prime", element_to_json(m_prime)},
                           {"gens", gens_json},
                           {"trials", a.trials},
                           {"seed", a.seed}};
  out.doc["results"] = Json{{"p_in", sig6(probe.p_in)},
                            {"p_out", sig6(probe.p_out)},
                            {"halfwidth", sig6(probe.halfwidth)}};
  return emit(out);
}

int cmd_impossibility_demo(const CommonArgs& a, const std::string& scheme_text,
                           const std::string& oracle_kind, double eps,
                           double eps_star) {
  const Json spec = parse_json_arg(scheme_text, "scheme");
  const Scheme scheme = scheme_from_json(spec, a.seed);
  const SmpInstance instance = smp_from_scheme(scheme);
  const unsigned k = std::max(1u, ceil_log2(instance.subgroup_order_hint));
  const SmpAdversary adversary =
      attack_arbitrary(k, eps_star, build_oracle(oracle_kind, eps));
  const AdvantageReport report = indcpa_experiment(
      scheme, reduce_smp_to_indcpa(scheme, adversary), a.trials, a.seed,
      a.threads);

  const double bound = (1.0 - eps_star) * (1.0 - eps) * (1.0 - eps);
  const bool ok = report.success_rate() >= bound - report.halfwidth();
  const double delta = std::sqrt(1.0 - eps_star);

  Output out{a.out_path, a.format};
  out.doc["command"] = "impossibility-demo";
  out.doc["config"] =
      Json{{"scheme", spec},
           {"oracle", oracle_kind},
           {"eps", sig6(eps)},
           {"eps_star", sig6(eps_star)},
           {"k", k},
           {"samples_per_game",
            samples_per_round(k, delta, delta) * k + 1},
           {"trials", a.trials},
           {"seed", a.seed}};
  Json results = advantage_json(report);
  results["bound"] = sig6(bound);
  results["bound_satisfied"] = ok;
  out.doc["results"] = results;
  out.bound_violated = !ok;
  return emit(out);
}

// --- config file injection ----------------------------------------------

// Values from --config JSON become flags unless the flag was given
// explicitly; explicit flags win.
std::vector<std::string> inject_config(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;
  std::ifstream f(config_path);
  if (!f) throw ParameterError("config: cannot open '" + config_path + "'");
  Json config;
  try {
    f >> config;
  } catch (const std::exception& e) {
    throw ParameterError("config: malformed JSON (" + std::string(e.what()) +
                         ")");
  }
  if (!config.is_object())
    throw ParameterError("config: expected a JSON object");
  for (const auto& [key, value] : config.items()) {
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& arg : args)
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) present = true;
    if (present) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else {
      args.push_back(flag);
      args.push_back(value.dump());
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ghelab: seeded experiments on subgroup-membership attacks against "
      "group homomorphic encryption"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file; explicit flags override its values");

  std::string scheme_text, instance_text, dist_text, group_text;
  std::string attack = "uniform", oracle_kind = "exact";
  std::string adversary_kind, m_text, m_prime_text, gens_text, m_star_text;
  double eps = 0.0, eps_star = 0.25, delta = 0.9, delta_star = 0.9;
  unsigned lambda = 8, extra = 4, precision = 8, shots = 20, k_override = 0;
  int algorithm = 2;
  std::uint64_t alpha = 2, modulus = 15, r_star = 0;
  bool corrupt = false;

  CommonArgs pak_args, cov_args, gen_args, smp_args, cpa_args, red_args,
      est_args, fact_args, q_args, cond_args, imp_args;

  auto* pak = app.add_subcommand(
      "pak-bratus", "Generation rate of k+extra uniform samples");
  add_common(pak, pak_args, 20000);
  pak->add_option("--lambda", lambda, "Bitvector dimension (default group)");
  pak->add_option("--group", group_text, "Group JSON (overrides --lambda)");
  pak->add_option("--extra", extra, "Samples beyond k");

  auto* cov = app.add_subcommand(
      "covering", "Greedy covering generators for a distribution");
  add_common(cov, cov_args, 0);
  cov->add_option("--dist", dist_text, "Distribution JSON")->required();
  cov->add_option("--group", group_text, "Support group JSON (for uniform)");
  cov->add_option("--delta", delta, "Covering threshold")->required();

  auto* gen = app.add_subcommand(
      "genset", "Seeded generating-set sampling trials");
  add_common(gen, gen_args, 1000);
  gen->add_option("--dist", dist_text, "Distribution JSON")->required();
  gen->add_option("--group", group_text, "Support group JSON (for uniform)");
  gen->add_option("--delta", delta, "Covering threshold");
  gen->add_option("--delta-star", delta_star, "Success threshold");
  gen->add_option("--algorithm", algorithm,
                  "1 = membership-tested early abort, 2 = fixed N*k+1");
  gen->add_option("--k", k_override, "Override k (default ceil log2 |G|)");

  auto* smp = app.add_subcommand("attack-smp",
                                 "Order-oracle attack in the membership game");
  add_common(smp, smp_args, 5000);
  smp->add_option("--scheme", scheme_text, "Scheme JSON");
  smp->add_option("--instance", instance_text,
                  "Instance JSON, e.g. {\"instance\":\"exotic\",\"lambda\":6}");
  smp->add_option("--attack", attack, "uniform|arbitrary");
  smp->add_option("--oracle", oracle_kind, "exact|noisy");
  smp->add_option("--eps", eps, "Order oracle error rate");
  smp->add_option("--eps-star", eps_star, "Covering failure budget");

  auto* cpa = app.add_subcommand("indcpa", "Chosen-plaintext game sanity runs");
  add_common(cpa, cpa_args, 10000);
  cpa->add_option("--scheme", scheme_text, "Scheme JSON")->required();
  cpa->add_option("--adversary", adversary_kind, "random|keyholder")
      ->required();

  auto* red = app.add_subcommand(
      "reduce-demo", "Membership adversary relayed into the CPA game");
  add_common(red, red_args, 10000);
  red->add_option("--scheme", scheme_text, "Scheme JSON")->required();
  red->add_option("--adversary", adversary_kind,
                  "omniscient|coin|attack-uniform|attack-arbitrary")
      ->required();
  red->add_option("--oracle", oracle_kind, "exact|noisy");
  red->add_option("--eps", eps, "Order oracle error rate");
  red->add_option("--eps-star", eps_star, "Covering failure budget");

  auto* est = app.add_subcommand(
      "estar-demo", "Half-deterministic wrapper distinguisher");
  add_common(est, est_args, 10000);
  est->add_option("--scheme", scheme_text, "Base scheme JSON")->required();
  est->add_option("--m-star", m_star_text, "Fixed message (element JSON)")
      ->required();
  est->add_option("--r-star", r_star, "Fixed randomness index");

  auto* fact = app.add_subcommand(
      "fact1", "Exhaustive coset-structure verification");
  add_common(fact, fact_args, 0);
  fact->add_option("--scheme", scheme_text, "Scheme JSON")->required();
  fact->add_flag("--corrupt", corrupt,
                 "Collapse decryption to the identity (negative control)");

  auto* q = app.add_subcommand(
      "qorder", "Statevector phase-estimation order finding");
  add_common(q, q_args, 0);
  q->add_option("--a", alpha, "Generator of the cyclic subgroup")->required();
  q->add_option("--n", modulus, "Modulus (<= 64)")->required();
  q->add_option("--precision", precision, "Phase register qubits (<= 12)");
  q->add_option("--shots", shots, "Measurement shots");

  auto* cond = app.add_subcommand(
      "condition-probe", "Estimate Pr[enc(m) in <gens>] and Pr[enc(m') not in]");
  add_common(cond, cond_args, 10000);
  cond->add_option("--scheme", scheme_text, "Scheme JSON")->required();
  cond->add_option("--m", m_text, "Message (element JSON)")->required();
  cond->add_option("--m-prime", m_prime_text, "Second message")->required();
  cond->add_option("--gens", gens_text, "Candidate generators (JSON array)")
      ->required();

  auto* imp = app.add_subcommand(
      "impossibility-demo",
      "End to end: arbitrary-sampling attack relayed into the CPA game");
  add_common(imp, imp_args, 5000);
  imp->add_option("--scheme", scheme_text, "Scheme JSON")->required();
  imp->add_option("--oracle", oracle_kind, "exact|noisy");
  imp->add_option("--eps", eps, "Order oracle error rate");
  imp->add_option("--eps-star", eps_star, "Covering failure budget");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = inject_config(args);
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& s : args) cargs.push_back(s.c_str());
    app.parse(int(cargs.size()), cargs.data());

    if (pak->parsed())
      return cmd_pak_bratus(pak_args, group_text, lambda, extra);
    if (cov->parsed()) return cmd_covering(cov_args, dist_text, group_text,
                                           delta);
    if (gen->parsed())
      return cmd_genset(gen_args, dist_text, group_text, delta, delta_star,
                        algorithm, k_override);
    if (smp->parsed())
      return cmd_attack_smp(smp_args, scheme_text, instance_text, attack,
                            oracle_kind, eps, eps_star);
    if (cpa->parsed()) return cmd_indcpa(cpa_args, scheme_text, adversary_kind);
    if (red->parsed())
      return cmd_reduce_demo(red_args, scheme_text, adversary_kind,
                             oracle_kind, eps, eps_star);
    if (est->parsed())
      return cmd_estar_demo(est_args, scheme_text, m_star_text, r_star);
    if (fact->parsed()) return cmd_fact1(fact_args, scheme_text, corrupt);
    if (q->parsed()) return cmd_qorder(q_args, alpha, modulus, precision,
                                       shots);
    if (cond->parsed())
      return cmd_condition_probe(cond_args, scheme_text, m_text, m_prime_text,
                                 gens_text);
    if (imp->parsed())
      return cmd_impossibility_demo(imp_args, scheme_text, oracle_kind, eps,
                                    eps_star);
    return 1;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
