#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ghelab/group.hpp"
#include "ghelab/numeric.hpp"
#include "ghelab/subgroup.hpp"

namespace ghelab {

/// A keyed public-key scheme whose decryption is a group homomorphism on
/// the set of valid encryptions. The key pair is fixed at construction:
/// `encrypt` captures the public key, `decrypt` the secret key.
///
/// Randomness is an explicit argument: r is an index into [0,
/// randomness_size), and encrypt(m, r) is a deterministic function of
/// both. Note there is deliberately no membership test for the set of
/// valid encryptions; adversaries may only encrypt, decrypt is the
/// challenger's.
struct Scheme {
  std::string kind;
  Group plaintext = Group::bitvector(1);
  Group ciphertext_space = Group::bitvector(1);
  std::uint64_t randomness_size = 0;
  std::function<Element(const Element&, std::uint64_t)> encrypt;
  std::function<std::optional<Element>(const Element&)> decrypt;
  /// Public parameters echoed in reports, in insertion order.
  std::vector<std::pair<std::string, std::uint64_t>> params;

  Element identity_message() const { return plaintext.identity(); }

  std::uint64_t sample_randomness(Rng& rng) const {
    return rng.below(randomness_size);
  }

  Element sample_message(Rng& rng) const {
    return plaintext.sample_uniform(rng);
  }

  Element sample_message_nonidentity(Rng& rng) const {
    if (plaintext.order() < 2)
      throw InstanceError("scheme has a trivial plaintext group");
    const Element id = identity_message();
    Element m = sample_message(rng);
    while (m == id) m = sample_message(rng);
    return m;
  }

  Element encrypt_fresh(const Element& m, Rng& rng) const {
    return encrypt(m, sample_randomness(rng));
  }

  /// Encryption of a uniform message under fresh randomness: a sample
  /// from the set of all valid encryptions.
  Element sample_image(Rng& rng) const {
    return encrypt_fresh(sample_message(rng), rng);
  }
};

/// ElGamal over Z_p^* at toy scale: plaintexts Z_p^*, ciphertexts
/// Z_p^* x Z_p^*, enc(m; r) = (g^r, m h^r) with h = g^sk. Every pair is a
/// valid encryption, so the encryption image is the whole ciphertext
/// group.
inline Scheme make_toy_elgamal_with_key(std::uint64_t p, std::uint64_t g,
                                        std::uint64_t secret_exponent) {
  if (!is_prime(p) || p > 1024)
    throw ParameterError("elgamal: p must be a prime <= 1024");
  if (g < 1 || g >= p || std::gcd(g, p) != 1)
    throw ParameterError("elgamal: g must be a unit modulo p");
  if (p > 2 && multiplicative_order(g, p) != p - 1)
    throw ParameterError("elgamal: g does not generate the units modulo p");
  if (secret_exponent >= p - 1 && p > 2)
    throw ParameterError("elgamal: secret exponent must be in [0, p-1)");

  const std::uint64_t h = pow_mod(g, secret_exponent, p);
  Scheme s;
  s.kind = "elgamal";
  s.plaintext = Group::multmod(p);
  s.ciphertext_space =
      Group::direct_product(Group::multmod(p), Group::multmod(p));
  s.randomness_size = p - 1;
  s.params = {{"p", p}, {"g", g}, {"h", h}};

  const Group plain = s.plaintext;
  const std::uint64_t rnd = s.randomness_size;
  s.encrypt = [p, g, h, plain, rnd](const Element& m, std::uint64_t r) {
    plain.require_valid(m);
    if (r >= rnd)
      throw ParameterError("elgamal: randomness index out of range");
    return Element{pow_mod(g, r, p), mul_mod(m[0], pow_mod(h, r, p), p)};
  };
  const Group cipher = s.ciphertext_space;
  const std::uint64_t x = secret_exponent;
  s.decrypt = [p, x, cipher](const Element& c) -> std::optional<Element> {
    cipher.require_valid(c);
    const std::uint64_t mask = pow_mod(c[0], x, p);
    return Element{mul_mod(c[1], inverse_mod(mask, p), p)};
  };
  return s;
}

inline Scheme make_toy_elgamal(std::uint64_t p, std::uint64_t g, Rng& rng) {
  const std::uint64_t secret = p > 2 ? rng.below(p - 1) : 0;
  return make_toy_elgamal_with_key(p, g, secret);
}

/// Goldwasser-Micali at toy scale, N = pq. Plaintext is the bit group
/// Z_2 (written multiplicatively in the usual presentation; the identity
/// message is the 0 bit). Ciphertexts live in Z_N^*; enc(b; r) =
/// x^b r^2 mod N for the public pseudosquare x. The encryption image is
/// the Jacobi-symbol +1 subgroup; elements of Jacobi symbol -1 decrypt
/// to bottom.
inline Scheme make_goldwasser_micali(std::uint64_t p, std::uint64_t q) {
  if (!is_prime(p) || p < 3 || p > 31)
    throw ParameterError("gm: p must be an odd prime <= 31");
  if (!is_prime(q) || q < 3 || q > 31)
    throw ParameterError("gm: q must be an odd prime <= 31");
  if (p == q) throw ParameterError("gm: p and q must be distinct");

  const std::uint64_t n = p * q;
  std::uint64_t pseudosquare = 0;
  for (std::uint64_t x = 2; x < n; ++x) {
    if (std::gcd(x, n) != 1) continue;
    if (legendre_symbol(x, p) == -1 && legendre_symbol(x, q) == -1) {
      pseudosquare = x;
      break;
    }
  }
  if (pseudosquare == 0)
    throw ParameterError("gm: no pseudosquare found modulo " +
                         std::to_string(n));

  // Randomness indexes the units of Z_N^* in ascending order.
  std::vector<std::uint64_t> units;
  units.reserve(euler_phi(n));
  for (std::uint64_t u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1) units.push_back(u);

  Scheme s;
  s.kind = "gm";
  s.plaintext = Group::cyclic_product({2});
  s.ciphertext_space = Group::multmod(n);
  s.randomness_size = units.size();
  s.params = {{"p", p}, {"q", q}, {"n", n}, {"pseudosquare", pseudosquare}};

  const Group plain = s.plaintext;
  s.encrypt = [n, pseudosquare, units, plain](const Element& m,
                                              std::uint64_t r) {
    plain.require_valid(m);
    if (r >= units.size())
      throw ParameterError("gm: randomness index out of range");
    const std::uint64_t u = units[r];
    std::uint64_t c = mul_mod(u, u, n);
    if (m[0] == 1) c = mul_mod(c, pseudosquare, n);
    return Element{c};
  };
  const Group cipher = s.ciphertext_space;
  s.decrypt = [p, q, cipher](const Element& c) -> std::optional<Element> {
    cipher.require_valid(c);
    const int lp = legendre_symbol(c[0], p);
    const int lq = legendre_symbol(c[0], q);
    if (lp * lq != 1) return std::nullopt;  // Jacobi symbol -1
    return Element{lp == 1 ? std::uint64_t{0} : std::uint64_t{1}};
  };
  return s;
}

/// Wraps a scheme so that encryptions of one fixed message m* become
/// deterministic half the time: the randomness space doubles to carry a
/// fair coin, and enc*(m*; (r, 0)) outputs the fixed ciphertext
/// enc(m*; r*) while enc*(m*; (r, 1)) and all other messages encrypt as
/// before. Decryption, and with it the set of valid encryptions, is
/// unchanged.
inline Scheme make_estar(const Scheme& base, const Element& m_star,
                         std::uint64_t r_star) {
  base.plaintext.require_valid(m_star);
  if (m_star == base.identity_message())
    throw ParameterError("estar: m_star must differ from the identity");
  if (r_star >= base.randomness_size)
    throw ParameterError("estar: r_star out of range");

  Scheme s = base;
  s.kind = "estar(" + base.kind + ")";
  s.randomness_size = 2 * base.randomness_size;
  s.params.emplace_back("r_star", r_star);

  const auto base_encrypt = base.encrypt;
  const std::uint64_t base_rnd = base.randomness_size;
  s.encrypt = [base_encrypt, base_rnd, m_star, r_star](
                  const Element& m, std::uint64_t r_and_coin) {
    if (r_and_coin >= 2 * base_rnd)
      throw ParameterError("estar: randomness index out of range");
    const std::uint64_t coin = r_and_coin & 1;
    const std::uint64_t r = r_and_coin >> 1;
    if (m == m_star && coin == 0) return base_encrypt(m_star, r_star);
    return base_encrypt(m, r);
  };
  return s;
}

/// Negative control: decryption collapsed to the identity message.
inline Scheme with_decrypt_collapsed(Scheme s) {
  const Element id = s.identity_message();
  s.kind += "+collapsed-dec";
  s.decrypt = [id](const Element&) { return std::optional<Element>(id); };
  return s;
}

/// Exhaustive structural verification of the coset geometry of a keyed
/// scheme: with C the set of all encryptions and C_m its decryption
/// classes,
///   (1) C_m = enc(m; r) * C_1 for every message m and every r,
///   (2) C_1 is a proper subgroup of C closed under conjugation,
///   (3) |C_m| = |C_1| for every m,
///   (4) fixed-randomness encryptions of all messages form a transversal
///       of C / C_1.
/// Any violation is reported with a witness.
struct Fact1Report {
  bool passed = true;
  std::vector<std::string> failures;
  std::uint64_t image_size = 0;           // |C|
  std::uint64_t identity_class_size = 0;  // |C_1|
  std::vector<std::uint64_t> class_sizes;  // |C_m|, messages in lex order
};

inline Fact1Report fact1_check(const Scheme& s,
                               std::uint64_t limit = kEnumerateLimit) {
  const Group& ct = s.ciphertext_space;
  Fact1Report report;
  auto fail = [&](std::string what) {
    report.passed = false;
    report.failures.push_back(std::move(what));
  };
  auto show = [&](const Element& e) {
    std::string out = "[";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(e[i]);
    }
    return out + "]";
  };

  const std::vector<Element> messages = s.plaintext.enumerate(limit);
  if (messages.size() * s.randomness_size > limit)
    throw ClosureOverflowError("fact1_check: encryption table too large");

  // Enumerate the image C = { enc(m; r) } and the decryption classes.
  std::map<Element, std::size_t> image;  // ciphertext -> message position
  std::vector<std::set<Element>> classes(messages.size());
  for (std::size_t mi = 0; mi < messages.size(); ++mi) {
    for (std::uint64_t r = 0; r < s.randomness_size; ++r) {
      const Element c = s.encrypt(messages[mi], r);
      const auto dec = s.decrypt(c);
      if (!dec) {
        fail("encryption " + show(c) + " of message " + show(messages[mi]) +
             " decrypts to bottom");
        continue;
      }
      if (*dec != messages[mi])
        fail("decrypt(enc(" + show(messages[mi]) + "; r=" +
             std::to_string(r) + ")) = " + show(*dec) + ", witness " +
             show(c));
      image.emplace(c, mi);
    }
  }
  // Classes are decryption fibers of the image.
  for (const auto& [c, mi] : image) {
    const auto dec = s.decrypt(c);
    if (dec) {
      for (std::size_t k = 0; k < messages.size(); ++k)
        if (messages[k] == *dec) classes[k].insert(c);
    }
    (void)mi;
  }
  report.image_size = image.size();

  std::size_t identity_pos = 0;
  for (std::size_t k = 0; k < messages.size(); ++k)
    if (messages[k] == s.identity_message()) identity_pos = k;
  const std::set<Element>& identity_class = classes[identity_pos];
  report.identity_class_size = identity_class.size();
  for (const auto& cls : classes) report.class_sizes.push_back(cls.size());

  // (1) every class is the coset enc(m; r) * C_1, for every r.
  for (std::size_t mi = 0; mi < messages.size(); ++mi) {
    for (std::uint64_t r = 0; r < s.randomness_size; ++r) {
      const Element rep = s.encrypt(messages[mi], r);
      std::set<Element> coset;
      for (const Element& h : identity_class) coset.insert(ct.compose(rep, h));
      if (coset != classes[mi]) {
        std::string witness = "?";
        for (const Element& c : coset)
          if (!classes[mi].count(c)) {
            witness = show(c);
            break;
          }
        if (witness == "?")
          for (const Element& c : classes[mi])
            if (!coset.count(c)) {
              witness = show(c);
              break;
            }
        fail("class of " + show(messages[mi]) + " is not enc(m; r=" +
             std::to_string(r) + ") * C_1, witness " + witness);
        break;
      }
    }
  }

  // (2) C_1 is a proper subgroup of C, closed under conjugation by C.
  if (!identity_class.count(ct.identity()))
    fail("C_1 does not contain the group identity");
  for (const Element& h : identity_class) {
    for (const Element& h2 : identity_class)
      if (!identity_class.count(ct.compose(h, h2))) {
        fail("C_1 not closed under composition, witness " +
             show(ct.compose(h, h2)));
        break;
      }
    if (!identity_class.count(ct.inverse(h))) {
      fail("C_1 not closed under inversion, witness " + show(h));
      break;
    }
  }
  if (identity_class.size() >= image.size())
    fail("C_1 is not a proper subset of the encryption image");
  for (const auto& [z, mi] : image) {
    (void)mi;
    const Element z_inv = ct.inverse(z);
    bool ok = true;
    for (const Element& h : identity_class)
      if (!identity_class.count(ct.compose(ct.compose(z, h), z_inv))) {
        fail("C_1 not closed under conjugation by " + show(z));
        ok = false;
        break;
      }
    if (!ok) break;
  }

  // (3) all classes have the size of C_1.
  for (std::size_t mi = 0; mi < messages.size(); ++mi)
    if (classes[mi].size() != identity_class.size())
      fail("|C_m| = " + std::to_string(classes[mi].size()) +
           " for message " + show(messages[mi]) + ", expected " +
           std::to_string(identity_class.size()));

  // (4) fixed-randomness encryptions form a transversal of C / C_1.
  {
    std::set<Element> coset_keys;
    for (const Element& m : messages) {
      const Element rep = s.encrypt(m, 0);
      Element key = rep;  // canonical coset key: lex-least coset member
      for (const Element& h : identity_class)
        key = std::min(key, ct.compose(rep, h));
      if (!coset_keys.insert(key).second)
        fail("fixed-randomness encryptions collide in C / C_1 at message " +
             show(m));
    }
    if (coset_keys.size() * identity_class.size() != image.size())
      fail("fixed-randomness encryptions do not cover C / C_1");
  }

  return report;
}

}  // namespace ghelab
