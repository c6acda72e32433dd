#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "ghelab/errors.hpp"
#include "ghelab/numeric.hpp"
#include "ghelab/rng.hpp"

namespace ghelab {

/// Canonical encoding of a group element: a fixed-width sequence of
/// coordinates. Per family:
///   BitVector(lambda)      lambda coordinates in {0,1}
///   MultMod(n)             one residue in [1,n) coprime to n
///   CyclicProduct(n1..nt)  t residues, coordinate i in [0, n_i)
///   DirectProduct(L, R)    concatenation of the two encodings
/// Equal elements always have identical encodings, so set membership and
/// equality are exact. Lexicographic order on coordinates is the canonical
/// element order used for every deterministic iteration.
using Element = std::vector<std::uint64_t>;

/// A randomness-consuming procedure producing group elements.
using Sampler = std::function<Element(Rng&)>;

enum class GroupFamily { BitVector, MultMod, CyclicProduct, DirectProduct };

/// Largest group an enumeration call will materialize.
inline constexpr std::uint64_t kEnumerateLimit = std::uint64_t{1} << 22;

/// Description of a finite abelian group: family tag plus parameters,
/// with compose / inverse / identity / enumerate capabilities. Immutable
/// and cheap to copy (shared structure), safe to share across threads.
class Group {
 public:
  static Group bitvector(unsigned lambda) {
    if (lambda < 1 || lambda > 62)
      throw ParameterError("bitvector: lambda must be in [1, 62]");
    auto n = std::make_shared<Node>();
    n->family = GroupFamily::BitVector;
    n->lambda = lambda;
    n->width = lambda;
    n->order = std::uint64_t{1} << lambda;
    n->coordinate_space = n->order;
    return Group(std::move(n));
  }

  static Group multmod(std::uint64_t modulus) {
    if (modulus < 2 || modulus > (std::uint64_t{1} << 22))
      throw ParameterError("multmod: modulus must be in [2, 2^22]");
    auto n = std::make_shared<Node>();
    n->family = GroupFamily::MultMod;
    n->modulus = modulus;
    n->width = 1;
    n->order = euler_phi(modulus);
    n->coordinate_space = modulus;
    return Group(std::move(n));
  }

  static Group cyclic_product(std::vector<std::uint64_t> moduli) {
    if (moduli.empty())
      throw ParameterError("cyclic_product: at least one modulus required");
    std::uint64_t order = 1;
    for (std::uint64_t m : moduli) {
      if (m == 0) throw ParameterError("cyclic_product: modulus must be >= 1");
      if (order > (std::uint64_t{1} << 62) / m)
        throw ParameterError("cyclic_product: group order exceeds 2^62");
      order *= m;
    }
    auto n = std::make_shared<Node>();
    n->family = GroupFamily::CyclicProduct;
    n->moduli = std::move(moduli);
    n->width = n->moduli.size();
    n->order = order;
    n->coordinate_space = order;
    return Group(std::move(n));
  }

  static Group direct_product(const Group& left, const Group& right) {
    if (left.coordinate_space() >
        (std::uint64_t{1} << 62) / right.coordinate_space())
      throw ParameterError("direct_product: coordinate space exceeds 2^62");
    auto n = std::make_shared<Node>();
    n->family = GroupFamily::DirectProduct;
    n->left = left.node_;
    n->right = right.node_;
    n->width = left.element_width() + right.element_width();
    n->order = left.order() * right.order();
    n->coordinate_space = left.coordinate_space() * right.coordinate_space();
    return Group(std::move(n));
  }

  GroupFamily family() const { return node_->family; }
  std::uint64_t order() const { return node_->order; }
  std::size_t element_width() const { return node_->width; }

  /// Size of the raw mixed-radix coordinate space (>= order; equality for
  /// every family except MultMod, whose non-units are unused slots).
  std::uint64_t coordinate_space() const { return node_->coordinate_space; }

  // Family parameters.
  unsigned lambda() const { return node_->lambda; }
  std::uint64_t modulus() const { return node_->modulus; }
  const std::vector<std::uint64_t>& moduli() const { return node_->moduli; }
  Group left() const { return Group(node_->left); }
  Group right() const { return Group(node_->right); }

  Element identity() const {
    Element e(element_width(), 0);
    write_identity(node_.get(), e.data());
    return e;
  }

  bool is_valid(const Element& a) const {
    if (a.size() != element_width()) return false;
    return valid_rec(node_.get(), a.data());
  }

  void require_valid(const Element& a) const {
    if (!is_valid(a))
      throw MalformedElementError("element does not belong to this group: " +
                                  describe(a));
  }

  Element compose(const Element& a, const Element& b) const {
    require_valid(a);
    require_valid(b);
    Element out(element_width());
    compose_rec(node_.get(), a.data(), b.data(), out.data());
    return out;
  }

  /// Composition without validity checks or allocation; for closure loops
  /// over elements already known to be valid.
  void compose_into(const Element& a, const Element& b, Element& out) const {
    out.resize(element_width());
    compose_rec(node_.get(), a.data(), b.data(), out.data());
  }

  Element inverse(const Element& a) const {
    require_valid(a);
    Element out(element_width());
    inverse_rec(node_.get(), a.data(), out.data());
    return out;
  }

  /// Lexicographic rank of the encoding in the raw coordinate space.
  /// Injective over valid elements; used for exact set bookkeeping.
  std::uint64_t index_of(const Element& a) const {
    return index_rec(node_.get(), a.data());
  }

  /// All `order()` elements in lexicographic (canonical) order.
  std::vector<Element> enumerate(std::uint64_t limit = kEnumerateLimit) const {
    if (order() > limit)
      throw ClosureOverflowError("enumerate: group order " +
                                 std::to_string(order()) +
                                 " exceeds limit " + std::to_string(limit));
    std::vector<Element> out;
    out.reserve(order());
    Element scratch(element_width());
    for (std::uint64_t idx = 0; idx < coordinate_space(); ++idx) {
      decode_rec(node_.get(), idx, scratch.data());
      if (valid_rec(node_.get(), scratch.data())) out.push_back(scratch);
    }
    return out;
  }

  /// Uniform element. MultMod rejects non-coprime residues.
  Element sample_uniform(Rng& rng) const {
    Element out(element_width());
    sample_rec(node_.get(), rng, out.data());
    return out;
  }

  bool operator==(const Group& other) const {
    return same(node_.get(), other.node_.get());
  }
  bool operator!=(const Group& other) const { return !(*this == other); }

  std::string describe() const { return describe_rec(node_.get()); }

 private:
  struct Node {
    GroupFamily family = GroupFamily::BitVector;
    unsigned lambda = 0;
    std::uint64_t modulus = 0;
    std::vector<std::uint64_t> moduli;
    std::shared_ptr<const Node> left, right;
    std::size_t width = 0;
    std::uint64_t order = 0;
    std::uint64_t coordinate_space = 0;
  };

  explicit Group(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static void write_identity(const Node* n, std::uint64_t* out) {
    switch (n->family) {
      case GroupFamily::BitVector:
      case GroupFamily::CyclicProduct:
        for (std::size_t i = 0; i < n->width; ++i) out[i] = 0;
        return;
      case GroupFamily::MultMod:
        out[0] = 1 % n->modulus;
        return;
      case GroupFamily::DirectProduct:
        write_identity(n->left.get(), out);
        write_identity(n->right.get(), out + n->left->width);
        return;
    }
  }

  static bool valid_rec(const Node* n, const std::uint64_t* a) {
    switch (n->family) {
      case GroupFamily::BitVector:
        for (std::size_t i = 0; i < n->width; ++i)
          if (a[i] > 1) return false;
        return true;
      case GroupFamily::MultMod:
        return a[0] >= 1 && a[0] < n->modulus &&
               std::gcd(a[0], n->modulus) == 1;
      case GroupFamily::CyclicProduct:
        for (std::size_t i = 0; i < n->width; ++i)
          if (a[i] >= n->moduli[i]) return false;
        return true;
      case GroupFamily::DirectProduct:
        return valid_rec(n->left.get(), a) &&
               valid_rec(n->right.get(), a + n->left->width);
    }
    return false;
  }

  static void compose_rec(const Node* n, const std::uint64_t* a,
                          const std::uint64_t* b, std::uint64_t* out) {
    switch (n->family) {
      case GroupFamily::BitVector:
        for (std::size_t i = 0; i < n->width; ++i) out[i] = a[i] ^ b[i];
        return;
      case GroupFamily::MultMod:
        out[0] = mul_mod(a[0], b[0], n->modulus);
        return;
      case GroupFamily::CyclicProduct:
        for (std::size_t i = 0; i < n->width; ++i) {
          const std::uint64_t s = a[i] + b[i];
          out[i] = s >= n->moduli[i] ? s - n->moduli[i] : s;
        }
        return;
      case GroupFamily::DirectProduct:
        compose_rec(n->left.get(), a, b, out);
        compose_rec(n->right.get(), a + n->left->width, b + n->left->width,
                    out + n->left->width);
        return;
    }
  }

  static void inverse_rec(const Node* n, const std::uint64_t* a,
                          std::uint64_t* out) {
    switch (n->family) {
      case GroupFamily::BitVector:
        for (std::size_t i = 0; i < n->width; ++i) out[i] = a[i];
        return;
      case GroupFamily::MultMod:
        out[0] = inverse_mod(a[0], n->modulus);
        return;
      case GroupFamily::CyclicProduct:
        for (std::size_t i = 0; i < n->width; ++i)
          out[i] = a[i] == 0 ? 0 : n->moduli[i] - a[i];
        return;
      case GroupFamily::DirectProduct:
        inverse_rec(n->left.get(), a, out);
        inverse_rec(n->right.get(), a + n->left->width, out + n->left->width);
        return;
    }
  }

  static std::uint64_t index_rec(const Node* n, const std::uint64_t* a) {
    switch (n->family) {
      case GroupFamily::BitVector: {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < n->width; ++i) idx = (idx << 1) | a[i];
        return idx;
      }
      case GroupFamily::MultMod:
        return a[0];
      case GroupFamily::CyclicProduct: {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < n->width; ++i)
          idx = idx * n->moduli[i] + a[i];
        return idx;
      }
      case GroupFamily::DirectProduct:
        return index_rec(n->left.get(), a) * n->right->coordinate_space +
               index_rec(n->right.get(), a + n->left->width);
    }
    return 0;
  }

  static void decode_rec(const Node* n, std::uint64_t idx, std::uint64_t* out) {
    switch (n->family) {
      case GroupFamily::BitVector:
        for (std::size_t i = n->width; i-- > 0;) {
          out[i] = idx & 1;
          idx >>= 1;
        }
        return;
      case GroupFamily::MultMod:
        out[0] = idx;
        return;
      case GroupFamily::CyclicProduct:
        for (std::size_t i = n->width; i-- > 0;) {
          out[i] = idx % n->moduli[i];
          idx /= n->moduli[i];
        }
        return;
      case GroupFamily::DirectProduct:
        decode_rec(n->right.get(), idx % n->right->coordinate_space,
                   out + n->left->width);
        decode_rec(n->left.get(), idx / n->right->coordinate_space, out);
        return;
    }
  }

  static void sample_rec(const Node* n, Rng& rng, std::uint64_t* out) {
    switch (n->family) {
      case GroupFamily::BitVector:
        for (std::size_t i = 0; i < n->width; ++i) out[i] = rng.below(2);
        return;
      case GroupFamily::MultMod: {
        std::uint64_t r = 0;
        do {
          r = 1 + rng.below(n->modulus - 1);
        } while (std::gcd(r, n->modulus) != 1);
        out[0] = r;
        return;
      }
      case GroupFamily::CyclicProduct:
        for (std::size_t i = 0; i < n->width; ++i)
          out[i] = rng.below(n->moduli[i]);
        return;
      case GroupFamily::DirectProduct:
        sample_rec(n->left.get(), rng, out);
        sample_rec(n->right.get(), rng, out + n->left->width);
        return;
    }
  }

  static bool same(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->family != b->family) return false;
    switch (a->family) {
      case GroupFamily::BitVector:
        return a->lambda == b->lambda;
      case GroupFamily::MultMod:
        return a->modulus == b->modulus;
      case GroupFamily::CyclicProduct:
        return a->moduli == b->moduli;
      case GroupFamily::DirectProduct:
        return same(a->left.get(), b->left.get()) &&
               same(a->right.get(), b->right.get());
    }
    return false;
  }

  static std::string describe_rec(const Node* n) {
    switch (n->family) {
      case GroupFamily::BitVector:
        return "bitvector(" + std::to_string(n->lambda) + ")";
      case GroupFamily::MultMod:
        return "multmod(" + std::to_string(n->modulus) + ")";
      case GroupFamily::CyclicProduct: {
        std::string s = "cyclic(";
        for (std::size_t i = 0; i < n->moduli.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(n->moduli[i]);
        }
        return s + ")";
      }
      case GroupFamily::DirectProduct:
        return describe_rec(n->left.get()) + " x " +
               describe_rec(n->right.get());
    }
    return "?";
  }

  std::string describe(const Element& a) const {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(a[i]);
    }
    return s + "] in " + describe();
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace ghelab
