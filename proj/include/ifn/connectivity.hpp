#ifndef IFN_CONNECTIVITY_HPP
#define IFN_CONNECTIVITY_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "ifn/core.hpp"
#include "ifn/error.hpp"

// The two irreducibility tests. They are deliberately unrelated algorithms:
// one works on the terms of a signature, the other on the matrix only.

namespace ifn {

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Square boolean matrix with rows packed into 64-bit words.
class BoolMatrix {
 public:
  explicit BoolMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  static BoolMatrix identity(std::size_t n) {
    BoolMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  void set(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }

  /// OR/AND product.
  BoolMatrix operator*(const BoolMatrix& rhs) const {
    BoolMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t* dst = &out.bits_[i * words_];
      for (std::size_t k = 0; k < n_; ++k) {
        if (!get(i, k)) continue;
        const std::uint64_t* src = &rhs.bits_[k * words_];
        for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
      }
    }
    return out;
  }

  bool all_set() const {
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (!get(r, c)) return false;
      }
    }
    return true;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace detail

/// Positivity of (I + A)^(n-1) over the boolean semiring. Powers are taken by
/// repeated squaring; since I + A contains the identity, any exponent at or
/// beyond n - 1 has the same pattern.
inline bool is_irreducible_matrix(const FlowNetwork& net) {
  const std::size_t n = net.node_count();
  if (n == 0) return false;
  auto m = detail::BoolMatrix::identity(n);
  for (const auto& [link, f] : net.flows()) m.set(net.index_of(link.first), net.index_of(link.second));
  std::size_t reach = 1;
  while (reach < n - 1) {
    m = m * m;
    reach *= 2;
  }
  return m.all_set();
}

/// Connectivity of the term graph, whose edges join terms sharing a node.
/// Chains of shared nodes are enough; no term needs a direct pivot with every other.
inline bool is_irreducible_signature(const Signature& sig) {
  if (sig.empty()) throw Error(ErrorCode::EmptySignature, "signature has no terms");
  const auto& terms = sig.terms();
  detail::DisjointSets sets(terms.size());
  std::map<NodeId, std::size_t> first_term_with;
  std::size_t components = terms.size();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (const auto& node : terms[i].cycle.nodes()) {
      auto [it, inserted] = first_term_with.try_emplace(node, i);
      if (!inserted && sets.unite(it->second, i)) --components;
    }
  }
  return components == 1;
}

}  // namespace ifn

#endif  // IFN_CONNECTIVITY_HPP
