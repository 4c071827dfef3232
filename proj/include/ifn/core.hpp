#ifndef IFN_CORE_HPP
#define IFN_CORE_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifn/error.hpp"

namespace ifn {

using Flow = std::int64_t;
using Coefficient = std::int64_t;

namespace detail {

inline bool is_forbidden_label_char(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' ||
         c == '+' || c == '(' || c == ')' || c == ',';
}

inline Flow checked_add(Flow a, Flow b) {
  Flow out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "flow sum overflows 64 bits");
  return out;
}

inline Flow checked_mul(Flow a, Flow b) {
  Flow out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "flow product overflows 64 bits");
  return out;
}

}  // namespace detail

/// the node ordering used everywhere, from canonical rotation to link order.
/// the node ordering used for canonical rotation, tie-breaks and link order.
class NodeId {
 public:
  explicit NodeId(std::string label) : label_(std::move(label)) {
    if (label_.empty()) throw Error(ErrorCode::InvalidLabel, "node label is empty");
    if (label_[0] >= '0' && label_[0] <= '9') {
      throw Error(ErrorCode::InvalidLabel, "node label \"" + label_ + "\" starts with a digit");
    }
    for (char c : label_) {
      if (detail::is_forbidden_label_char(c)) {
        throw Error(ErrorCode::InvalidLabel, "node label \"" + label_ + "\" contains a reserved character");
      }
    }
  }
  explicit NodeId(const char* label) : NodeId(std::string(label)) {}

  const std::string& label() const noexcept { return label_; }

  /// True for a single ASCII letter, the only labels the compact syntax can spell.
  bool is_letter() const noexcept {
    return label_.size() == 1 &&
           ((label_[0] >= 'a' && label_[0] <= 'z') || (label_[0] >= 'A' && label_[0] <= 'Z'));
  }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b) {
    // char_traits<char> compares as unsigned char, i.e. byte order.
    const int c = a.label_.compare(b.label_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  std::string label_;
};

using Link = std::pair<NodeId, NodeId>;

/// A directed simple cycle stored from its smallest node, closing link implied.
class CanonicalCycle {
 public:
  /// Rotates `raw` so the minimal label comes first.
  static CanonicalCycle from_nodes(std::vector<NodeId> raw) {
    if (raw.empty()) throw Error(ErrorCode::EmptyCycle, "cycle has no nodes");
    std::vector<NodeId> sorted = raw;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      throw Error(ErrorCode::DuplicateNodeInCycle, "node \"" + dup->label() + "\" repeats in cycle");
    }
    const auto first = std::min_element(raw.begin(), raw.end());
    std::rotate(raw.begin(), first, raw.end());
    return CanonicalCycle(std::move(raw));
  }

  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  std::size_t length() const noexcept { return nodes_.size(); }

  /// Successor of position i, wrapping around to the first node.
  const NodeId& successor(std::size_t i) const { return nodes_[(i + 1) % nodes_.size()]; }

  /// All links including the closing one; a 1-cycle yields its self-loop.
  std::vector<Link> links() const {
    std::vector<Link> out;
    out.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) out.emplace_back(nodes_[i], successor(i));
    return out;
  }

  bool contains(const NodeId& node) const {
    return std::find(nodes_.begin(), nodes_.end(), node) != nodes_.end();
  }

  bool contains_link(const NodeId& from, const NodeId& to) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i] == from) return successor(i) == to;
    }
    return false;
  }

  friend bool operator==(const CanonicalCycle&, const CanonicalCycle&) = default;
  friend auto operator<=>(const CanonicalCycle& a, const CanonicalCycle& b) {
    return a.nodes_ <=> b.nodes_;
  }

 private:
  explicit CanonicalCycle(std::vector<NodeId> nodes) : nodes_(std::move(nodes)) {}
  std::vector<NodeId> nodes_;
};

inline CanonicalCycle canonicalize_cycle(std::vector<NodeId> raw) {
  return CanonicalCycle::from_nodes(std::move(raw));
}

struct Term {
  Coefficient coefficient;
  CanonicalCycle cycle;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Raw, unnormalized term as produced by a parser or generator.
struct RawTerm {
  Coefficient coefficient;
  std::vector<NodeId> nodes;
};

/// Sorted formal sum of distinct canonical cycles with positive coefficients.
class Signature {
 public:
  Signature() = default;

  /// Canonicalizes and merges duplicates; zero sums are dropped and the result sorted.
  static Signature normalize(std::span<const RawTerm> raw_terms) {
    std::map<CanonicalCycle, Coefficient> merged;
    for (const auto& raw : raw_terms) {
      auto cycle = CanonicalCycle::from_nodes(raw.nodes);
      auto [it, inserted] = merged.try_emplace(std::move(cycle), 0);
      it->second = detail::checked_add(it->second, raw.coefficient);
    }
    Signature sig;
    for (auto& [cycle, coefficient] : merged) {
      if (coefficient < 0) {
        throw Error(ErrorCode::NegativeCoefficient,
                    "merged coefficient " + std::to_string(coefficient) + " is negative");
      }
      if (coefficient == 0) continue;
      sig.terms_.push_back(Term{coefficient, cycle});
    }
    return sig;
  }

  static Signature normalize(std::span<const Term> terms) {
    std::vector<RawTerm> raw;
    raw.reserve(terms.size());
    for (const auto& t : terms) raw.push_back(RawTerm{t.coefficient, t.cycle.nodes()});
    return normalize(std::span<const RawTerm>(raw));
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Sorted union of the nodes of every term.
  std::vector<NodeId> nodes() const {
    std::set<NodeId> all;
    for (const auto& t : terms_) all.insert(t.cycle.nodes().begin(), t.cycle.nodes().end());
    return {all.begin(), all.end()};
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Term> terms_;
};

inline Signature normalize_signature(std::span<const RawTerm> raw_terms) {
  return Signature::normalize(raw_terms);
}

/// Node-labelled sparse matrix of nonnegative integer flows. Zero entries are
/// never stored; isolated nodes are allowed.
class FlowNetwork {
 public:
  FlowNetwork() = default;

  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  const std::map<Link, Flow>& flows() const noexcept { return flows_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t link_count() const noexcept { return flows_.size(); }

  bool has_node(const NodeId& node) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), node);
  }

  /// Position of `node` in the sorted node list, or node_count() if absent.
  std::size_t index_of(const NodeId& node) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
    if (it == nodes_.end() || *it != node) return nodes_.size();
    return static_cast<std::size_t>(it - nodes_.begin());
  }

  Flow flow(const NodeId& from, const NodeId& to) const {
    const auto it = flows_.find(Link{from, to});
    return it == flows_.end() ? 0 : it->second;
  }

  Flow total_flow() const {
    Flow sum = 0;
    for (const auto& [link, f] : flows_) sum = detail::checked_add(sum, f);
    return sum;
  }

  void add_node(const NodeId& node) {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
    if (it == nodes_.end() || *it != node) nodes_.insert(it, node);
  }

  /// Adds `delta` (possibly negative) to a link, creating endpoints as needed.
  void add_flow(const NodeId& from, const NodeId& to, Flow delta) {
    add_node(from);
    add_node(to);
    if (delta == 0) return;
    auto [it, inserted] = flows_.try_emplace(Link{from, to}, 0);
    const Flow updated = detail::checked_add(it->second, delta);
    if (updated < 0) {
      if (inserted) flows_.erase(it);
      throw Error(ErrorCode::NegativeFlowResult,
                  "link " + from.label() + "->" + to.label() + " would drop to " + std::to_string(updated));
    }
    if (updated == 0) {
      flows_.erase(it);
    } else {
      it->second = updated;
    }
  }

  void set_flow(const NodeId& from, const NodeId& to, Flow value) {
    if (value < 0) {
      throw Error(ErrorCode::NegativeFlowResult,
                  "link " + from.label() + "->" + to.label() + " given negative flow");
    }
    add_node(from);
    add_node(to);
    if (value == 0) {
      flows_.erase(Link{from, to});
    } else {
      flows_[Link{from, to}] = value;
    }
  }

  /// Row-major dense copy over the sorted node list.
  std::vector<std::vector<Flow>> dense() const {
    std::vector<std::vector<Flow>> m(nodes_.size(), std::vector<Flow>(nodes_.size(), 0));
    for (const auto& [link, f] : flows_) m[index_of(link.first)][index_of(link.second)] = f;
    return m;
  }

  static FlowNetwork from_dense(std::span<const NodeId> nodes,
                                const std::vector<std::vector<Flow>>& matrix) {
    if (matrix.size() != nodes.size()) {
      throw Error(ErrorCode::DimensionMismatch, "matrix has " + std::to_string(matrix.size()) +
                                                    " rows for " + std::to_string(nodes.size()) + " nodes");
    }
    FlowNetwork net;
    for (const auto& n : nodes) {
      if (net.has_node(n)) throw Error(ErrorCode::InvalidDocument, "duplicate node \"" + n.label() + "\"");
      net.add_node(n);
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (matrix[i].size() != nodes.size()) {
        throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " has " +
                                                      std::to_string(matrix[i].size()) + " entries");
      }
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (matrix[i][j] != 0) net.set_flow(nodes[i], nodes[j], matrix[i][j]);
      }
    }
    return net;
  }

  friend bool operator==(const FlowNetwork&, const FlowNetwork&) = default;

 private:
  std::vector<NodeId> nodes_;
  std::map<Link, Flow> flows_;
};

}  // namespace ifn

#endif  // IFN_CORE_HPP
