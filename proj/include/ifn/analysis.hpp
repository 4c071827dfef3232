#ifndef IFN_ANALYSIS_HPP
#define IFN_ANALYSIS_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "ifn/algebra.hpp"
#include "ifn/connectivity.hpp"
#include "ifn/core.hpp"
#include "ifn/error.hpp"
#include "ifn/rational.hpp"

// Flow statistics read straight off a signature's terms, plus the matching
// matrix-side quantities. The two sides never call each other so that tests
// can check one against the other.

namespace ifn {

/// Square matrix of exact rationals over a sorted node list.
struct RationalMatrix {
  std::vector<NodeId> nodes;
  std::vector<std::vector<Rational>> entries;

  std::size_t size() const { return nodes.size(); }

  static RationalMatrix zeros(std::vector<NodeId> nodes) {
    const std::size_t n = nodes.size();
    return RationalMatrix{std::move(nodes), std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0)))};
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

enum class RelationClass { Identical, Equivalent, Distinct };

inline const char* relation_name(RelationClass r) {
  switch (r) {
    case RelationClass::Identical: return "identical";
    case RelationClass::Equivalent: return "equivalent";
    case RelationClass::Distinct: return "distinct";
  }
  return "distinct";
}

// ---------------------------------------------------------------------------
// Signature side

/// kappa = sum of coefficient times cycle length.
inline Flow total_flow(const Signature& sig) {
  Flow kappa = 0;
  for (const auto& t : sig.terms()) {
    kappa = detail::checked_add(kappa, detail::checked_mul(t.coefficient, static_cast<Flow>(t.cycle.length())));
  }
  return kappa;
}

inline Flow link_flow(const Signature& sig, const NodeId& p, const NodeId& q) {
  Flow f = 0;
  for (const auto& t : sig.terms()) {
    if (t.cycle.contains_link(p, q)) f = detail::checked_add(f, t.coefficient);
  }
  return f;
}

/// Row sum and column sum of q alike.
inline Flow node_flow_sum(const Signature& sig, const NodeId& q) {
  Flow f = 0;
  for (const auto& t : sig.terms()) {
    if (t.cycle.contains(q)) f = detail::checked_add(f, t.coefficient);
  }
  return f;
}

namespace detail {

/// Dense link-flow table from the term formula, indexed over sig.nodes().
inline std::vector<std::vector<Flow>> link_flow_table(const Signature& sig, const std::vector<NodeId>& nodes) {
  auto index = [&](const NodeId& v) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  };
  std::vector<std::vector<Flow>> f(nodes.size(), std::vector<Flow>(nodes.size(), 0));
  for (const auto& t : sig.terms()) {
    for (const auto& [from, to] : t.cycle.links()) {
      auto& cell = f[index(from)][index(to)];
      cell = checked_add(cell, t.coefficient);
    }
  }
  return f;
}

inline void require_terms(const Signature& sig) {
  if (sig.empty()) throw Error(ErrorCode::EmptySignature, "signature has no terms");
}

}  // namespace detail

/// P[p][q] = f_pq / kappa.
inline RationalMatrix probability_matrix(const Signature& sig) {
  detail::require_terms(sig);
  const Flow kappa = total_flow(sig);
  auto out = RationalMatrix::zeros(sig.nodes());
  const auto f = detail::link_flow_table(sig, out.nodes);
  for (std::size_t p = 0; p < out.size(); ++p) {
    for (std::size_t q = 0; q < out.size(); ++q) out.entries[p][q] = Rational(f[p][q], kappa);
  }
  return out;
}

/// S[p][q] = f_pq / sigma_p; rows sum to 1.
inline RationalMatrix outflow_stochastic(const Signature& sig) {
  detail::require_terms(sig);
  auto out = RationalMatrix::zeros(sig.nodes());
  const auto f = detail::link_flow_table(sig, out.nodes);
  for (std::size_t p = 0; p < out.size(); ++p) {
    const Flow sigma = node_flow_sum(sig, out.nodes[p]);
    for (std::size_t q = 0; q < out.size(); ++q) out.entries[p][q] = Rational(f[p][q], sigma);
  }
  return out;
}

/// T[p][q] = f_pq / sigma_q; columns sum to 1.
inline RationalMatrix inflow_stochastic(const Signature& sig) {
  detail::require_terms(sig);
  auto out = RationalMatrix::zeros(sig.nodes());
  const auto f = detail::link_flow_table(sig, out.nodes);
  for (std::size_t q = 0; q < out.size(); ++q) {
    const Flow sigma = node_flow_sum(sig, out.nodes[q]);
    for (std::size_t p = 0; p < out.size(); ++p) out.entries[p][q] = Rational(f[p][q], sigma);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix side

inline std::vector<Flow> row_sums(const FlowNetwork& net) {
  std::vector<Flow> out(net.node_count(), 0);
  for (const auto& [link, f] : net.flows()) {
    auto& s = out[net.index_of(link.first)];
    s = detail::checked_add(s, f);
  }
  return out;
}

inline std::vector<Flow> column_sums(const FlowNetwork& net) {
  std::vector<Flow> out(net.node_count(), 0);
  for (const auto& [link, f] : net.flows()) {
    auto& s = out[net.index_of(link.second)];
    s = detail::checked_add(s, f);
  }
  return out;
}

inline bool is_premagic(const FlowNetwork& net) { return row_sums(net) == column_sums(net); }

inline RationalMatrix probability_matrix(const FlowNetwork& net) {
  const Flow kappa = net.total_flow();
  if (kappa == 0) throw Error(ErrorCode::ZeroNodeFlow, "network carries no flow");
  auto out = RationalMatrix::zeros(net.nodes());
  for (const auto& [link, f] : net.flows()) {
    out.entries[net.index_of(link.first)][net.index_of(link.second)] = Rational(f, kappa);
  }
  return out;
}

inline RationalMatrix outflow_stochastic(const FlowNetwork& net) {
  const auto sums = row_sums(net);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] == 0) throw Error(ErrorCode::ZeroNodeFlow, "node \"" + net.nodes()[i].label() + "\" has no outflow");
  }
  auto out = RationalMatrix::zeros(net.nodes());
  for (const auto& [link, f] : net.flows()) {
    const auto p = net.index_of(link.first);
    out.entries[p][net.index_of(link.second)] = Rational(f, sums[p]);
  }
  return out;
}

inline RationalMatrix inflow_stochastic(const FlowNetwork& net) {
  const auto sums = column_sums(net);
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] == 0) throw Error(ErrorCode::ZeroNodeFlow, "node \"" + net.nodes()[i].label() + "\" has no inflow");
  }
  auto out = RationalMatrix::zeros(net.nodes());
  for (const auto& [link, f] : net.flows()) {
    const auto q = net.index_of(link.second);
    out.entries[net.index_of(link.first)][q] = Rational(f, sums[q]);
  }
  return out;
}

/// Premagic and irreducible with some positive flow.
inline bool is_ideal_flow(const FlowNetwork& net) {
  return net.link_count() > 0 && is_premagic(net) && is_irreducible_matrix(net);
}

/// Identical when the normalized signatures match, Equivalent when they only
/// compose to the same labelled matrix.
inline RelationClass classify_relation(const Signature& s1, const Signature& s2) {
  if (s1 == s2) return RelationClass::Identical;
  if (compose(s1) == compose(s2)) return RelationClass::Equivalent;
  return RelationClass::Distinct;
}

}  // namespace ifn

#endif  // IFN_ANALYSIS_HPP
