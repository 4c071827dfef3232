#ifndef IFN_ALGEBRA_HPP
#define IFN_ALGEBRA_HPP

#include <optional>
#include <string>

#include "ifn/connectivity.hpp"
#include "ifn/core.hpp"
#include "ifn/error.hpp"
#include "ifn/rational.hpp"

namespace ifn {

/// Adds `coefficient` units of flow along every link of `cycle`, closing link
/// included. A negative coefficient removes flow and must not drive any link
/// below zero; links that reach zero are dropped.
inline FlowNetwork assign(FlowNetwork net, Coefficient coefficient, const CanonicalCycle& cycle) {
  const auto links = cycle.links();
  if (coefficient < 0) {
    for (const auto& [from, to] : links) {
      if (net.flow(from, to) < -coefficient) {
        throw Error(ErrorCode::NegativeFlowResult,
                    "link " + from.label() + "->" + to.label() + " carries " +
                        std::to_string(net.flow(from, to)) + " < " + std::to_string(-coefficient));
      }
    }
  }
  for (const auto& [from, to] : links) net.add_flow(from, to, coefficient);
  return net;
}

/// Union of nodes, entrywise sum of flows.
inline FlowNetwork merge(FlowNetwork n1, const FlowNetwork& n2) {
  for (const auto& node : n2.nodes()) n1.add_node(node);
  for (const auto& [link, f] : n2.flows()) n1.add_flow(link.first, link.second, f);
  return n1;
}

enum class ComposeMode { Lenient, Strict };

/// Folds assign over the terms starting from the empty network. Strict mode
/// refuses signatures whose terms are not pivot-connected.
inline FlowNetwork compose(const Signature& sig, ComposeMode mode = ComposeMode::Lenient) {
  if (mode == ComposeMode::Strict && (sig.empty() || !is_irreducible_signature(sig))) {
    throw Error(ErrorCode::NotIrreducible, "signature terms are not connected by pivots");
  }
  FlowNetwork net;
  for (const auto& term : sig.terms()) net = assign(std::move(net), term.coefficient, term.cycle);
  return net;
}

inline FlowNetwork scale_network(const FlowNetwork& net, Flow factor) {
  if (factor < 1) throw Error(ErrorCode::InvalidArgument, "scale factor must be at least 1");
  FlowNetwork out;
  for (const auto& node : net.nodes()) out.add_node(node);
  for (const auto& [link, f] : net.flows()) out.set_flow(link.first, link.second, detail::checked_mul(f, factor));
  return out;
}

/// Global factor zeta with n1 = zeta * n2, if one exists. Requires equal node
/// sets, equal support, and a single ratio across every link.
inline std::optional<Rational> equivalence_factor(const FlowNetwork& n1, const FlowNetwork& n2) {
  if (n1.nodes() != n2.nodes() || n1.link_count() != n2.link_count() || n1.link_count() == 0) {
    return std::nullopt;
  }
  std::optional<Rational> factor;
  auto it2 = n2.flows().begin();
  for (const auto& [link, f1] : n1.flows()) {
    if (it2->first != link) return std::nullopt;
    const Rational ratio(f1, it2->second);
    if (factor && *factor != ratio) return std::nullopt;
    factor = ratio;
    ++it2;
  }
  return factor;
}

}  // namespace ifn

#endif  // IFN_ALGEBRA_HPP
