#ifndef IFN_DECOMPOSE_HPP
#define IFN_DECOMPOSE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "ifn/algebra.hpp"
#include "ifn/analysis.hpp"
#include "ifn/core.hpp"
#include "ifn/cycles.hpp"
#include "ifn/error.hpp"
#include "ifn/linalg.hpp"
#include "ifn/rational.hpp"

namespace ifn {

/// Cycle extraction by walking the network. Each round starts at the smallest
/// node with outflow, always steps to the smallest successor with remaining
/// flow, and closes the walk at the first repeated node. The closed cycle's
/// minimum link flow becomes its coefficient and is subtracted.
inline Signature greedy_decompose(const FlowNetwork& input) {
  if (!is_premagic(input)) {
    throw Error(ErrorCode::NotPremagic, "row and column sums differ at some node");
  }
  FlowNetwork net = input;
  std::vector<Term> terms;
  while (net.link_count() != 0) {
    // flows() is ordered by (from, to): the first key has the smallest source,
    // and lower_bound(node, smallest) finds the smallest successor.
    const auto& flows = net.flows();
    std::vector<NodeId> walk{flows.begin()->first.first};
    std::map<NodeId, std::size_t> seen{{walk.front(), 0}};
    std::size_t cycle_start = 0;
    for (;;) {
      const NodeId& cur = walk.back();
      const auto it = flows.lower_bound(Link{cur, net.nodes().front()});
      // Premagic with inflow guarantees outflow at every visited node.
      const NodeId next = it->first.second;
      const auto hit = seen.find(next);
      if (hit != seen.end()) {
        cycle_start = hit->second;
        break;
      }
      seen.emplace(next, walk.size());
      walk.push_back(next);
    }
    auto cycle = CanonicalCycle::from_nodes({walk.begin() + static_cast<std::ptrdiff_t>(cycle_start), walk.end()});
    Flow least = 0;
    for (const auto& [from, to] : cycle.links()) {
      const Flow f = net.flow(from, to);
      least = least == 0 ? f : std::min(least, f);
    }
    net = assign(std::move(net), -least, cycle);
    terms.push_back(Term{least, std::move(cycle)});
  }
  return Signature::normalize(std::span<const Term>(terms));
}

/// Weights x aligned with a system's cycle order, plus the residual H x - y.
struct CycleWeights {
  std::vector<Rational> values;
  std::vector<Rational> residual;

  bool exact() const {
    return std::all_of(residual.begin(), residual.end(), [](const Rational& r) { return r == 0; });
  }
};

inline CycleWeights solve_cycle_weights(const LinkCycleSystem& system) {
  if (system.link_flows.size() != system.rows() || system.incidence.size() != system.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "link flow vector has " + std::to_string(system.link_flows.size()) +
                                                  " entries for " + std::to_string(system.rows()) + " links");
  }
  linalg::Matrix h(system.rows(), linalg::Vector(system.cols(), Rational(0)));
  linalg::Vector y(system.rows());
  for (std::size_t r = 0; r < system.rows(); ++r) {
    if (system.incidence[r].size() != system.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "incidence row " + std::to_string(r) + " has wrong width");
    }
    for (std::size_t c = 0; c < system.cols(); ++c) h[r][c] = system.incidence[r][c];
    y[r] = system.link_flows[r];
  }
  auto solved = linalg::least_squares(h, y);
  return CycleWeights{std::move(solved.x), std::move(solved.residual)};
}

/// Rational weights that did not form a nonnegative integer signature.
struct NonIntegerWitness {
  std::vector<CanonicalCycle> cycles;
  CycleWeights weights;
};

using LinearDecomposition = std::variant<Signature, NonIntegerWitness>;

inline LinearDecomposition linear_decompose(const FlowNetwork& net, EnumerationOptions options = {}) {
  if (!is_premagic(net)) {
    throw Error(ErrorCode::NotPremagic, "row and column sums differ at some node");
  }
  auto system = build_link_cycle_system(net, enumerate_canonical_cycles(net, options));
  auto weights = solve_cycle_weights(system);
  const bool integral = weights.exact() &&
                        std::all_of(weights.values.begin(), weights.values.end(),
                                    [](const Rational& w) { return w >= 0 && is_integer(w); });
  if (!integral) return NonIntegerWitness{std::move(system.cycles), std::move(weights)};
  std::vector<Term> terms;
  for (std::size_t i = 0; i < system.cycles.size(); ++i) {
    const auto coefficient = to_int64(numerator_of(weights.values[i]));
    if (coefficient != 0) terms.push_back(Term{coefficient, system.cycles[i]});
  }
  return Signature::normalize(std::span<const Term>(terms));
}

}  // namespace ifn

#endif  // IFN_DECOMPOSE_HPP
