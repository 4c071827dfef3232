#ifndef IFN_CYCLES_HPP
#define IFN_CYCLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ifn/core.hpp"
#include "ifn/error.hpp"

namespace ifn {

namespace detail {

/// Index-based adjacency over the network's sorted node list.
inline std::vector<std::vector<std::size_t>> adjacency_lists(const FlowNetwork& net) {
  std::vector<std::vector<std::size_t>> adj(net.node_count());
  for (const auto& [link, f] : net.flows()) adj[net.index_of(link.first)].push_back(net.index_of(link.second));
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

/// Tarjan's algorithm restricted to vertices with index >= `floor`. Returns a
/// component id per vertex (vertices below the floor get SIZE_MAX) and the count.
inline std::pair<std::vector<std::size_t>, std::size_t> tarjan(
    const std::vector<std::vector<std::size_t>>& adj, std::size_t floor = 0) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  const std::size_t n = adj.size();
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  std::size_t count = 0;

  // Explicit call stack: (vertex, position in its adjacency list).
  std::vector<std::pair<std::size_t, std::size_t>> calls;
  for (std::size_t root = floor; root < n; ++root) {
    if (index[root] != kUnset) continue;
    calls.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      auto& [v, pos] = calls.back();
      if (pos < adj[v].size()) {
        const std::size_t w = adj[v][pos++];
        if (w < floor) continue;
        if (index[w] == kUnset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      calls.pop_back();
      if (!calls.empty()) {
        const std::size_t parent = calls.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != done);
        ++count;
      }
    }
  }
  return {comp, count};
}

}  // namespace detail

/// Maximal strongly connected components, each sorted, listed by smallest node.
inline std::vector<std::vector<NodeId>> strongly_connected_components(const FlowNetwork& net) {
  const auto [comp, count] = detail::tarjan(detail::adjacency_lists(net));
  std::vector<std::vector<NodeId>> out(count);
  for (std::size_t i = 0; i < net.node_count(); ++i) out[comp[i]].push_back(net.nodes()[i]);
  std::sort(out.begin(), out.end());
  return out;
}

struct EnumerationOptions {
  std::size_t max_cycles = 100000;
};

/// Every elementary cycle of the support graph (self-loops included) in
/// canonical rotation, sorted. Johnson's circuit search, run from each vertex
/// s over the strongly connected component of s in the subgraph of vertices >= s;
/// every circuit found therefore already starts at its smallest node.
inline std::vector<CanonicalCycle> enumerate_canonical_cycles(const FlowNetwork& net,
                                                              EnumerationOptions options = {}) {
  const auto adj = detail::adjacency_lists(net);
  const std::size_t n = adj.size();
  std::vector<std::vector<std::size_t>> found;

  std::vector<bool> blocked(n, false);
  std::vector<std::set<std::size_t>> blocked_by(n);
  std::vector<std::size_t> path;
  std::vector<std::size_t> comp;

  std::function<void(std::size_t)> unblock = [&](std::size_t u) {
    blocked[u] = false;
    auto waiting = std::move(blocked_by[u]);
    blocked_by[u].clear();
    for (std::size_t w : waiting) {
      if (blocked[w]) unblock(w);
    }
  };

  for (std::size_t s = 0; s < n; ++s) {
    const auto scc = detail::tarjan(adj, s);
    comp = scc.first;
    const std::size_t home = comp[s];
    for (std::size_t v = s; v < n; ++v) {
      blocked[v] = false;
      blocked_by[v].clear();
    }
    auto in_component = [&](std::size_t w) { return w >= s && comp[w] == home; };

    std::function<bool(std::size_t)> circuit = [&](std::size_t v) -> bool {
      bool closed = false;
      path.push_back(v);
      blocked[v] = true;
      for (std::size_t w : adj[v]) {
        if (!in_component(w)) continue;
        if (w == s) {
          found.push_back(path);
          if (found.size() > options.max_cycles) {
            throw Error(ErrorCode::CycleBudgetExceeded,
                        "more than " + std::to_string(options.max_cycles) + " cycles");
          }
          closed = true;
        } else if (!blocked[w] && circuit(w)) {
          closed = true;
        }
      }
      if (closed) {
        unblock(v);
      } else {
        for (std::size_t w : adj[v]) {
          if (in_component(w)) blocked_by[w].insert(v);
        }
      }
      path.pop_back();
      return closed;
    };
    circuit(s);
  }

  std::vector<CanonicalCycle> cycles;
  cycles.reserve(found.size());
  for (const auto& idx : found) {
    std::vector<NodeId> nodes;
    nodes.reserve(idx.size());
    for (std::size_t i : idx) nodes.push_back(net.nodes()[i]);
    cycles.push_back(CanonicalCycle::from_nodes(std::move(nodes)));
  }
  std::sort(cycles.begin(), cycles.end());
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
  return cycles;
}

/// A node sequence contiguous in two cycles: one node, one link, or a longer path.
struct Pivot {
  std::vector<NodeId> path;

  bool is_node() const { return path.size() == 1; }
  bool is_link() const { return path.size() == 2; }

  friend bool operator==(const Pivot&, const Pivot&) = default;
  friend auto operator<=>(const Pivot& a, const Pivot& b) { return a.path <=> b.path; }
};

/// All maximal common directed paths of two cycles, with wraparound. Shared
/// links of two distinct simple cycles form vertex-disjoint chains; each chain
/// is a path pivot and each shared node off every chain is a node pivot.
inline std::vector<Pivot> find_pivots(const CanonicalCycle& c1, const CanonicalCycle& c2) {
  if (c1 == c2) return {Pivot{c1.nodes()}};
  std::map<NodeId, NodeId> next;
  std::set<NodeId> has_prev;
  for (const auto& [from, to] : c1.links()) {
    if (c2.contains_link(from, to)) {
      next.emplace(from, to);
      has_prev.insert(to);
    }
  }
  std::vector<Pivot> out;
  std::set<NodeId> on_chain;
  for (const auto& [start, unused] : next) {
    if (has_prev.count(start)) continue;
    Pivot p;
    NodeId cur = start;
    p.path.push_back(cur);
    on_chain.insert(cur);
    for (auto it = next.find(cur); it != next.end(); it = next.find(cur)) {
      cur = it->second;
      p.path.push_back(cur);
      on_chain.insert(cur);
    }
    out.push_back(std::move(p));
  }
  for (const auto& node : c1.nodes()) {
    if (c2.contains(node) && !on_chain.count(node)) out.push_back(Pivot{{node}});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Binary link-by-cycle incidence H with the link flow vector y.
struct LinkCycleSystem {
  std::vector<Link> links;                          // sorted by (from, to)
  std::vector<CanonicalCycle> cycles;               // column order
  std::vector<std::vector<std::uint8_t>> incidence; // links.size() x cycles.size()
  std::vector<Flow> link_flows;                     // y, in `links` order

  std::size_t rows() const { return links.size(); }
  std::size_t cols() const { return cycles.size(); }
};

inline LinkCycleSystem build_link_cycle_system(const FlowNetwork& net, std::vector<CanonicalCycle> cycles) {
  LinkCycleSystem sys;
  std::map<Link, std::size_t> row_of;
  for (const auto& [link, f] : net.flows()) {
    row_of.emplace(link, sys.links.size());
    sys.links.push_back(link);
    sys.link_flows.push_back(f);
  }
  sys.incidence.assign(sys.links.size(), std::vector<std::uint8_t>(cycles.size(), 0));
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    for (const auto& link : cycles[c].links()) {
      const auto it = row_of.find(link);
      if (it == row_of.end()) {
        throw Error(ErrorCode::UnknownLink,
                    "cycle uses link " + link.first.label() + "->" + link.second.label() + " absent from the network");
      }
      sys.incidence[it->second][c] = 1;
    }
  }
  sys.cycles = std::move(cycles);
  return sys;
}

}  // namespace ifn

#endif  // IFN_CYCLES_HPP
