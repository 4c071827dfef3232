#ifndef IFN_DOCUMENT_HPP
#define IFN_DOCUMENT_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ifn/analysis.hpp"
#include "ifn/core.hpp"
#include "ifn/cycles.hpp"
#include "ifn/decompose.hpp"
#include "ifn/error.hpp"
#include "ifn/rational.hpp"
#include "ifn/sigtext.hpp"

// JSON shapes shared by the CLI and the HTTP service. nlohmann::json keeps
// object keys sorted, and dump() without indentation is the canonical text.

namespace ifn::doc {

using Json = nlohmann::json;

inline Json node_labels(const std::vector<NodeId>& nodes) {
  Json out = Json::array();
  for (const auto& v : nodes) out.push_back(v.label());
  return out;
}

/// {"matrix": [[int]], "nodes": [label]}
inline Json matrix_document(const FlowNetwork& net) {
  Json m = Json::array();
  for (const auto& row : net.dense()) m.push_back(row);
  return Json{{"nodes", node_labels(net.nodes())}, {"matrix", std::move(m)}};
}

inline Json rational_rows(const RationalMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.entries) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Json matrix_document(const RationalMatrix& m) {
  return Json{{"nodes", node_labels(m.nodes)}, {"matrix", rational_rows(m)}};
}

namespace detail {

[[noreturn]] inline void invalid(const std::string& what) { throw Error(ErrorCode::InvalidDocument, what); }

inline const Json& field(const Json& obj, const char* name) {
  if (!obj.is_object()) invalid("expected a JSON object");
  const auto it = obj.find(name);
  if (it == obj.end()) invalid(std::string("missing field \"") + name + "\"");
  return *it;
}

/// Node labels with the permutation that sorts them.
inline std::pair<std::vector<NodeId>, std::vector<std::size_t>> sorted_nodes(const Json& doc) {
  const Json& labels = field(doc, "nodes");
  if (!labels.is_array()) invalid("\"nodes\" must be an array");
  std::vector<NodeId> nodes;
  for (const auto& l : labels) {
    if (!l.is_string()) invalid("node labels must be strings");
    nodes.emplace_back(l.get<std::string>());
  }
  std::vector<std::size_t> perm(nodes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
  std::vector<NodeId> sorted;
  for (std::size_t i : perm) {
    if (!sorted.empty() && sorted.back() == nodes[i]) invalid("duplicate node \"" + nodes[i].label() + "\"");
    sorted.push_back(nodes[i]);
  }
  return {sorted, perm};
}

inline const Json& square_rows(const Json& doc, std::size_t n) {
  const Json& m = field(doc, "matrix");
  if (!m.is_array() || m.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "\"matrix\" must have one row per node");
  }
  for (const auto& row : m) {
    if (!row.is_array() || row.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "every matrix row must have one entry per node");
    }
  }
  return m;
}

}  // namespace detail

/// Whether any matrix entry is written as a string (a rational matrix).
inline bool has_rational_entries(const Json& doc) {
  const auto it = doc.find("matrix");
  if (it == doc.end() || !it->is_array()) return false;
  for (const auto& row : *it) {
    if (!row.is_array()) continue;
    for (const auto& v : row) {
      if (v.is_string()) return true;
    }
  }
  return false;
}

/// Reads a flow matrix. Entries must be nonnegative JSON integers. Nodes may
/// arrive in any order; rows and columns are permuted into sorted order.
inline FlowNetwork read_flow_network(const Json& doc) {
  auto [nodes, perm] = detail::sorted_nodes(doc);
  const Json& m = detail::square_rows(doc, nodes.size());
  std::vector<std::vector<Flow>> dense(nodes.size(), std::vector<Flow>(nodes.size(), 0));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const Json& v = m[perm[i]][perm[j]];
      if (!v.is_number_integer()) detail::invalid("flow entries must be integers");
      if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        throw Error(ErrorCode::Overflow, "flow entry does not fit in 64 bits");
      }
      const auto f = v.get<std::int64_t>();
      if (f < 0) detail::invalid("flow entries must be nonnegative");
      dense[i][j] = f;
    }
  }
  return FlowNetwork::from_dense(nodes, dense);
}

/// Reads a matrix whose entries are integers or "p/q" strings.
inline RationalMatrix read_rational_matrix(const Json& doc) {
  auto [nodes, perm] = detail::sorted_nodes(doc);
  const Json& m = detail::square_rows(doc, nodes.size());
  auto out = RationalMatrix::zeros(nodes);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const Json& v = m[perm[i]][perm[j]];
      if (v.is_string()) {
        out.entries[i][j] = parse_rational(v.get<std::string>());
      } else if (v.is_number_integer()) {
        out.entries[i][j] = v.is_number_unsigned() ? Rational(BigInt(v.get<std::uint64_t>()))
                                                   : Rational(BigInt(v.get<std::int64_t>()));
      } else {
        detail::invalid("rational entries must be integers or \"p/q\" strings");
      }
    }
  }
  return out;
}

inline std::string read_signature_field(const Json& body, const char* name) {
  const Json& v = detail::field(body, name);
  if (!v.is_string()) detail::invalid(std::string("\"") + name + "\" must be a string");
  return v.get<std::string>();
}

/// Pivot or cycle text in the same compact/extended style as `sig`.
inline std::string render_path(const std::vector<NodeId>& path, bool compact) {
  return render_nodes(path, compact);
}

/// Aggregate of every string-side statistic for one signature.
inline Json analysis_report(const Signature& sig) {
  const auto nodes = sig.nodes();
  const bool compact = all_letters(nodes);
  const auto net = compose(sig);

  Json sums = Json::object();
  for (const auto& v : nodes) sums[v.label()] = node_flow_sum(sig, v);

  Json pivots = Json::array();
  const auto& terms = sig.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      Json found = Json::array();
      for (const auto& p : find_pivots(terms[i].cycle, terms[j].cycle)) found.push_back(render_path(p.path, compact));
      pivots.push_back(Json{{"terms", {i, j}}, {"pivots", std::move(found)}});
    }
  }

  Json matrix = Json::array();
  for (const auto& row : net.dense()) matrix.push_back(row);

  return Json{
      {"signature", render_signature(sig)},
      {"nodes", node_labels(nodes)},
      {"kappa", total_flow(sig)},
      {"nodeFlowSums", std::move(sums)},
      {"matrix", std::move(matrix)},
      {"probabilityMatrix", rational_rows(probability_matrix(sig))},
      {"outflowStochastic", rational_rows(outflow_stochastic(sig))},
      {"inflowStochastic", rational_rows(inflow_stochastic(sig))},
      {"pivots", std::move(pivots)},
      {"irreducible", is_irreducible_signature(sig)},
      {"premagic", is_premagic(net)},
      {"idealFlow", is_ideal_flow(net)},
  };
}

inline Json check_report(const FlowNetwork& net) {
  return Json{{"premagic", is_premagic(net)},
              {"irreducible", is_irreducible_matrix(net)},
              {"idealFlow", is_ideal_flow(net)}};
}

/// {"cycles": [...], "weights": ["p/q"]} plus the residual per link.
inline Json witness_document(const NonIntegerWitness& w, const std::vector<NodeId>& nodes) {
  const bool compact = all_letters(nodes);
  Json cycles = Json::array();
  for (const auto& c : w.cycles) cycles.push_back(render_path(c.nodes(), compact));
  Json weights = Json::array();
  for (const auto& x : w.weights.values) weights.push_back(to_string(x));
  Json residual = Json::array();
  for (const auto& r : w.weights.residual) residual.push_back(to_string(r));
  return Json{{"witness", {{"cycles", std::move(cycles)}, {"weights", std::move(weights)}}},
              {"residual", std::move(residual)}};
}

}  // namespace ifn::doc

#endif  // IFN_DOCUMENT_HPP
