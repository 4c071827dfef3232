#ifndef IFN_GENERATORS_HPP
#define IFN_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ifn/algebra.hpp"
#include "ifn/analysis.hpp"
#include "ifn/core.hpp"
#include "ifn/cycles.hpp"
#include "ifn/error.hpp"
#include "ifn/linalg.hpp"
#include "ifn/rational.hpp"

namespace ifn {

/// Seeded generator: std::mt19937_64 (whose output sequence is fixed by the
/// standard) with our own rejection-sampled bounded draw and Fisher-Yates
/// shuffle, so results depend only on the seed and not on the library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// "a".."z" for up to 26 nodes, otherwise zero-padded "v01", "v02", ...
inline std::vector<NodeId> default_labels(std::size_t n) {
  std::vector<NodeId> out;
  out.reserve(n);
  if (n <= 26) {
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(std::string(1, static_cast<char>('a' + i)));
    return out;
  }
  const std::size_t width = std::to_string(n).size();
  for (std::size_t i = 1; i <= n; ++i) {
    std::string digits = std::to_string(i);
    out.emplace_back("v" + std::string(width - digits.size(), '0') + digits);
  }
  return out;
}

namespace detail {

constexpr std::size_t kMaxExtraCycleLength = 4;
constexpr Flow kKnapsackWindow = 4096;

/// Unbounded knapsack: multiplicities over `lengths` summing exactly to
/// `amount`. Each amount tries the lengths from a random starting term, which
/// spreads the split across terms. Empty result when unrepresentable.
inline std::optional<std::vector<Flow>> split_exactly(const std::vector<std::size_t>& lengths, Flow amount,
                                                      Rng& rng) {
  constexpr auto kNone = static_cast<std::size_t>(-1);
  const std::size_t k = lengths.size();
  std::vector<std::size_t> choice(static_cast<std::size_t>(amount) + 1, kNone);
  std::vector<bool> reachable(choice.size(), false);
  reachable[0] = true;
  for (std::size_t x = 1; x < choice.size(); ++x) {
    const std::size_t offset = rng.below(k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t t = (offset + i) % k;
      if (lengths[t] <= x && reachable[x - lengths[t]]) {
        reachable[x] = true;
        choice[x] = t;
        break;
      }
    }
  }
  if (!reachable.back()) return std::nullopt;
  std::vector<Flow> counts(lengths.size(), 0);
  for (std::size_t x = choice.size() - 1; x > 0; x -= lengths[choice[x]]) ++counts[choice[x]];
  return counts;
}

}  // namespace detail

/// Random integer IFN signature with exactly n nodes and total flow kappa.
///
/// The shuffled node list forms a Hamiltonian first term, which covers every
/// node and is feasible at kappa = n. Up to n short extra cycles follow, each
/// sharing a node with what is already placed, while they still fit under
/// kappa. The leftover flow is spread across terms by an exact knapsack split
/// over cycle lengths; if the leftover cannot be split, a self-loop on a
/// random node is added, after which any leftover can.
inline Signature random_ifn(std::size_t n, Flow kappa, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "node count must be at least 1");
  if (kappa < static_cast<Flow>(n)) {
    throw Error(ErrorCode::InfeasibleKappa,
                "kappa " + std::to_string(kappa) + " is below the node count " + std::to_string(n));
  }
  Rng rng(seed);
  auto order = default_labels(n);
  rng.shuffle(order);

  std::vector<RawTerm> terms{RawTerm{1, order}};
  Flow placed = static_cast<Flow>(n);

  // Every node is on the first term, so any extra cycle has a pivot with it.
  const std::uint64_t extras = rng.below(n + 1);
  for (std::uint64_t e = 0; e < extras; ++e) {
    const std::size_t len = 1 + rng.below(std::min(n, detail::kMaxExtraCycleLength));
    if (placed + static_cast<Flow>(len) > kappa) continue;
    auto pool = default_labels(n);
    rng.shuffle(pool);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(len), pool.end());
    terms.push_back(RawTerm{1, std::move(pool)});
    placed += static_cast<Flow>(len);
  }

  Flow remainder = kappa - placed;
  if (remainder > detail::kKnapsackWindow) {
    // Bulk of a large remainder goes evenly onto the Hamiltonian term.
    const Flow bulk = (remainder - detail::kKnapsackWindow) / static_cast<Flow>(n);
    terms[0].coefficient += bulk;
    remainder -= bulk * static_cast<Flow>(n);
  }

  for (;;) {
    std::vector<std::size_t> lengths;
    for (const auto& t : terms) lengths.push_back(t.nodes.size());
    if (auto counts = detail::split_exactly(lengths, remainder, rng)) {
      for (std::size_t i = 0; i < terms.size(); ++i) terms[i].coefficient += (*counts)[i];
      break;
    }
    const auto loop_node = order[rng.below(n)];
    terms.push_back(RawTerm{1, {loop_node}});
    remainder -= 1;
  }
  return Signature::normalize(std::span<const RawTerm>(terms));
}

/// Unit-weight support over n nodes, optionally with every self-loop.
inline FlowNetwork complete_support(std::size_t n, bool self_loops) {
  FlowNetwork net;
  const auto labels = default_labels(n);
  for (const auto& p : labels) {
    net.add_node(p);
    for (const auto& q : labels) {
      if (p != q || self_loops) net.set_flow(p, q, 1);
    }
  }
  return net;
}

struct PremierNetwork {
  Signature signature;
  FlowNetwork network;
};

/// Every canonical cycle of the support graph, each with coefficient 1.
inline PremierNetwork premier_network(const FlowNetwork& support, EnumerationOptions options = {}) {
  if (support.link_count() == 0 || strongly_connected_components(support).size() != 1) {
    throw Error(ErrorCode::NotIrreducible, "support graph is not strongly connected");
  }
  std::vector<Term> terms;
  for (auto& cycle : enumerate_canonical_cycles(support, options)) terms.push_back(Term{1, std::move(cycle)});
  PremierNetwork out{Signature::normalize(std::span<const Term>(terms)), {}};
  out.network = compose(out.signature);
  return out;
}

struct StationaryDistribution {
  std::vector<NodeId> nodes;
  std::vector<Rational> weights;
};

namespace detail {

inline void require_stochastic_irreducible(const RationalMatrix& stoch) {
  const std::size_t n = stoch.size();
  if (n == 0) throw Error(ErrorCode::NotStochastic, "matrix is empty");
  if (stoch.entries.size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (stoch.entries[p].size() != n) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
    Rational sum = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const auto& v = stoch.entries[p][q];
      if (v < 0) throw Error(ErrorCode::NotStochastic, "negative entry in row " + stoch.nodes[p].label());
      if (v != 0) adj[p].push_back(q);
      sum += v;
    }
    if (sum != 1) {
      throw Error(ErrorCode::NotStochastic, "row " + stoch.nodes[p].label() + " sums to " + to_string(sum));
    }
  }
  if (tarjan(adj).second != 1) throw Error(ErrorCode::NotIrreducible, "transition graph is not strongly connected");
}

}  // namespace detail

/// Exact pi with pi S = pi and sum(pi) = 1, from (Sᵀ - I) pi = 0 stacked
/// with the normalization row.
inline StationaryDistribution stationary_distribution(const RationalMatrix& stoch) {
  detail::require_stochastic_irreducible(stoch);
  const std::size_t n = stoch.size();
  linalg::Matrix a(n + 1, linalg::Vector(n, Rational(0)));
  linalg::Vector b(n + 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = stoch.entries[j][i];
    a[i][i] -= 1;
    a[n][i] = 1;
  }
  b[n] = 1;
  auto pi = linalg::solve_consistent(a, b);
  if (!pi) throw Error(ErrorCode::NotStochastic, "no stationary distribution");
  return StationaryDistribution{stoch.nodes, std::move(*pi)};
}

/// Integer IFN whose link-probability matrix is pi_p * S_pq, scaled by the
/// LCM of the reduced denominators (the smallest integer representative).
inline FlowNetwork markov_to_integer_ifn(const RationalMatrix& stoch) {
  const auto pi = stationary_distribution(stoch);
  const std::size_t n = stoch.size();
  std::vector<std::vector<Rational>> prob(n, std::vector<Rational>(n, Rational(0)));
  BigInt scale = 1;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      prob[p][q] = pi.weights[p] * stoch.entries[p][q];
      if (prob[p][q] != 0) scale = lcm(scale, denominator_of(prob[p][q]));
    }
  }
  FlowNetwork net;
  for (const auto& v : stoch.nodes) net.add_node(v);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (prob[p][q] == 0) continue;
      const Rational scaled = prob[p][q] * scale;
      net.set_flow(stoch.nodes[p], stoch.nodes[q], to_int64(numerator_of(scaled)));
    }
  }
  return net;
}

}  // namespace ifn

#endif  // IFN_GENERATORS_HPP
