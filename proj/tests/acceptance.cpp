// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "golden_cases.hpp"
#include "ifn/ifn.hpp"
#include "test_support.hpp"

namespace {

using namespace ifn;
using Clock = std::chrono::steady_clock;

constexpr int kCases = 500;

/// Collects the first few failure messages of a criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 3) failures.push_back(what);
  }
  bool ok() const { return failures.empty(); }
};

/// A random IFN within the property-suite bounds: n <= 8, n <= kappa <= 10n.
struct Instance {
  std::size_t n;
  Flow kappa;
  Signature sig;
  FlowNetwork net;
};

Instance random_instance(std::mt19937_64& gen) {
  const std::size_t n = 1 + gen() % 8;
  const Flow kappa = static_cast<Flow>(n + gen() % (9 * n + 1));
  auto sig = random_ifn(n, kappa, gen());
  auto net = compose(sig);
  return {n, kappa, std::move(sig), std::move(net)};
}

void worked_compose(Check& c) {
  const auto s1 = parse_signature("a + abcd + 3b + bd");
  const auto s2 = parse_signature("3b + a + bcd + abd");
  const auto expected = testing::worked_example_matrix();
  c.expect(compose(s1) == expected, "compose of the first signature");
  c.expect(compose(s2) == expected, "compose of the second signature");
  c.expect(classify_relation(s1, s2) == RelationClass::Equivalent, "relation is not equivalent");
}

void identical_and_canon(Check& c) {
  const auto s1 = parse_signature("bca + 2cab");
  const auto s2 = parse_signature("3abc");
  c.expect(classify_relation(s1, s2) == RelationClass::Identical, "relation is not identical");
  c.expect(render_signature(s1) == "3abc", "canon of bca + 2cab is " + render_signature(s1));
  c.expect(render_signature(s2) == "3abc", "canon of 3abc is " + render_signature(s2));
}

void irreducible_and_pivots(Check& c) {
  c.expect(is_irreducible_signature(parse_signature("abcd + cdabe + ef")), "signature reported reducible");
  const auto path = find_pivots(testing::cycle("abcd"), testing::cycle("cdabe"));
  c.expect(path.size() == 1 && render_nodes(path[0].path, true) == "cdab" && !path[0].is_node(), "path pivot cdab");
  const auto node = find_pivots(testing::cycle("cdabe"), testing::cycle("ef"));
  c.expect(node.size() == 1 && render_nodes(node[0].path, true) == "e" && node[0].is_node(), "node pivot e");
}

void greedy_round_trip(Check& c) {
  std::mt19937_64 gen(1001);
  for (int i = 0; i < kCases; ++i) {
    const auto inst = random_instance(gen);
    const auto back = greedy_decompose(inst.net);
    c.expect(compose(back) == inst.net, "round trip differs for " + render_signature(inst.sig));
    c.expect(back.size() <= inst.net.link_count(), "more terms than links for " + render_signature(inst.sig));
  }
}

void irreducibility_agreement(Check& c) {
  std::mt19937_64 gen(1002);
  int reducible = 0;
  for (int i = 0; i < kCases; ++i) {
    Signature sig;
    switch (i % 3) {
      case 0: sig = random_instance(gen).sig; break;
      case 1: sig = testing::random_signature(gen, 8, 5, 3); break;
      default: {
        const std::size_t n1 = 1 + gen() % 4, n2 = 1 + gen() % 4;
        sig = testing::disjoint_union(gen, n1, n2, static_cast<Flow>(n1 + gen() % (9 * n1)),
                                      static_cast<Flow>(n2 + gen() % (9 * n2)));
        c.expect(!is_irreducible_signature(sig), "disjoint union reported irreducible: " + render_signature(sig));
      }
    }
    const bool by_terms = is_irreducible_signature(sig);
    reducible += by_terms ? 0 : 1;
    c.expect(by_terms == is_irreducible_matrix(compose(sig)), "disagreement on " + render_signature(sig));
  }
  c.expect(reducible >= kCases / 3, "too few reducible cases: " + std::to_string(reducible));
}

void premagic_and_scc(Check& c) {
  std::mt19937_64 gen(1003);
  std::bernoulli_distribution edge(0.3);
  for (int i = 0; i < kCases; ++i) {
    const auto net = compose(i % 2 ? random_instance(gen).sig : testing::random_signature(gen, 8, 6, 5));
    c.expect(is_premagic(net), "compose output not premagic");
    c.expect((strongly_connected_components(net).size() == 1) == is_irreducible_matrix(net), "SCC vs power on compose output");
    // Arbitrary nonnegative matrices, most of them not premagic.
    const std::size_t n = 1 + gen() % 8;
    std::vector<std::vector<Flow>> m(n, std::vector<Flow>(n, 0));
    for (auto& row : m)
      for (auto& v : row) v = edge(gen) ? 1 + static_cast<Flow>(gen() % 4) : 0;
    const auto raw = FlowNetwork::from_dense(default_labels(n), m);
    c.expect((strongly_connected_components(raw).size() == 1) == is_irreducible_matrix(raw), "SCC vs power on random matrix");
  }
}

void string_matrix_agreement(Check& c) {
  std::mt19937_64 gen(1004);
  for (int i = 0; i < kCases; ++i) {
    const auto sig = i % 2 ? random_instance(gen).sig : testing::random_signature(gen, 8, 6, 5);
    const auto net = compose(sig);
    const std::string where = render_signature(sig);
    c.expect(total_flow(sig) == net.total_flow(), "kappa for " + where);
    const auto rows = row_sums(net);
    for (std::size_t p = 0; p < net.node_count(); ++p) {
      const auto& u = net.nodes()[p];
      c.expect(node_flow_sum(sig, u) == rows[p], "node sum for " + where);
      for (const auto& v : net.nodes()) c.expect(link_flow(sig, u, v) == net.flow(u, v), "link flow for " + where);
    }
    const auto p = probability_matrix(sig);
    const auto s = outflow_stochastic(sig);
    const auto t = inflow_stochastic(sig);
    c.expect(p == probability_matrix(net), "P for " + where);
    c.expect(s == outflow_stochastic(net), "S for " + where);
    c.expect(t == inflow_stochastic(net), "T for " + where);
    Rational total = 0;
    for (std::size_t a = 0; a < p.size(); ++a) {
      Rational row = 0, col = 0;
      for (std::size_t b = 0; b < p.size(); ++b) {
        total += p.entries[a][b];
        row += s.entries[a][b];
        col += t.entries[b][a];
      }
      c.expect(row == 1, "S row not stochastic for " + where);
      c.expect(col == 1, "T column not stochastic for " + where);
    }
    c.expect(total == 1, "P does not sum to 1 for " + where);
  }
}

void linear_route(Check& c) {
  std::mt19937_64 gen(1005);
  for (int i = 0; i < kCases; ++i) {
    const auto inst = random_instance(gen);
    const auto sys = build_link_cycle_system(inst.net, enumerate_canonical_cycles(inst.net));
    const auto w = solve_cycle_weights(sys);
    c.expect(w.exact(), "nonzero residual for " + render_signature(inst.sig));
    for (std::size_t r = 0; r < sys.rows(); ++r) {
      Rational sum = 0;
      for (std::size_t k = 0; k < sys.cols(); ++k)
        if (sys.incidence[r][k]) sum += w.values[k];
      c.expect(sum == sys.link_flows[r], "H x != y for " + render_signature(inst.sig));
    }
  }
}

void markov_round_trip(Check& c) {
  std::mt19937_64 gen(1006);
  for (int i = 0; i < kCases; ++i) {
    // A common factor k <= 3 keeps kappa within 10n while forcing gcd > 1 often.
    const std::size_t n = 1 + gen() % 8;
    const Flow k = 1 + static_cast<Flow>(i % 3);
    const Flow kappa = static_cast<Flow>(n + gen() % (10 * n / static_cast<std::size_t>(k) - n + 1));
    const auto f = scale_network(compose(random_ifn(n, kappa, gen())), k);
    Flow g = 0;
    for (const auto& [link, v] : f.flows()) g = std::gcd(g, v);
    const auto s = outflow_stochastic(f);
    const auto back = markov_to_integer_ifn(s);
    bool divided = back.nodes() == f.nodes() && back.link_count() == f.link_count();
    for (const auto& [link, v] : f.flows()) divided = divided && back.flow(link.first, link.second) * g == v;
    c.expect(divided, "result is not F/g");
    c.expect(equivalence_factor(f, back) == Rational(g), "equivalence factor is not g");
    const auto pi = stationary_distribution(s);
    for (std::size_t q = 0; q < n; ++q) {
      Rational acc = 0;
      for (std::size_t p = 0; p < n; ++p) acc += pi.weights[p] * s.entries[p][q];
      c.expect(acc == pi.weights[q], "pi S - pi is not zero");
    }
  }
}

void scaling(Check& c) {
  std::mt19937_64 gen(1007);
  for (int i = 0; i < kCases; ++i) {
    const auto inst = random_instance(gen);
    const auto p = probability_matrix(inst.net);
    for (Flow k : {2, 3, 7}) c.expect(probability_matrix(scale_network(inst.net, k)) == p, "P changed under scaling");
  }
}

/// Sum of every brute-force cycle with coefficient 1.
FlowNetwork brute_force_premier(const FlowNetwork& support) {
  FlowNetwork out;
  for (const auto& v : support.nodes()) out.add_node(v);
  for (const auto& labels : testing::brute_force_cycles(support)) {
    for (std::size_t i = 0; i < labels.size(); ++i) out.add_flow(NodeId(labels[i]), NodeId(labels[(i + 1) % labels.size()]), 1);
  }
  return out;
}

void premier_fixtures(Check& c) {
  const auto three = premier_network(complete_support(3, false));
  c.expect(three.network == testing::dense_network("abc", {{0, 2, 2}, {2, 0, 2}, {2, 2, 0}}), "3-node entries");
  c.expect(three.network.total_flow() == 12, "3-node kappa");
  c.expect(three.network == brute_force_premier(complete_support(3, false)), "3-node brute force");
  const auto two = premier_network(complete_support(2, true));
  c.expect(two.network == testing::dense_network("ab", {{1, 1}, {1, 1}}), "2-node entries");
  c.expect(two.network == brute_force_premier(complete_support(2, true)), "2-node brute force");
}

void performance(Check& c) {
  std::mt19937_64 gen(1008);
  const auto labels = default_labels(100);
  std::vector<RawTerm> raw;
  for (int t = 0; t < 50; ++t) {
    std::vector<NodeId> pool = labels;
    std::shuffle(pool.begin(), pool.end(), gen);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(2 + gen() % 10), pool.end());
    raw.push_back(RawTerm{1, pool});
  }
  const auto sig = Signature::normalize(std::span<const RawTerm>(raw));
  auto start = Clock::now();
  const bool irreducible = is_irreducible_signature(sig);
  const double sig_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  c.expect(irreducible == is_irreducible_matrix(compose(sig)), "signature answer disagrees with matrix");
  c.expect(sig_seconds < 1.0, "signature irreducibility took " + std::to_string(sig_seconds) + " s");

  // A 200-node ring needs the full (n - 1)-th power; extra chords add density.
  const auto big = default_labels(200);
  std::vector<RawTerm> ring{RawTerm{1, big}};
  for (int t = 0; t < 300; ++t) {
    const std::size_t u = gen() % 200, v = (u + 1 + gen() % 199) % 200;
    ring.push_back(RawTerm{1, {big[u], big[v]}});
  }
  const auto net = compose(Signature::normalize(std::span<const RawTerm>(ring)));
  start = Clock::now();
  const bool big_irreducible = is_irreducible_matrix(net);
  const double pow_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  c.expect(big_irreducible, "200-node ring reported reducible");
  c.expect(pow_seconds < 5.0, "boolean power took " + std::to_string(pow_seconds) + " s");
}

void cli_golden(Check& c) {
  const auto cases = testing::load_golden_cases(IFN_GOLDEN_DIR);
  c.expect(!cases.empty(), "no golden cases found");
  for (const std::string verb : {"compose", "decompose", "analyze", "relate"}) {
    bool covered = false;
    for (const auto& g : cases) covered = covered || g.args.front() == verb;
    c.expect(covered, "no golden case for " + verb);
  }
  for (const auto& g : cases) {
    const auto r = testing::run_cli(g.args);
    c.expect(r.code == 0, g.name + " exited " + std::to_string(r.code));
    c.expect(r.out == testing::read_text(std::string(IFN_GOLDEN_DIR) + "/" + g.name + ".out"), g.name + " output differs");
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Check&);
    bool property;
  };
  const Criterion criteria[] = {
      {"1 worked example composes to the 4x4 matrix; relation equivalent", worked_compose, false},
      {"2 identical relation and canonical form 3abc", identical_and_canon, false},
      {"3 irreducible signature with pivots cdab and e", irreducible_and_pivots, false},
      {"4 greedy round trip over 500 random IFNs", greedy_round_trip, true},
      {"5 signature and matrix irreducibility agree, reducible unions included", irreducibility_agreement, true},
      {"6 compose output premagic; SCC and boolean power agree", premagic_and_scc, true},
      {"7 string and matrix quantities agree exactly", string_matrix_agreement, true},
      {"8 linear route has zero residual and H x = y", linear_route, true},
      {"9 Markov round trip gives F/g, factor g, zero stationary residual", markov_round_trip, true},
      {"10 probability matrix invariant under scaling by 2, 3, 7", scaling, true},
      {"11 premier fixtures match brute-force enumeration", premier_fixtures, false},
      {"12 performance: 50 terms on 100 nodes, boolean power on 200 nodes", performance, false},
      {"13 CLI golden files byte-exact", cli_golden, false},
  };

  int failed = 0;
  double property_seconds = 0;
  for (const auto& criterion : criteria) {
    Check check;
    const auto start = Clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (criterion.property) property_seconds += seconds;
    std::ostringstream line;
    line << (check.ok() ? "PASS " : "FAIL ") << criterion.name << " (" << seconds << " s)";
    for (const auto& f : check.failures) line << "\n    " << f;
    std::cout << line.str() << "\n";
    failed += check.ok() ? 0 : 1;
  }
  const bool fast = property_seconds < 60.0;
  std::cout << (fast ? "PASS " : "FAIL ") << "property suites 4-10 finish within 60 s (" << property_seconds
            << " s)\n";
  failed += fast ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
