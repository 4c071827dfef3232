#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "ifn/algebra.hpp"
#include "ifn/analysis.hpp"
#include "ifn/generators.hpp"
#include "ifn/sigtext.hpp"
#include "test_support.hpp"

namespace ifn {
namespace {

using testing::dense_network;

RationalMatrix rational(const std::string& letters, std::vector<std::vector<Rational>> m) {
  return RationalMatrix{testing::nodes_of(letters), std::move(m)};
}

TEST(RandomIfnTest, SingleNodeIsForced) {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) EXPECT_EQ(render_signature(random_ifn(1, 5, seed)), "5a");
}

TEST(RandomIfnTest, KappaEqualToNodesForcesOneHamiltonianCycle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto sig = random_ifn(3, 3, seed);
    ASSERT_EQ(sig.size(), 1u);
    EXPECT_EQ(sig.terms()[0].coefficient, 1);
    EXPECT_EQ(sig.terms()[0].cycle.length(), 3u);
  }
}

TEST(RandomIfnTest, PostConditions) {
  const auto sig = random_ifn(5, 40, 7);
  EXPECT_EQ(total_flow(sig), 40);
  EXPECT_EQ(sig.nodes().size(), 5u);
  EXPECT_TRUE(is_irreducible_signature(sig));
  EXPECT_TRUE(is_ideal_flow(compose(sig)));
}

TEST(RandomIfnTest, InfeasibleKappa) {
  try {
    random_ifn(5, 4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleKappa);
  }
  EXPECT_THROW(random_ifn(0, 4, 1), Error);
}

TEST(RandomIfnTest, DeterministicPerSeed) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) EXPECT_EQ(random_ifn(6, 37, seed), random_ifn(6, 37, seed));
  std::set<std::string> distinct;
  for (std::uint64_t seed = 0; seed < 50; ++seed) distinct.insert(render_signature(random_ifn(6, 37, seed)));
  EXPECT_GT(distinct.size(), 40u);
}

TEST(RandomIfnTest, InvariantsProperty) {
  std::mt19937_64 gen(51);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    const Flow kappa = static_cast<Flow>(n + gen() % (9 * n + 1));
    const auto sig = random_ifn(n, kappa, gen());
    EXPECT_EQ(total_flow(sig), kappa);
    EXPECT_EQ(sig.nodes().size(), n);
    EXPECT_TRUE(is_irreducible_signature(sig));
    EXPECT_TRUE(is_ideal_flow(compose(sig)));
  }
}

TEST(RandomIfnTest, LargeKappaAndManyNodes) {
  const auto sig = random_ifn(40, 1'000'000'007, 3);
  EXPECT_EQ(total_flow(sig), 1'000'000'007);
  EXPECT_EQ(sig.nodes().size(), 40u);
  EXPECT_EQ(sig.nodes().front().label(), "v01");
}

TEST(PremierTest, SingleSelfLoop) {
  const auto p = premier_network(dense_network("a", {{1}}));
  EXPECT_EQ(render_signature(p.signature), "a");
  EXPECT_EQ(p.network, dense_network("a", {{1}}));
}

TEST(PremierTest, TwoNodeCompleteWithLoops) {
  const auto p = premier_network(complete_support(2, true));
  EXPECT_EQ(render_signature(p.signature), "a + ab + b");
  EXPECT_EQ(p.network, dense_network("ab", {{1, 1}, {1, 1}}));
  EXPECT_EQ(p.network.total_flow(), 4);
}

TEST(PremierTest, ThreeNodeCompleteWithoutLoops) {
  const auto p = premier_network(complete_support(3, false));
  EXPECT_EQ(p.network, dense_network("abc", {{0, 2, 2}, {2, 0, 2}, {2, 2, 0}}));
  EXPECT_EQ(p.network.total_flow(), 12);
  EXPECT_EQ(p.signature.size(), testing::brute_force_cycles(complete_support(3, false)).size());
  EXPECT_TRUE(is_ideal_flow(p.network));
}

TEST(PremierTest, EveryCoefficientIsOne) {
  const auto support = compose(parse_signature("abc + cd + ade + b"));
  const auto p = premier_network(support);
  EXPECT_EQ(p.signature.size(), testing::brute_force_cycles(support).size());
  for (const auto& t : p.signature.terms()) EXPECT_EQ(t.coefficient, 1);
  EXPECT_TRUE(is_ideal_flow(p.network));
}

TEST(PremierTest, RejectsDisconnectedSupport) {
  EXPECT_THROW(premier_network(compose(parse_signature("ab + cd"))), Error);
  FlowNetwork lone;
  lone.add_node(NodeId("a"));
  EXPECT_THROW(premier_network(lone), Error);
}

TEST(StationaryTest, Examples) {
  EXPECT_EQ(stationary_distribution(rational("ab", {{0, 1}, {1, 0}})).weights,
            (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(stationary_distribution(rational("ab", {{0, 1}, {Rational(1, 2), Rational(1, 2)}})).weights,
            (std::vector<Rational>{Rational(1, 3), Rational(2, 3)}));
  EXPECT_EQ(stationary_distribution(rational("a", {{1}})).weights, (std::vector<Rational>{1}));
}

TEST(StationaryTest, Errors) {
  try {
    stationary_distribution(rational("ab", {{0, 1}, {Rational(1, 2), Rational(1, 3)}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStochastic);
  }
  try {
    stationary_distribution(rational("ab", {{1, 0}, {0, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotIrreducible);
  }
  EXPECT_THROW(stationary_distribution(rational("ab", {{2, -1}, {1, 0}})), Error);
}

TEST(MarkovTest, Examples) {
  const auto swap = markov_to_integer_ifn(rational("ab", {{0, 1}, {1, 0}}));
  EXPECT_EQ(swap, dense_network("ab", {{0, 1}, {1, 0}}));
  EXPECT_EQ(swap.total_flow(), 2);
  const auto lazy = markov_to_integer_ifn(rational("ab", {{0, 1}, {Rational(1, 2), Rational(1, 2)}}));
  EXPECT_EQ(lazy, dense_network("ab", {{0, 1}, {1, 1}}));
  EXPECT_EQ(lazy.total_flow(), 3);
  EXPECT_TRUE(is_premagic(lazy));
  EXPECT_EQ(markov_to_integer_ifn(rational("a", {{1}})), dense_network("a", {{1}}));
}

TEST(MarkovTest, RoundTripProperty) {
  std::mt19937_64 gen(52);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + gen() % 7;
    const auto f = compose(random_ifn(n, static_cast<Flow>(n + gen() % (9 * n + 1)), gen()));
    BigInt g = 0;
    for (const auto& [link, v] : f.flows()) g = boost::multiprecision::gcd(g, BigInt(v));
    const auto s = outflow_stochastic(f);
    const auto pi = stationary_distribution(s);
    // pi S = pi, exactly.
    for (std::size_t q = 0; q < n; ++q) {
      Rational acc = 0;
      for (std::size_t p = 0; p < n; ++p) acc += pi.weights[p] * s.entries[p][q];
      EXPECT_EQ(acc, pi.weights[q]);
    }
    const auto back = markov_to_integer_ifn(s);
    EXPECT_EQ(equivalence_factor(f, back), Rational(g));
    for (const auto& [link, v] : f.flows()) EXPECT_EQ(Rational(back.flow(link.first, link.second)), Rational(v) / Rational(g));
    EXPECT_EQ(back.link_count(), f.link_count());
    EXPECT_TRUE(is_ideal_flow(back));
    EXPECT_EQ(probability_matrix(back), probability_matrix(f));
  }
}

}  // namespace
}  // namespace ifn
