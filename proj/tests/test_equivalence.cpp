#include <gtest/gtest.h>

#include "latrec/equivalence.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace latrec {
namespace {

std::vector<Target> all_targets(const Dag& g) {
  std::vector<Target> out{std::nullopt};
  for (int v = 0; v < g.node_count(); ++v) out.push_back(v);
  return out;
}

TEST(MarkovEquivalent, SmallCases) {
  EXPECT_TRUE(markov_equivalent(Dag(2, {{0, 1}}), Dag(2, {{1, 0}})));
  EXPECT_FALSE(markov_equivalent(Dag(3, {{0, 2}, {1, 2}}), Dag(3, {{0, 2}, {2, 1}})));
  EXPECT_THROW(markov_equivalent(Dag(2, {}), Dag(3, {})), InputError);
}

// Verma-Pearl agrees with full d-separation family equality.
TEST(MarkovEquivalent, AgreesWithDsepFamilies) {
  Rng rng(21, {});
  int equal_seen = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Dag g1 = oracles::random_dag(rng, 6, 0.4);
    Dag g2 = oracles::random_dag(rng, 6, 0.4);
    if (g2.node_count() != g1.node_count()) continue;
    // Mix in genuinely equivalent pairs by reversing a covered edge.
    if (trial % 3 == 0) {
      for (const Edge& e : g1.edges())
        if (edge_class(g1, e.first, e.second) != EdgeClass::Normal) {
          g2 = reverse_edge(g1, e);
          break;
        }
    }
    const bool families_equal =
        dsep_family(g1, g1.all_nodes(), false) == dsep_family(g2, g2.all_nodes(), false);
    EXPECT_EQ(markov_equivalent(g1, g2), families_equal);
    equal_seen += families_equal;
  }
  EXPECT_GT(equal_seen, 10);
}

TEST(IecEquivalent, ExamplesAndIdentity) {
  const Dag latent = fixtures::imaginary_pair_model().latent_dag();
  EXPECT_TRUE(iec_equivalent(latent, reverse_edge(latent, {1, 3})));
  EXPECT_TRUE(iec_equivalent(latent, latent));
  // Covered but non-isolated edge: Markov equivalent yet in different IECs.
  const Dag g1(3, {{0, 1}, {0, 2}, {1, 2}});
  const Dag g2 = reverse_edge(g1, {1, 2});
  EXPECT_TRUE(markov_equivalent(g1, g2));
  EXPECT_FALSE(iec_equivalent(g1, g2));
}

TEST(IecEquivalent, RefinesMarkovEquivalence) {
  Rng rng(31, {});
  for (int trial = 0; trial < 200; ++trial) {
    const Dag g = oracles::random_dag(rng, 6, 0.4);
    for (const Dag& member : iec_class(g)) EXPECT_TRUE(markov_equivalent(g, member));
  }
}

TEST(InterventionalFamilySet, EdgelessIsSingleton) {
  const Dag g(4, {});
  EXPECT_EQ(interventional_family_set(g, all_targets(g), g.all_nodes(), false).size(), 1u);
}

TEST(InterventionalFamilySet, ObservationallyAmbiguousPair) {
  // Identical observational families; complete targets split them apart.
  const auto a = fixtures::shared_parent_model();
  const auto b = fixtures::latent_chain_model();
  EXPECT_EQ(interventional_udg_set(a, {std::nullopt}), interventional_udg_set(b, {std::nullopt}));
  EXPECT_NE(interventional_udg_set(a, complete_targets(a)),
            interventional_udg_set(b, complete_targets(b)));
}

TEST(InterventionalFamilySet, LatentTracePairIsIndistinguishable) {
  const auto a = fixtures::wrapped_chain_model();
  const auto b = fixtures::single_latent_triple_model();
  EXPECT_EQ(interventional_udg_set(a, complete_targets(a)),
            interventional_udg_set(b, complete_targets(b)));
}

TEST(InterventionalFamilySet, IncompleteTargetPairIsIndistinguishable) {
  const auto a = fixtures::three_latent_pure_chain();
  const auto b = fixtures::two_latent_fork_chain();
  // Stated family: observational plus the middle latent.
  EXPECT_EQ(interventional_udg_set(a, {std::nullopt, 1}),
            interventional_udg_set(b, {std::nullopt, 1}));
  // Complete families do distinguish them.
  EXPECT_NE(interventional_udg_set(a, complete_targets(a)),
            interventional_udg_set(b, complete_targets(b)));
}

TEST(InterventionalFamilySet, DenseLatentPairIsIndistinguishable) {
  const auto a = fixtures::dense_latent_pair_a();
  const auto b = fixtures::dense_latent_pair_b();
  EXPECT_EQ(interventional_udg_set(a, complete_targets(a)),
            interventional_udg_set(b, complete_targets(b)));
}

TEST(RemapCheck, TwoNodeAndRunningExample) {
  const Dag two(2, {{0, 1}});
  EXPECT_TRUE(theorem_remap_check(two, {0, 1}, all_targets(two)));
  const Dag latent = fixtures::imaginary_pair_model().latent_dag();
  EXPECT_TRUE(theorem_remap_check(latent, {1, 3}, all_targets(latent)));
  EXPECT_THROW(theorem_remap_check(latent, {3, 2}, all_targets(latent)), InputError);
  EXPECT_THROW(theorem_remap_check(latent, {0, 1}, all_targets(latent)), InputError);
}

TEST(RemapCheck, HoldsForRandomIsolatedEdges) {
  Rng rng(71, {});
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Dag g = oracles::random_dag(rng, 6, 0.35);
    for (const Edge& e : isolated_edges(g)) {
      EXPECT_TRUE(theorem_remap_check(g, e, all_targets(g)));
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(DistinguishingTargets, TriangleExtensions) {
  const Dag g1 = fixtures::triangle_extension_forward();
  const Dag g2 = fixtures::triangle_extension_backward();
  ASSERT_TRUE(markov_equivalent(g1, g2));
  ASSERT_FALSE(iec_equivalent(g1, g2));
  const auto targets = distinguishing_targets(g1, g2);
  ASSERT_FALSE(targets.empty());
  // Intervening on the sink X1 splits it from both others; no target on the
  // reversed extension matches that family.
  EXPECT_TRUE(std::find(targets.begin(), targets.end(), 1) != targets.end());
}

TEST(DistinguishingTargets, IdenticalGraphsHaveNone) {
  const Dag g(3, {{0, 1}, {1, 2}});
  EXPECT_TRUE(distinguishing_targets(g, g).empty());
}

TEST(MaximalityCheck, DensePairVerdicts) {
  const auto a = fixtures::dense_latent_pair_a();
  const auto rep_a = maximality_check(a, complete_targets(a));
  EXPECT_FALSE(rep_a.maximal);
  EXPECT_EQ(rep_a.kind, MaximalityReport::EdgeKind::Latent);
  EXPECT_EQ(rep_a.edge, (Edge{2, 0}));
  const auto b = fixtures::dense_latent_pair_b();
  EXPECT_TRUE(maximality_check(b, complete_targets(b)).maximal);
}

TEST(MaximalityCheck, CompleteBipartiteSingleLatentIsMaximal) {
  const MeasurementModel g(1, 3, {}, {{0, 0}, {0, 1}, {0, 2}});
  EXPECT_TRUE(maximality_check(g, complete_targets(g)).maximal);
}

}  // namespace
}  // namespace latrec
