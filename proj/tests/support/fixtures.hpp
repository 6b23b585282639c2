#pragma once

// Hand-built fixture graphs used across the suites. Names describe the
// structural feature each one exercises. All indices 0-based.

#include "latrec/measurement_model.hpp"

namespace latrec::fixtures {

// Four latents over six observed; edges H1->H3, H3->H2 in the latent part.
// The family of interventional UDGs has the imaginary maximal valid subset
// {X4,X5}; {X0,X1} is replaceable. H1->H3 is an isolated latent edge.
// Latents: H0 {X0,X1,X3}, H1 {X0,X1,X4}, H2 {X2,X4}, H3 {X5}.
inline MeasurementModel imaginary_pair_model() {
  return MeasurementModel(
      4, 6, {{1, 3}, {3, 2}},
      {{0, 0}, {0, 1}, {0, 3}, {1, 0}, {1, 1}, {1, 4}, {2, 2}, {2, 4}, {3, 5}});
}

// Two overlapping covers {X0,X1} and {X1,X2} over a 2-chain; {X1} is a
// maximal valid subset despite having valid supersets.
inline MeasurementModel chain_overlap_model() {
  return MeasurementModel(2, 3, {{0, 1}}, {{0, 0}, {0, 1}, {1, 1}, {1, 2}});
}

// Five latents around a hub H4; the non-imaginary subset {X4,X5,X6} is
// fractured: the other four covers form a complete collection avoiding it.
inline MeasurementModel hub_fractured_model() {
  return MeasurementModel(5, 7, {{1, 4}, {0, 4}, {4, 2}, {4, 3}},
                          {{0, 0}, {0, 4}, {0, 5},
                           {1, 1}, {1, 4}, {1, 5},
                           {2, 2}, {2, 4}, {2, 6},
                           {3, 3}, {3, 5}, {3, 6},
                           {4, 4}, {4, 5}, {4, 6}});
}

// Every latent has a pure child, yet {X4,X5} is imaginary.
inline MeasurementModel pure_child_imaginary_model() {
  return MeasurementModel(4, 6, {{0, 1}, {2, 3}},
                          {{0, 0}, {0, 4}, {1, 1}, {1, 5}, {2, 2}, {2, 4}, {3, 3}, {3, 5}});
}

// Pure-child pair over a dense latent DAG; (a) admits the latent edge
// H2->H0 without changing any interventional family, (b) includes it and is
// maximal. Both induce identical interventional UDG sets.
inline MeasurementModel dense_latent_pair_a() {
  return MeasurementModel(4, 4, {{1, 0}, {3, 0}, {1, 2}, {2, 3}},
                          {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
}
inline MeasurementModel dense_latent_pair_b() {
  return MeasurementModel(4, 4, {{1, 0}, {3, 0}, {1, 2}, {2, 3}, {2, 0}},
                          {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
}

// Observationally indistinguishable pair: one latent with two children vs. a
// latent chain splitting them. Distinguishable once interventions enter.
inline MeasurementModel shared_parent_model() {
  return MeasurementModel(1, 2, {}, {{0, 0}, {0, 1}});
}
inline MeasurementModel latent_chain_model() {
  return MeasurementModel(2, 2, {{0, 1}}, {{0, 0}, {1, 1}});
}

// Latent-trace counterexample pair: a latent 3-chain whose covers wrap
// around the observed triple vs. a single latent owning all three. Identical
// interventional UDG sets under complete targets.
inline MeasurementModel wrapped_chain_model() {
  return MeasurementModel(3, 3, {{0, 1}, {1, 2}},
                          {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 0}});
}
inline MeasurementModel single_latent_triple_model() {
  return MeasurementModel(1, 3, {}, {{0, 0}, {0, 1}, {0, 2}});
}

// Incomplete-target pair: pure 3-chain vs. 2-chain with a forked cover.
// Identical family sets under targets {empty, {H1}}.
inline MeasurementModel three_latent_pure_chain() {
  return MeasurementModel(3, 3, {{0, 1}, {1, 2}}, {{0, 0}, {1, 1}, {2, 2}});
}
inline MeasurementModel two_latent_fork_chain() {
  return MeasurementModel(2, 3, {{0, 1}}, {{0, 0}, {1, 1}, {1, 2}});
}

// Two sources bridged by a middle latent; no fractured subsets at all.
inline MeasurementModel bridge_model() {
  return MeasurementModel(3, 4, {{0, 1}, {2, 1}},
                          {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}});
}

// cover(H1) = {X1} is itself replaceable: {X1,X4} is an imaginary maximal
// valid superset.
inline MeasurementModel replaceable_cover_model() {
  return MeasurementModel(4, 5, {{0, 1}, {1, 2}, {3, 1}},
                          {{0, 0}, {0, 4}, {1, 1}, {2, 2}, {2, 4}, {3, 3}});
}

// Fully observed triangle CPDAG X2 -> {X0, X1} with the X0-X1 edge free;
// the two consistent extensions differ in that edge and sit in different
// isolated equivalence classes.
inline Dag triangle_extension_forward() { return Dag(3, {{2, 0}, {2, 1}, {0, 1}}); }
inline Dag triangle_extension_backward() { return Dag(3, {{2, 0}, {2, 1}, {1, 0}}); }

// Expected interventional UDG cliques for imaginary_pair_model, 0-based.
// Observational / H0 / H1 collapse to one distribution.
inline std::vector<NodeSet> imaginary_pair_cliques_base() {
  return {set_from_vector({0, 1, 2, 4, 5}), set_from_vector({0, 1, 3})};
}
inline std::vector<NodeSet> imaginary_pair_cliques_h2() {
  return {set_from_vector({0, 1, 3}), set_from_vector({0, 1, 4, 5}), set_from_vector({2, 4})};
}
inline std::vector<NodeSet> imaginary_pair_cliques_h3() {
  return {set_from_vector({0, 1, 3}), set_from_vector({0, 1, 4}), set_from_vector({2, 4, 5})};
}

}  // namespace latrec::fixtures
