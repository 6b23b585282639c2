#pragma once

// Identification of latent causal graphs in measurement models from sets of
// unknown single-node hard interventions: subset calculus over interventional
// clique families, bipartite recovery, latent skeleton and orientation, and
// isolated-equivalence checking, with exact and sample-based front ends.

#include "latrec/bits.hpp"
#include "latrec/dag.hpp"
#include "latrec/equivalence.hpp"
#include "latrec/errors.hpp"
#include "latrec/experiments.hpp"
#include "latrec/io.hpp"
#include "latrec/measurement_model.hpp"
#include "latrec/recovery.hpp"
#include "latrec/rng.hpp"
#include "latrec/simdata.hpp"
#include "latrec/stats.hpp"
#include "latrec/subsets.hpp"
#include "latrec/udg.hpp"
