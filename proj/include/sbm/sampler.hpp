#pragma once

#include "sbm/core.hpp"
#include "sbm/rng.hpp"

namespace sbm {

struct SampleOptions {
  // Skip ModelParams::validate(). Lets oracle tests use the degenerate
  // corner a = n, b = 0, where the graph is a disjoint union of cliques.
  bool skip_validation = false;
};

// Draws A with A_ij ~ Ber(theta_ij) independently for i < j, mirrored to
// j > i, zero diagonal. Without params.theta the homogeneous rates a/n
// (same community) and b/n (different communities) are used. Upper-triangle
// pairs are visited row by row, one uniform draw each.
Graph sample_graph(const Assignment& sigma, const ModelParams& params, Rng& rng,
                   SampleOptions options = {});

// Draws an assignment uniformly from the labelled assignments of the space:
// a size vector is drawn with probability proportional to its number of
// assignments, then nodes are shuffled into the communities. Throws
// std::invalid_argument when the space admits no size vector.
Assignment sample_assignment(const ModelParams& params, const SpaceKind& kind, Rng& rng);
Assignment sample_assignment(const SizeConstraint& rule, Rng& rng);

// Natural log of the number of labelled assignments admitted by `rule`.
double log_space_size(const SizeConstraint& rule);

}  // namespace sbm
