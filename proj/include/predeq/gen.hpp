#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "predeq/model.hpp"

namespace predeq {

/// Boolean schema with features named x1..xm.
Schema booleanSchema(int m);

/// Worst-case family: r chained two-feature gadgets plus a final
/// single-feature gadget; 2r+1 boolean features, 6r+3 nodes. The
/// all-ones point classifies to "1" and has 2^r abductive explanations.
DecisionTree worstCase(int r);

struct RunningExamples {
  DecisionTree t1, t2, t3;  // t1 ≡ t2, t1 ≢ t3
};
RunningExamples runningExamples();

/// Two structurally distinct full-evaluation trees (variable orders
/// x1..x4 and x4..x1) computing the four-variable function whose prime
/// implicants form two disjoint minimum covers.
std::pair<DecisionTree, DecisionTree> exampleFunctionTrees();

/// Seed-deterministic valid tree over an enumerable schema; node-local
/// disjointness and coverage hold by construction.
DecisionTree randomTree(const Schema& schema, int depth, std::uint64_t seed);

/// Flips the class of the deepest leaf (first in path order on ties).
DecisionTree mutateLeaf(const DecisionTree& tree);

/// Permutes sibling edge order everywhere; the classification function
/// is unchanged but structure and path order differ.
DecisionTree shuffleEdges(const DecisionTree& tree, std::uint64_t seed);

/// Complete evaluation tree querying `fn` at every point, testing
/// features in the given order (ids). Boolean/categorical schemas.
DecisionTree fullTree(const Schema& schema, const std::vector<std::string>& classes,
                      const std::vector<int>& featureOrder,
                      const std::function<int(const Point&)>& fn);

}  // namespace predeq
