#pragma once

#include <optional>
#include <string>

#include "predeq/model.hpp"

namespace predeq {

struct EquivWitness {
  std::size_t pathT1 = 0;  // index into pathsOf(t1)
  std::size_t pathT2 = 0;  // index into pathsOf(t2)
  Point point;             // classifies differently under the two trees
};

struct EquivVerdict {
  bool equivalent = true;
  std::optional<EquivWitness> witness;
  std::uint64_t pairsChecked = 0;  // conflicting-class pairs examined
};

/// Pairwise path-consistency decision of predictive equivalence. The
/// outer loop runs over the tree with more paths (t1 on ties); the
/// witness, when present, is the conflicting pair minimal in
/// (outer index, inner index) order, with the per-feature smallest point
/// of the joint domain. jobs > 1 parallelizes the outer loop; the result
/// is independent of the schedule.
EquivVerdict decide(const DecisionTree& t1, const DecisionTree& t2, int jobs = 1);

/// Theorem-style shortcut: given a WAXp a1 for class c1 of one model and
/// a WAXp a2 for class c2 != c1 of another, a consistent join certifies
/// non-equivalence; the certificate is a point of dom(a1) ∩ dom(a2).
std::optional<Point> disproveByAxps(const Schema& schema,
                                    const PartialAssignment& a1, const std::string& c1,
                                    const PartialAssignment& a2, const std::string& c2);

}  // namespace predeq
