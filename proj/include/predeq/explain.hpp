#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "predeq/model.hpp"

namespace predeq {

struct WaxpVerdict {
  bool isWaxp = false;
  /// Entailed class index when isWaxp (for the some-class query this is
  /// the single class shared by all consistent paths).
  int cls = -1;
  /// On a negative fixed-class verdict: the first path (deterministic
  /// path order) with a different class that is consistent with the
  /// assignment.
  std::optional<std::size_t> witnessPath;
};

/// Per-feature conjunction of the assignment's literals with the path's
/// literals; true iff every feature's conjunction is non-empty.
bool pathConsistent(const PathSet& ps, const PartialAssignment& a, std::size_t pathIdx);

/// If every path consistent with `a` predicts one class c, (true, c).
WaxpVerdict isWaxpSomeClass(const PathSet& ps, const PartialAssignment& a);

/// True iff no path with a class other than cls is consistent with `a`.
WaxpVerdict isWaxpForClass(const PathSet& ps, const PartialAssignment& a, int cls);

/// Some(c) iff the assignment forces prediction c; nullopt = undetermined.
std::optional<int> predictWithMissing(const PathSet& ps, const PartialAssignment& a);

/// Linear-deletion extraction of one AXp from a WAXp (feature-granular:
/// each step drops all literals of one feature). `order` lists feature
/// ids to try; default ascending id. pre: isWaxpForClass(ps, a, cls).
PartialAssignment findOneAXp(const PathSet& ps, const PartialAssignment& a, int cls,
                             std::span<const int> order = {});

// Label-based convenience wrappers that build the path set internally.
WaxpVerdict isWaxpSomeClass(const DecisionTree& tree, const PartialAssignment& a);
WaxpVerdict isWaxpForClass(const DecisionTree& tree, const PartialAssignment& a,
                           const std::string& cls);
std::optional<std::string> predictWithMissing(const DecisionTree& tree,
                                              const PartialAssignment& a);
PartialAssignment findOneAXp(const DecisionTree& tree, const PartialAssignment& a,
                             const std::string& cls, std::span<const int> order = {});

}  // namespace predeq
