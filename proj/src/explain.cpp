#include "predeq/explain.hpp"

#include <algorithm>

namespace predeq {

namespace {

using Restriction = std::vector<std::pair<int, FeatureSubset>>;

// Sorted-merge consistency of an assignment-style restriction with one
// path. Entries with feature == skipFeature are ignored on the
// assignment side (used by the deletion loop of the AXp extraction).
bool consistentWithPath(const PathSet& ps, const Restriction& restr,
                        const Path& p, int skipFeature) {
  std::size_t i = 0, j = 0;
  while (i < restr.size() && j < p.restr.size()) {
    int fa = restr[i].first;
    int fp = p.restr[j].feature;
    if (fa == skipFeature) {
      ++i;
      continue;
    }
    if (fa < fp) {
      ++i;
    } else if (fp < fa) {
      ++j;
    } else {
      if (disjointSubsets(restr[i].second, ps.subsetOf(p.restr[j]))) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

void requireConsistent(const PartialAssignment& a) {
  if (!a.consistent())
    throw PreconditionError("partial assignment is inconsistent");
}

void requireSameSchema(const PathSet& ps, const PartialAssignment& a) {
  // literal features were validated against some schema at construction;
  // the cheap structural check is the feature-id range
  for (const auto& [f, s] : a.perFeature()) {
    (void)s;
    if (f < 1 || f > static_cast<int>(ps.tree->schema.size()))
      throw PreconditionError("assignment references a feature outside the tree schema");
  }
}

}  // namespace

bool pathConsistent(const PathSet& ps, const PartialAssignment& a,
                    std::size_t pathIdx) {
  requireConsistent(a);
  requireSameSchema(ps, a);
  return consistentWithPath(ps, a.perFeature(), ps.paths[pathIdx], 0);
}

WaxpVerdict isWaxpSomeClass(const PathSet& ps, const PartialAssignment& a) {
  requireConsistent(a);
  requireSameSchema(ps, a);
  WaxpVerdict v;
  int seen = -1;
  for (const Path& p : ps.paths) {
    if (!consistentWithPath(ps, a.perFeature(), p, 0)) continue;
    if (seen < 0) {
      seen = p.leafClass;
    } else if (seen != p.leafClass) {
      return v;  // two classes reachable
    }
  }
  // a consistent assignment over a validated tree always reaches a path
  v.isWaxp = seen >= 0;
  v.cls = seen;
  return v;
}

WaxpVerdict isWaxpForClass(const PathSet& ps, const PartialAssignment& a, int cls) {
  requireConsistent(a);
  requireSameSchema(ps, a);
  if (cls < 0 || cls >= static_cast<int>(ps.tree->classes.size()))
    throw PreconditionError("unknown class index");
  WaxpVerdict v;
  v.cls = cls;
  for (std::size_t i = 0; i < ps.paths.size(); ++i) {
    const Path& p = ps.paths[i];
    if (p.leafClass == cls) continue;
    if (consistentWithPath(ps, a.perFeature(), p, 0)) {
      v.isWaxp = false;
      v.witnessPath = i;
      return v;
    }
  }
  v.isWaxp = true;
  return v;
}

std::optional<int> predictWithMissing(const PathSet& ps, const PartialAssignment& a) {
  WaxpVerdict v = isWaxpSomeClass(ps, a);
  if (v.isWaxp) return v.cls;
  return std::nullopt;
}

PartialAssignment findOneAXp(const PathSet& ps, const PartialAssignment& a, int cls,
                             std::span<const int> order) {
  requireConsistent(a);
  requireSameSchema(ps, a);

  Restriction working = a.perFeature();
  // returns the first opposing consistent path, i.e. nullopt iff the
  // working restriction (minus skipFeature) is a WAXp for cls
  auto opposing = [&](int skipFeature) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < ps.paths.size(); ++i) {
      const Path& p = ps.paths[i];
      if (p.leafClass == cls) continue;
      if (consistentWithPath(ps, working, p, skipFeature)) return i;
    }
    return std::nullopt;
  };

  if (auto witness = opposing(0)) {
    throw PreconditionError(
        "assignment is not a WAXp for the queried class; path " +
        std::to_string(*witness) + " (leaf node " +
        std::to_string(ps.tree->nodes[ps.paths[*witness].nodes.back()].id) +
        ") predicts a different class and is consistent with it");
  }

  std::vector<int> defaultOrder;
  if (order.empty()) {
    defaultOrder.reserve(working.size());
    for (const auto& [f, s] : working) defaultOrder.push_back(f);
    order = defaultOrder;
  }

  for (int f : order) {
    auto it = std::find_if(working.begin(), working.end(),
                           [f](const auto& e) { return e.first == f; });
    if (it == working.end()) continue;
    if (!opposing(f)) {
      // still a WAXp without f: drop it for good
      working.erase(it);
    }
  }

  std::vector<int> kept;
  kept.reserve(working.size());
  for (const auto& [f, s] : working) kept.push_back(f);
  std::vector<Literal> lits;
  for (const Literal& l : a.literals())
    if (std::find(kept.begin(), kept.end(), l.feature) != kept.end())
      lits.push_back(l);
  return PartialAssignment(ps.tree->schema, std::move(lits));
}

WaxpVerdict isWaxpSomeClass(const DecisionTree& tree, const PartialAssignment& a) {
  return isWaxpSomeClass(pathsOf(tree), a);
}

WaxpVerdict isWaxpForClass(const DecisionTree& tree, const PartialAssignment& a,
                           const std::string& cls) {
  int c = tree.classIndex(cls);
  if (c < 0) throw PreconditionError("unknown class label \"" + cls + "\"");
  return isWaxpForClass(pathsOf(tree), a, c);
}

std::optional<std::string> predictWithMissing(const DecisionTree& tree,
                                              const PartialAssignment& a) {
  auto c = predictWithMissing(pathsOf(tree), a);
  if (!c) return std::nullopt;
  return tree.classes[*c];
}

PartialAssignment findOneAXp(const DecisionTree& tree, const PartialAssignment& a,
                             const std::string& cls, std::span<const int> order) {
  int c = tree.classIndex(cls);
  if (c < 0) throw PreconditionError("unknown class label \"" + cls + "\"");
  PathSet ps = pathsOf(tree);
  return findOneAXp(ps, a, c, order);
}

}  // namespace predeq
