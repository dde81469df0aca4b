#include "predeq/oracle.hpp"

#include <algorithm>
#include <map>

namespace predeq {

namespace {

// All values of one feature's restriction, in ascending order.
std::vector<PointValue> subsetValues(const FeatureSubset& s) {
  std::vector<PointValue> out;
  switch (s.kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical:
      if (s.big) {
        for (std::uint32_t v : s.bigSet) out.push_back({v, 0, 0});
      } else {
        for (std::uint32_t v = 0; v < 64; ++v)
          if ((s.mask >> v) & 1) out.push_back({v, 0, 0});
      }
      break;
    case DomainKind::OrdinalInt:
      for (const IntIv& iv : s.ints)
        for (std::int64_t v = iv.lo; v <= iv.hi; ++v) {
          out.push_back({0, v, 0});
          if (v == iv.hi) break;  // guard against hi == INT64_MAX overflow
        }
      break;
    case DomainKind::OrdinalReal:
      for (const RealIv& iv : s.reals) {
        if (iv.lo != iv.hi)
          throw SchemaError("real-valued feature space is not enumerable");
        out.push_back({0, 0, iv.lo});
      }
      break;
  }
  return out;
}

}  // namespace

std::uint64_t domainSize(const DomainSubset& dom) {
  std::uint64_t n = 1;
  for (const FeatureSubset& s : dom.perFeature) {
    std::uint64_t k = subsetSize(s);
    if (k == 0) return 0;
    if (n > (~0ull) / k) throw CapExceeded("feature space size overflows 64 bits");
    n *= k;
  }
  return n;
}

bool forEachPointIn(const Schema& schema, const DomainSubset& dom,
                    const std::function<bool(const Point&)>& fn,
                    std::uint64_t pointCap) {
  std::uint64_t n = domainSize(dom);
  if (n > pointCap)
    throw CapExceeded("point enumeration over " + std::to_string(n) +
                      " points exceeds the cap of " + std::to_string(pointCap));
  if (n == 0) return true;

  std::vector<std::vector<PointValue>> axes;
  axes.reserve(schema.size());
  for (const FeatureSubset& s : dom.perFeature) axes.push_back(subsetValues(s));

  Point p(schema.size());
  std::vector<std::size_t> pos(schema.size(), 0);
  for (std::size_t f = 0; f < schema.size(); ++f) p[f] = axes[f][0];
  for (;;) {
    if (!fn(p)) return false;
    // odometer, last feature fastest
    std::size_t f = schema.size();
    while (f-- > 0) {
      if (++pos[f] < axes[f].size()) {
        p[f] = axes[f][pos[f]];
        break;
      }
      pos[f] = 0;
      p[f] = axes[f][0];
      if (f == 0) return true;
    }
  }
}

EnumerableSpace::EnumerableSpace(const Schema& schema, OracleLimits limits)
    : schema_(&schema) {
  for (const FeatureSchema& f : schema)
    if (f.domain.kind == DomainKind::OrdinalReal)
      throw SchemaError("feature " + f.name +
                        " is real-valued; the space is not enumerable");
  size_ = domainSize(fullDomain(schema));
  if (size_ > limits.pointCap)
    throw CapExceeded("feature space has " + std::to_string(size_) +
                      " points, above the cap of " + std::to_string(limits.pointCap));
}

void EnumerableSpace::forEach(const std::function<void(const Point&)>& fn) const {
  forEachPointIn(*schema_, fullDomain(*schema_),
                 [&](const Point& p) {
                   fn(p);
                   return true;
                 },
                 ~0ull);
}

bool bruteEquivalent(const DecisionTree& t1, const DecisionTree& t2,
                     OracleLimits limits) {
  if (t1.schema != t2.schema)
    throw PreconditionError("trees have different schemas");
  EnumerableSpace space(t1.schema, limits);
  bool equal = true;
  forEachPointIn(t1.schema, fullDomain(t1.schema),
                 [&](const Point& p) {
                   if (classifyIdx(t1, p) != classifyIdx(t2, p) ||
                       t1.classes[classifyIdx(t1, p)] != t2.classes[classifyIdx(t2, p)]) {
                     equal = false;
                     return false;
                   }
                   return true;
                 },
                 limits.pointCap);
  return equal;
}

bool bruteIsWAXp(const DecisionTree& tree, const PartialAssignment& a,
                 const std::string& cls, OracleLimits limits) {
  if (!a.consistent()) throw PreconditionError("assignment is inconsistent");
  int c = tree.classIndex(cls);
  if (c < 0) throw PreconditionError("unknown class label \"" + cls + "\"");
  bool waxp = true;
  forEachPointIn(tree.schema, a.domain(tree.schema),
                 [&](const Point& p) {
                   if (classifyIdx(tree, p) != c) {
                     waxp = false;
                     return false;
                   }
                   return true;
                 },
                 limits.pointCap);
  return waxp;
}

namespace {

// Candidate lattice for AXp enumeration: per feature, the choice of
// "absent" or one value from the feature's candidate list. Encoded as a
// digit vector with -1 for absent.
struct AxpSearch {
  const DecisionTree& tree;
  int cls;
  std::uint64_t pointCap;
  std::vector<std::vector<PointValue>> candidates;  // per feature
  std::map<std::vector<int>, bool> waxpStatus;

  bool isWaxp(const std::vector<int>& choice) {
    auto it = waxpStatus.find(choice);
    if (it != waxpStatus.end()) return it->second;
    DomainSubset dom = fullDomain(tree.schema);
    for (std::size_t f = 0; f < choice.size(); ++f) {
      if (choice[f] < 0) continue;
      const PointValue& v = candidates[f][choice[f]];
      FeatureSubset s;
      s.kind = tree.schema[f].domain.kind;
      switch (s.kind) {
        case DomainKind::Boolean:
        case DomainKind::Categorical:
          if (tree.schema[f].domain.discreteSize() <= 64)
            s.mask = 1ull << v.idx;
          else {
            s.big = true;
            s.bigSet = {v.idx};
          }
          break;
        case DomainKind::OrdinalInt:
          s.ints = {{v.i, v.i}};
          break;
        case DomainKind::OrdinalReal:
          s.reals = {{v.r, v.r, false, false}};
          break;
      }
      dom.perFeature[f] = s;
    }
    bool waxp = true;
    forEachPointIn(tree.schema, dom,
                   [&](const Point& p) {
                     if (classifyIdx(tree, p) != cls) {
                       waxp = false;
                       return false;
                     }
                     return true;
                   },
                   pointCap);
    waxpStatus[choice] = waxp;
    return waxp;
  }
};

Literal literalForValue(const Schema& schema, int feature, const PointValue& v) {
  switch (schema[feature - 1].domain.kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical:
      return eqDiscrete(feature, v.idx);
    case DomainKind::OrdinalInt:
      return scalarInt(feature, LitOp::Eq, v.i);
    case DomainKind::OrdinalReal:
      return scalarReal(feature, LitOp::Eq, v.r);
  }
  throw Error("unreachable");
}

std::vector<PartialAssignment> allAXpsImpl(
    const DecisionTree& tree, const std::string& cls,
    std::vector<std::vector<PointValue>> candidates, OracleLimits limits) {
  int c = tree.classIndex(cls);
  if (c < 0) throw PreconditionError("unknown class label \"" + cls + "\"");
  std::uint64_t lattice = 1;
  for (const auto& cand : candidates) {
    std::uint64_t k = cand.size() + 1;
    if (lattice > limits.pointCap / k)
      throw CapExceeded("AXp candidate lattice exceeds the cap of " +
                        std::to_string(limits.pointCap));
    lattice *= k;
  }

  AxpSearch search{tree, c, limits.pointCap, std::move(candidates), {}};
  const std::size_t m = tree.schema.size();

  std::vector<PartialAssignment> axps;
  std::vector<int> choice(m, -1);
  // enumerate the full lattice in odometer order
  for (;;) {
    if (search.isWaxp(choice)) {
      bool minimal = true;
      std::vector<int> sub = choice;
      for (std::size_t f = 0; f < m && minimal; ++f) {
        if (choice[f] < 0) continue;
        sub[f] = -1;
        if (search.isWaxp(sub)) minimal = false;
        sub[f] = choice[f];
      }
      if (minimal) {
        std::vector<Literal> lits;
        for (std::size_t f = 0; f < m; ++f)
          if (choice[f] >= 0)
            lits.push_back(literalForValue(tree.schema, static_cast<int>(f) + 1,
                                           search.candidates[f][choice[f]]));
        axps.emplace_back(tree.schema, std::move(lits));
      }
    }
    std::size_t f = m;
    bool done = true;
    while (f-- > 0) {
      if (choice[f] + 1 < static_cast<int>(search.candidates[f].size())) {
        ++choice[f];
        done = false;
        break;
      }
      choice[f] = -1;
      if (f == 0) break;
    }
    if (done) break;
  }
  // canonical order: by literal count, then lexicographically by the
  // (feature, value) sequence
  std::sort(axps.begin(), axps.end(),
            [](const PartialAssignment& a, const PartialAssignment& b) {
              const auto& la = a.literals();
              const auto& lb = b.literals();
              if (la.size() != lb.size()) return la.size() < lb.size();
              for (std::size_t i = 0; i < la.size(); ++i) {
                if (la[i].feature != lb[i].feature) return la[i].feature < lb[i].feature;
                if (la[i].setIdx != lb[i].setIdx) return la[i].setIdx < lb[i].setIdx;
                if (la[i].intValue != lb[i].intValue) return la[i].intValue < lb[i].intValue;
                if (la[i].realValue != lb[i].realValue)
                  return la[i].realValue < lb[i].realValue;
              }
              return false;
            });
  return axps;
}

}  // namespace

std::vector<PartialAssignment> bruteAllAXps(const DecisionTree& tree,
                                            const std::string& cls,
                                            OracleLimits limits) {
  std::vector<std::vector<PointValue>> candidates;
  candidates.reserve(tree.schema.size());
  for (const FeatureSchema& f : tree.schema) {
    std::vector<PointValue> vals;
    switch (f.domain.kind) {
      case DomainKind::Boolean:
      case DomainKind::Categorical:
        for (std::uint32_t v = 0; v < f.domain.discreteSize(); ++v)
          vals.push_back({v, 0, 0});
        break;
      case DomainKind::OrdinalInt:
        for (std::int64_t v = f.domain.intLo; v <= f.domain.intHi; ++v) {
          vals.push_back({0, v, 0});
          if (v == f.domain.intHi) break;
        }
        break;
      case DomainKind::OrdinalReal:
        throw SchemaError("real-valued features have no finite literal lattice");
    }
    candidates.push_back(std::move(vals));
  }
  return allAXpsImpl(tree, cls, std::move(candidates), limits);
}

std::vector<PartialAssignment> bruteAllAXps(const DecisionTree& tree,
                                            const std::string& cls,
                                            const PartialAssignment& pool,
                                            OracleLimits limits) {
  if (!pool.consistent())
    throw PreconditionError("candidate pool assignment is inconsistent");
  std::vector<std::vector<PointValue>> candidates(tree.schema.size());
  for (const auto& [f, s] : pool.perFeature()) {
    if (subsetSize(s) > 4096)
      throw CapExceeded("candidate pool for one feature is too large");
    std::vector<PointValue>& out = candidates[f - 1];
    switch (s.kind) {
      case DomainKind::Boolean:
      case DomainKind::Categorical:
        if (s.big)
          for (std::uint32_t v : s.bigSet) out.push_back({v, 0, 0});
        else
          for (std::uint32_t v = 0; v < 64; ++v)
            if ((s.mask >> v) & 1) out.push_back({v, 0, 0});
        break;
      case DomainKind::OrdinalInt:
        for (const IntIv& iv : s.ints)
          for (std::int64_t v = iv.lo; v <= iv.hi; ++v) {
            out.push_back({0, v, 0});
            if (v == iv.hi) break;
          }
        break;
      case DomainKind::OrdinalReal:
        for (const RealIv& iv : s.reals) {
          if (iv.lo != iv.hi)
            throw SchemaError("real-valued pool restriction is not finite");
          out.push_back({0, 0, iv.lo});
        }
        break;
    }
  }
  return allAXpsImpl(tree, cls, std::move(candidates), limits);
}

}  // namespace predeq
