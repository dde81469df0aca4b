#include "predeq/equiv.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace predeq {

namespace {

bool pathPairConsistent(const PathSet& a, const Path& pa, const PathSet& b,
                        const Path& pb) {
  std::size_t i = 0, j = 0;
  while (i < pa.restr.size() && j < pb.restr.size()) {
    int fa = pa.restr[i].feature;
    int fb = pb.restr[j].feature;
    if (fa < fb) {
      ++i;
    } else if (fb < fa) {
      ++j;
    } else {
      if (disjointSubsets(a.subsetOf(pa.restr[i]), b.subsetOf(pb.restr[j])))
        return false;
      ++i;
      ++j;
    }
  }
  return true;
}

Point jointPoint(const Schema& schema, const PathSet& a, const Path& pa,
                 const PathSet& b, const Path& pb) {
  DomainSubset dom = fullDomain(schema);
  for (const PathEntry& e : pa.restr)
    dom.perFeature[e.feature - 1] =
        intersect(dom.perFeature[e.feature - 1], a.subsetOf(e));
  for (const PathEntry& e : pb.restr)
    dom.perFeature[e.feature - 1] =
        intersect(dom.perFeature[e.feature - 1], b.subsetOf(e));
  Point p(schema.size());
  for (std::size_t f = 0; f < schema.size(); ++f)
    p[f] = smallestValue(dom.perFeature[f]);
  return p;
}

struct PairHit {
  std::size_t outer, inner;
  bool operator<(const PairHit& o) const {
    return outer != o.outer ? outer < o.outer : inner < o.inner;
  }
};

}  // namespace

EquivVerdict decide(const DecisionTree& t1, const DecisionTree& t2, int jobs) {
  if (t1.schema != t2.schema)
    throw PreconditionError("trees have different schemas");
  if (t1.classes != t2.classes)
    throw PreconditionError("trees have different class sets");

  PathSet ps1 = pathsOf(t1);
  PathSet ps2 = pathsOf(t2);
  const bool outerIsT1 = ps1.paths.size() >= ps2.paths.size();
  const PathSet& outer = outerIsT1 ? ps1 : ps2;
  const PathSet& inner = outerIsT1 ? ps2 : ps1;

  const std::size_t n = outer.paths.size();
  std::optional<PairHit> best;
  std::atomic<std::uint64_t> pairs{0};

  auto scanOuter = [&](std::size_t o) -> std::optional<PairHit> {
    const Path& po = outer.paths[o];
    std::uint64_t local = 0;
    for (std::size_t in = 0; in < inner.paths.size(); ++in) {
      const Path& pi = inner.paths[in];
      if (pi.leafClass == po.leafClass) continue;
      ++local;
      if (pathPairConsistent(outer, po, inner, pi)) {
        pairs += local;
        return PairHit{o, in};
      }
    }
    pairs += local;
    return std::nullopt;
  };

  if (jobs <= 1) {
    for (std::size_t o = 0; o < n && !best; ++o) best = scanOuter(o);
  } else {
    std::atomic<std::size_t> bestOuter{n};
    std::atomic<std::size_t> next{0};
    std::vector<std::optional<PairHit>> hits(
        static_cast<std::size_t>(jobs), std::nullopt);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        for (;;) {
          std::size_t o = next.fetch_add(1);
          if (o >= n) return;
          if (o > bestOuter.load()) continue;  // a smaller hit already exists
          if (auto hit = scanOuter(o)) {
            std::size_t cur = bestOuter.load();
            while (o < cur && !bestOuter.compare_exchange_weak(cur, o)) {
            }
            if (!hits[t] || hit->outer < hits[t]->outer) hits[t] = hit;
          }
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const auto& h : hits)
      if (h && (!best || *h < *best)) best = h;
  }

  EquivVerdict v;
  v.pairsChecked = pairs.load();
  if (!best) return v;

  v.equivalent = false;
  EquivWitness w;
  std::size_t p1 = outerIsT1 ? best->outer : best->inner;
  std::size_t p2 = outerIsT1 ? best->inner : best->outer;
  w.pathT1 = p1;
  w.pathT2 = p2;
  w.point = jointPoint(t1.schema, ps1, ps1.paths[p1], ps2, ps2.paths[p2]);
  v.witness = std::move(w);
  return v;
}

std::optional<Point> disproveByAxps(const Schema& schema,
                                    const PartialAssignment& a1, const std::string& c1,
                                    const PartialAssignment& a2, const std::string& c2) {
  if (c1 == c2)
    throw PreconditionError("the two explanations must be for different classes");
  if (!a1.consistent() || !a2.consistent())
    throw PreconditionError("explanations must be consistent assignments");
  DomainSubset joint = intersect(a1.domain(schema), a2.domain(schema));
  if (joint.empty()) return std::nullopt;
  Point p(schema.size());
  for (std::size_t f = 0; f < schema.size(); ++f)
    p[f] = smallestValue(joint.perFeature[f]);
  return p;
}

}  // namespace predeq
