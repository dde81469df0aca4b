#include "predeq/gen.hpp"

#include <algorithm>
#include <random>

namespace predeq {

Schema booleanSchema(int m) {
  Schema s;
  s.reserve(m);
  for (int i = 1; i <= m; ++i)
    s.push_back({i, "x" + std::to_string(i), Domain::boolean()});
  return s;
}

DecisionTree worstCase(int r) {
  if (r < 1) throw PreconditionError("gadget repetition count must be >= 1");
  const int m = 2 * r + 1;
  TreeBuilder b(booleanSchema(m), {"0", "1"});

  // Gadget k (k = 1..r) tests the pair x_{2k-1}, x_{2k}:
  //   A_k --0--> B_k --0--> leaf 0        (pair (0,0) breaks the chain)
  //              B_k --1--> leaf 1
  //   A_k --1--> C_k --0--> leaf 1
  //              C_k --1--> <next>        (pair (1,1) continues)
  // The final gadget tests x_{2r+1}: 0 -> leaf 0, 1 -> leaf 1.
  // Node ids: gadget k uses 6 consecutive ids starting at 6(k-1)+1 in the
  // order A, B, C, leaf00, leaf01, leaf10; the final three ids follow.
  auto idA = [](int k) { return 6 * (k - 1) + 1; };
  for (int k = 1; k <= r; ++k) {
    int base = idA(k);
    int fa = 2 * k - 1, fb = 2 * k;
    int next = (k == r) ? 6 * r + 1 : idA(k + 1);
    b.internal(base, fa, {{eqBool(fa, false), base + 1}, {eqBool(fa, true), base + 2}});
    b.internal(base + 1, fb, {{eqBool(fb, false), base + 3}, {eqBool(fb, true), base + 4}});
    b.internal(base + 2, fb, {{eqBool(fb, false), base + 5}, {eqBool(fb, true), next}});
    b.leaf(base + 3, "0");
    b.leaf(base + 4, "1");
    b.leaf(base + 5, "1");
  }
  int fin = 6 * r + 1;
  b.internal(fin, m, {{eqBool(m, false), fin + 1}, {eqBool(m, true), fin + 2}});
  b.leaf(fin + 1, "0");
  b.leaf(fin + 2, "1");
  return b.build(idA(1));
}

RunningExamples runningExamples() {
  Schema schema = booleanSchema(2);
  RunningExamples ex;
  {
    TreeBuilder b(schema, {"0", "1"});
    b.internal(1, 1, {{eqBool(1, false), 2}, {eqBool(1, true), 3}});
    b.internal(2, 2, {{eqBool(2, false), 4}, {eqBool(2, true), 5}});
    b.leaf(3, "1").leaf(4, "0").leaf(5, "1");
    ex.t1 = b.build(1);
  }
  {
    TreeBuilder b(schema, {"0", "1"});
    b.internal(1, 2, {{eqBool(2, false), 2}, {eqBool(2, true), 3}});
    b.internal(2, 1, {{eqBool(1, false), 4}, {eqBool(1, true), 5}});
    b.leaf(3, "1").leaf(4, "0").leaf(5, "1");
    ex.t2 = b.build(1);
  }
  {
    TreeBuilder b(schema, {"0", "1"});
    b.internal(1, 1, {{eqBool(1, false), 2}, {eqBool(1, true), 3}});
    b.internal(2, 2, {{eqBool(2, false), 4}, {eqBool(2, true), 5}});
    b.leaf(3, "1").leaf(4, "1").leaf(5, "0");
    ex.t3 = b.build(1);
  }
  return ex;
}

std::pair<DecisionTree, DecisionTree> exampleFunctionTrees() {
  Schema schema = booleanSchema(4);
  // The function whose eight prime implicants split into two disjoint
  // four-term minimum covers (a fully cyclic covering chart). Minterm
  // index encodes (x4 x3 x2 x1) with x4 as the most significant bit.
  auto onSet = [](const Point& p) {
    unsigned idx = (p[3].idx << 3) | (p[2].idx << 2) | (p[1].idx << 1) | p[0].idx;
    switch (idx) {
      case 0: case 1: case 5: case 7: case 8: case 10: case 14: case 15:
        return 1;
      default:
        return 0;
    }
  };
  DecisionTree a = fullTree(schema, {"0", "1"}, {1, 2, 3, 4}, onSet);
  DecisionTree b = fullTree(schema, {"0", "1"}, {4, 3, 2, 1}, onSet);
  return {std::move(a), std::move(b)};
}

namespace {

// Deterministic bounded draw; avoids the unspecified distributions of
// the standard library so seeds reproduce across platforms.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

struct RandomBuild {
  const Schema& schema;
  std::mt19937_64 rng;
  TreeBuilder& builder;
  int nextId = 1;
  int numClasses;

  int freshId() { return nextId++; }

  // restriction: per-feature subset along the current path
  int grow(std::vector<FeatureSubset>& restr, int depth) {
    // splittable features have at least two values left
    std::vector<int> splittable;
    for (std::size_t f = 0; f < restr.size(); ++f)
      if (subsetSize(restr[f]) >= 2) splittable.push_back(static_cast<int>(f) + 1);
    bool leaf = depth <= 0 || splittable.empty() || draw(rng, 5) == 0;
    int id = freshId();
    if (leaf) {
      builder.leaf(id, std::to_string(draw(rng, numClasses)));
      return id;
    }
    int f = splittable[draw(rng, splittable.size())];
    const FeatureSubset& cur = restr[f - 1];
    const Domain& dom = schema[f - 1].domain;

    std::vector<std::pair<Literal, int>> edges;
    if (dom.discrete()) {
      // random nonempty proper bipartition of the restricted values
      std::vector<std::uint32_t> vals;
      if (cur.big) {
        vals = cur.bigSet;
      } else {
        for (std::uint32_t v = 0; v < 64; ++v)
          if ((cur.mask >> v) & 1) vals.push_back(v);
      }
      std::vector<std::uint32_t> left, right;
      for (std::uint32_t v : vals) (draw(rng, 2) ? left : right).push_back(v);
      if (left.empty()) {
        left.push_back(right.back());
        right.pop_back();
      } else if (right.empty()) {
        right.push_back(left.back());
        left.pop_back();
      }
      for (auto* side : {&left, &right}) {
        Literal lit = inDiscrete(f, *side);
        FeatureSubset sub = intersect(cur, literalSubset(dom, lit));
        std::vector<FeatureSubset> childRestr = restr;
        childRestr[f - 1] = sub;
        edges.emplace_back(lit, grow(childRestr, depth - 1));
      }
    } else if (dom.kind == DomainKind::OrdinalInt) {
      // threshold strictly inside the restriction
      std::int64_t lo = cur.ints.front().lo, hi = cur.ints.back().hi;
      std::int64_t t = lo + static_cast<std::int64_t>(
                                draw(rng, static_cast<std::uint64_t>(hi - lo)));
      for (LitOp op : {LitOp::Le, LitOp::Gt}) {
        Literal lit = scalarInt(f, op, t);
        FeatureSubset sub = intersect(cur, literalSubset(dom, lit));
        std::vector<FeatureSubset> childRestr = restr;
        childRestr[f - 1] = sub;
        edges.emplace_back(lit, grow(childRestr, depth - 1));
      }
    } else {
      throw SchemaError("random tree generation needs an enumerable schema");
    }
    builder.internal(id, f, std::move(edges));
    return id;
  }
};

}  // namespace

DecisionTree randomTree(const Schema& schema, int depth, std::uint64_t seed) {
  checkSchema(schema);
  if (depth < 1) throw PreconditionError("depth must be >= 1");
  std::vector<std::string> classes = {"0", "1"};
  TreeBuilder builder(schema, classes);
  RandomBuild rb{schema, std::mt19937_64(seed), builder, 1,
                 static_cast<int>(classes.size())};
  std::vector<FeatureSubset> restr;
  restr.reserve(schema.size());
  for (const FeatureSchema& f : schema) restr.push_back(fullSubset(f.domain));
  int rootId = rb.grow(restr, depth);
  return builder.build(rootId);
}

DecisionTree mutateLeaf(const DecisionTree& tree) {
  PathSet ps = pathsOf(tree);
  std::size_t deepest = 0;
  for (std::size_t i = 1; i < ps.paths.size(); ++i)
    if (ps.paths[i].nodes.size() > ps.paths[deepest].nodes.size()) deepest = i;
  DecisionTree out = tree;
  int leafIdx = ps.paths[deepest].nodes.back();
  out.nodes[leafIdx].cls =
      (out.nodes[leafIdx].cls + 1) % static_cast<int>(out.classes.size());
  return out;
}

DecisionTree shuffleEdges(const DecisionTree& tree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DecisionTree out = tree;
  for (Node& n : out.nodes) {
    if (n.leaf) continue;
    for (std::size_t i = n.edges.size(); i > 1; --i)
      std::swap(n.edges[i - 1], n.edges[draw(rng, i)]);
  }
  return out;
}

DecisionTree fullTree(const Schema& schema, const std::vector<std::string>& classes,
                      const std::vector<int>& featureOrder,
                      const std::function<int(const Point&)>& fn) {
  checkSchema(schema);
  if (featureOrder.size() != schema.size())
    throw PreconditionError("feature order must mention every feature once");
  for (const FeatureSchema& f : schema)
    if (!f.domain.discrete())
      throw SchemaError("full evaluation trees need discrete features");

  TreeBuilder builder(schema, classes);
  int nextId = 1;
  Point p(schema.size());

  std::function<int(std::size_t)> grow = [&](std::size_t level) -> int {
    int id = nextId++;
    if (level == featureOrder.size()) {
      int c = fn(p);
      builder.leaf(id, classes.at(c));
      return id;
    }
    int f = featureOrder[level];
    const Domain& dom = schema[f - 1].domain;
    std::vector<std::pair<Literal, int>> edges;
    for (std::uint32_t v = 0; v < dom.discreteSize(); ++v) {
      p[f - 1].idx = v;
      edges.emplace_back(eqDiscrete(f, v), grow(level + 1));
    }
    builder.internal(id, f, std::move(edges));
    return id;
  };
  int rootId = grow(0);
  return builder.build(rootId);
}

}  // namespace predeq
