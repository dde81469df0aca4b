#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "predeq/errors.hpp"

namespace predeq {

// ---------------------------------------------------------------------------
// Features and domains
// ---------------------------------------------------------------------------

enum class DomainKind { Boolean, Categorical, OrdinalInt, OrdinalReal };

/// The value domain of a single feature. Boolean and Categorical are
/// discrete (values addressed by index; boolean uses indices 0/1);
/// ordinal domains are inclusive intervals over integers or reals.
struct Domain {
  DomainKind kind = DomainKind::Boolean;
  std::vector<std::string> values;  // Categorical only; non-empty
  std::int64_t intLo = 0, intHi = 0;
  double realLo = 0.0, realHi = 0.0;

  bool discrete() const {
    return kind == DomainKind::Boolean || kind == DomainKind::Categorical;
  }
  std::size_t discreteSize() const {
    return kind == DomainKind::Boolean ? 2 : values.size();
  }

  static Domain boolean();
  static Domain categorical(std::vector<std::string> values);
  static Domain ordinalInt(std::int64_t lo, std::int64_t hi);
  static Domain ordinalReal(double lo, double hi);

  bool operator==(const Domain&) const = default;
};

struct FeatureSchema {
  int id = 0;  // 1-based
  std::string name;
  Domain domain;

  bool operator==(const FeatureSchema&) const = default;
};

/// Features in id order; ids must form the contiguous range 1..m.
using Schema = std::vector<FeatureSchema>;

/// Throws SchemaError unless ids are 1..m in order and all domains are
/// valid (non-empty categorical value sets, lo <= hi intervals).
void checkSchema(const Schema& schema);

int schemaFeatureByName(const Schema& schema, const std::string& name);  // -1 if absent

// ---------------------------------------------------------------------------
// Literals
// ---------------------------------------------------------------------------

enum class LitOp { In, Eq, Lt, Le, Gt, Ge };

const char* litOpToken(LitOp op);

/// A constraint on one feature. Only the operand slot matching the
/// feature kind and operator is populated:
///   - discrete features: op == In with sorted value indices (Eq is
///     normalized to a singleton In at construction/parse time)
///   - ordinal features: scalar ops use intValue/realValue; In uses the
///     sorted set vectors
struct Literal {
  int feature = 0;
  LitOp op = LitOp::In;
  std::vector<std::uint32_t> setIdx;
  std::vector<std::int64_t> setInt;
  std::vector<double> setReal;
  std::int64_t intValue = 0;
  double realValue = 0.0;

  bool operator==(const Literal&) const = default;
};

// Convenience constructors (validated against the schema on use).
Literal inDiscrete(int feature, std::vector<std::uint32_t> valueIdx);
Literal eqDiscrete(int feature, std::uint32_t valueIdx);
Literal eqBool(int feature, bool v);
Literal scalarInt(int feature, LitOp op, std::int64_t v);
Literal scalarReal(int feature, LitOp op, double v);
Literal inInt(int feature, std::vector<std::int64_t> values);
Literal inReal(int feature, std::vector<double> values);

/// Throws SchemaError if the literal references an unknown feature, uses
/// an operator inapplicable to the feature kind, or has operand values
/// outside the declared domain (including empty In sets).
void checkLiteral(const Schema& schema, const Literal& lit);

std::string literalToString(const Schema& schema, const Literal& lit);

// ---------------------------------------------------------------------------
// Per-feature domain subsets and the full-space DomainSubset
// ---------------------------------------------------------------------------

struct IntIv {
  std::int64_t lo = 0, hi = 0;  // closed; lo <= hi
  bool operator==(const IntIv&) const = default;
};

struct RealIv {
  double lo = 0.0, hi = 0.0;
  bool loOpen = false, hiOpen = false;
  bool operator==(const RealIv&) const = default;
};

/// The denotation of a conjunction of literals on one feature: a finite
/// value set (discrete) or a union of disjoint maximal intervals
/// (ordinal). Interval emptiness is exact; no epsilon anywhere.
struct FeatureSubset {
  DomainKind kind = DomainKind::Boolean;
  bool big = false;                   // discrete domain with > 64 values
  std::uint64_t mask = 0;             // discrete, <= 64 values
  std::vector<std::uint32_t> bigSet;  // discrete, > 64 values; sorted
  std::vector<IntIv> ints;            // sorted, disjoint, non-adjacent
  std::vector<RealIv> reals;          // sorted, disjoint, each non-empty

  bool empty() const;
  bool singleValue() const;  // restricted to exactly one point
  bool operator==(const FeatureSubset&) const = default;
};

FeatureSubset fullSubset(const Domain& dom);
FeatureSubset literalSubset(const Domain& dom, const Literal& lit);
FeatureSubset intersect(const FeatureSubset& a, const FeatureSubset& b);
/// Emptiness of the intersection without materializing it.
bool disjointSubsets(const FeatureSubset& a, const FeatureSubset& b);
/// Set difference a \ b (used by coverage validation).
FeatureSubset subtract(const FeatureSubset& a, const FeatureSubset& b);

/// One canonical value of a feature; interpret via the schema kind.
struct PointValue {
  std::uint32_t idx = 0;  // discrete value index
  std::int64_t i = 0;     // ordinal int
  double r = 0.0;         // ordinal real

  bool operator==(const PointValue&) const = default;
};

/// A complete input, one canonical value per feature (index = id - 1).
using Point = std::vector<PointValue>;

bool subsetContains(const FeatureSubset& s, const PointValue& v);
/// Smallest value of a non-empty subset: lowest index / lowest endpoint;
/// open real endpoints round up to the next integer when one fits.
PointValue smallestValue(const FeatureSubset& s);
/// Number of values; throws SchemaError for non-degenerate real subsets.
std::uint64_t subsetSize(const FeatureSubset& s);

std::string pointValueToString(const Domain& dom, const PointValue& v);

/// Per-feature restriction of the full feature space; empty() is exact.
struct DomainSubset {
  std::vector<FeatureSubset> perFeature;  // size m, index = feature id - 1
  bool empty() const;
};

DomainSubset fullDomain(const Schema& schema);
DomainSubset intersect(const DomainSubset& a, const DomainSubset& b);

// ---------------------------------------------------------------------------
// Partial assignments
// ---------------------------------------------------------------------------

/// A set of literals; several literals on one feature conjoin. The
/// per-feature conjunction and the consistency flag are computed once at
/// construction; instances are immutable afterwards.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  PartialAssignment(const Schema& schema, std::vector<Literal> lits);

  const std::vector<Literal>& literals() const { return lits_; }
  /// Sorted by feature id; only features with at least one literal.
  const std::vector<std::pair<int, FeatureSubset>>& perFeature() const {
    return perFeature_;
  }
  bool consistent() const { return consistent_; }
  /// nullptr when the feature is unrestricted.
  const FeatureSubset* featureSubset(int feature) const;
  /// Every feature pinned to exactly one value.
  bool complete(const Schema& schema) const;
  Point toPoint(const Schema& schema) const;  // pre: complete
  DomainSubset domain(const Schema& schema) const;

  bool operator==(const PartialAssignment& o) const {
    return lits_ == o.lits_;
  }

 private:
  std::vector<Literal> lits_;
  std::vector<std::pair<int, FeatureSubset>> perFeature_;
  bool consistent_ = true;
};

/// The complete assignment {(x_i, v_i)} for a point.
PartialAssignment pointAssignment(const Schema& schema, const Point& p);

std::string assignmentToString(const Schema& schema, const PartialAssignment& a);

// ---------------------------------------------------------------------------
// Decision trees
// ---------------------------------------------------------------------------

struct Edge {
  Literal lit;
  int child = -1;  // dense node index

  bool operator==(const Edge&) const = default;
};

struct Node {
  int id = 0;  // external id, preserved through (de)serialization
  bool leaf = false;
  int feature = 0;          // internal nodes
  std::vector<Edge> edges;  // internal nodes; stored order = child order
  int cls = -1;             // leaf nodes: index into classes

  bool operator==(const Node&) const = default;
};

struct DecisionTree {
  Schema schema;
  std::vector<std::string> classes;
  std::vector<Node> nodes;  // dense; order = document order
  int root = -1;            // dense index

  int classIndex(const std::string& label) const;
  std::size_t nodeCount() const { return nodes.size(); }

  bool operator==(const DecisionTree&) const = default;
};

/// Assembles a DecisionTree from external-id node descriptions, checking
/// graph shape (unique ids, resolvable children, single parent, full
/// reachability) and literal/class well-formedness. Structural problems
/// throw StructureError; schema-level ones throw SchemaError.
class TreeBuilder {
 public:
  explicit TreeBuilder(Schema schema, std::vector<std::string> classes);
  TreeBuilder& leaf(int id, const std::string& cls);
  TreeBuilder& internal(int id, int feature,
                        std::vector<std::pair<Literal, int>> edges);
  DecisionTree build(int rootId);

 private:
  struct Pending {
    int id;
    bool leaf;
    int feature;
    std::vector<std::pair<Literal, int>> edges;
    std::string cls;
  };
  Schema schema_;
  std::vector<std::string> classes_;
  std::vector<Pending> pending_;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation {
  enum class Kind { PathInconsistent, ChildrenOverlap, CoverageGap };
  Kind kind;
  int nodeId;  // internal node (overlap/coverage) or leaf (path)
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

/// Semantic validation: every root-to-leaf path consistent; per internal
/// node, child edge literals pairwise disjoint and jointly covering the
/// feature's domain restricted to the path so far.
ValidationReport validate(const DecisionTree& tree);

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

struct PathEntry {
  int feature;
  int subset;  // index into PathSet::pool
};

struct Path {
  std::vector<int> nodes;  // dense indices, root..leaf
  int leafClass = -1;
  /// Aggregated per-feature conjunction of the path literals, sorted by
  /// feature id; subsets live in the owning PathSet's pool.
  std::vector<PathEntry> restr;
};

/// All root-to-leaf paths in depth-first order (child edges in stored
/// order), with a deduplicated subset pool shared across paths. Valid
/// while the originating tree is alive.
struct PathSet {
  const DecisionTree* tree = nullptr;
  std::vector<Path> paths;
  std::vector<FeatureSubset> pool;

  const FeatureSubset& subsetOf(const PathEntry& e) const { return pool[e.subset]; }
};

PathSet pathsOf(const DecisionTree& tree);

/// Edge literals of a path, in root-to-leaf order.
std::vector<Literal> pathLiterals(const DecisionTree& tree, const Path& p);
PartialAssignment pathAssignment(const DecisionTree& tree, const Path& p);

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

int classifyIdx(const DecisionTree& tree, const Point& p);
/// pre: a is complete; returns the class label.
std::string classify(const DecisionTree& tree, const PartialAssignment& a);

}  // namespace predeq
