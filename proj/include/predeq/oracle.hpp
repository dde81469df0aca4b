#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "predeq/model.hpp"

namespace predeq {

struct OracleLimits {
  std::uint64_t pointCap = 1ull << 20;
};

/// Exhaustive iteration over every complete point of an enumerable
/// feature space (boolean / categorical / bounded-integer features).
/// Construction refuses real-valued features and spaces above the cap.
class EnumerableSpace {
 public:
  explicit EnumerableSpace(const Schema& schema, OracleLimits limits = {});
  std::uint64_t size() const { return size_; }
  /// Visits points in lexicographic order (feature 1 slowest).
  void forEach(const std::function<void(const Point&)>& fn) const;

 private:
  const Schema* schema_;
  std::uint64_t size_;
};

/// Enumerates dom(A): every feature ranges over its restriction.
/// Returns false (early exit) when fn returns false.
bool forEachPointIn(const Schema& schema, const DomainSubset& dom,
                    const std::function<bool(const Point&)>& fn,
                    std::uint64_t pointCap);

std::uint64_t domainSize(const DomainSubset& dom);

/// True iff the two trees classify every complete point identically.
bool bruteEquivalent(const DecisionTree& t1, const DecisionTree& t2,
                     OracleLimits limits = {});

/// True iff every complete point of dom(a) classifies to cls.
bool bruteIsWAXp(const DecisionTree& tree, const PartialAssignment& a,
                 const std::string& cls, OracleLimits limits = {});

/// All subset-minimal WAXps for cls over per-feature single-value (eq)
/// literals, in canonical order. The restricted overload draws candidate
/// literals only from `pool` (e.g. the literals of one instance).
std::vector<PartialAssignment> bruteAllAXps(const DecisionTree& tree,
                                            const std::string& cls,
                                            OracleLimits limits = {});
std::vector<PartialAssignment> bruteAllAXps(const DecisionTree& tree,
                                            const std::string& cls,
                                            const PartialAssignment& pool,
                                            OracleLimits limits = {});

}  // namespace predeq
