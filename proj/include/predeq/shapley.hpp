#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "predeq/model.hpp"

namespace predeq {

/// Exact rational; values here are always sums of k!(m-1-k)!/m! weights,
/// so 64-bit numerator/denominator suffice up to the feature cap.
struct Rational {
  long long num = 0;
  long long den = 1;

  void reduce();
  double toDouble() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

struct ShapLimits {
  int featureCap = 20;
};

/// Game value of a feature subset S (bitmask over features, bit i-1 for
/// feature i): 1 iff restricting the instance to S entails its class.
/// pre: classify(tree, v) == cls.
int charFn(const DecisionTree& tree, const Point& v, const std::string& cls,
           std::uint64_t subsetMask);

/// Exact Shapley values of charFn over all 2^m subsets:
///   score_i = sum over S not containing i of
///             |S|! (m-|S|-1)! / m! * (charFn(S u {i}) - charFn(S)).
std::vector<Rational> correctedShap(const DecisionTree& tree, const Point& v,
                                    ShapLimits limits = {});
std::vector<Rational> correctedShap(const DecisionTree& tree,
                                    const PartialAssignment& instance,
                                    ShapLimits limits = {});

}  // namespace predeq
