#include "predeq/shapley.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "predeq/explain.hpp"

namespace predeq {

void Rational::reduce() {
  if (num == 0) {
    den = 1;
    return;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  num /= g;
  den /= g;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

PartialAssignment restrictToMask(const Schema& schema, const Point& v,
                                 std::uint64_t mask) {
  std::vector<Literal> lits;
  for (std::size_t f = 0; f < schema.size(); ++f) {
    if (!((mask >> f) & 1)) continue;
    switch (schema[f].domain.kind) {
      case DomainKind::Boolean:
      case DomainKind::Categorical:
        lits.push_back(eqDiscrete(static_cast<int>(f) + 1, v[f].idx));
        break;
      case DomainKind::OrdinalInt:
        lits.push_back(scalarInt(static_cast<int>(f) + 1, LitOp::Eq, v[f].i));
        break;
      case DomainKind::OrdinalReal:
        lits.push_back(scalarReal(static_cast<int>(f) + 1, LitOp::Eq, v[f].r));
        break;
    }
  }
  return PartialAssignment(schema, std::move(lits));
}

}  // namespace

int charFn(const DecisionTree& tree, const Point& v, const std::string& cls,
           std::uint64_t subsetMask) {
  int c = tree.classIndex(cls);
  if (c < 0) throw PreconditionError("unknown class label \"" + cls + "\"");
  if (classifyIdx(tree, v) != c)
    throw PreconditionError("the instance does not classify to the given class");
  PathSet ps = pathsOf(tree);
  PartialAssignment a = restrictToMask(tree.schema, v, subsetMask);
  return isWaxpForClass(ps, a, c).isWaxp ? 1 : 0;
}

std::vector<Rational> correctedShap(const DecisionTree& tree, const Point& v,
                                    ShapLimits limits) {
  const int m = static_cast<int>(tree.schema.size());
  if (m > limits.featureCap || m > 25)
    throw CapExceeded("exact Shapley computation over " + std::to_string(m) +
                      " features exceeds the cap of " +
                      std::to_string(std::min(limits.featureCap, 25)));
  const int c = classifyIdx(tree, v);
  PathSet ps = pathsOf(tree);

  // factorials fit 64 bits for m <= 20
  std::vector<long long> fact(m + 1, 1);
  for (int i = 1; i <= m; ++i) fact[i] = fact[i - 1] * i;

  // game value per subset mask
  const std::uint64_t full = m == 64 ? ~0ull : (1ull << m) - 1;
  std::vector<char> value(full + 1, 0);
  for (std::uint64_t s = 0; s <= full; ++s) {
    PartialAssignment a = restrictToMask(tree.schema, v, s);
    value[s] = static_cast<char>(isWaxpForClass(ps, a, c).isWaxp ? 1 : 0);
  }

  std::vector<Rational> scores(m);
  for (int i = 0; i < m; ++i) {
    long long acc = 0;  // numerator over the common denominator m!
    std::uint64_t bit = 1ull << i;
    for (std::uint64_t s = 0; s <= full; ++s) {
      if (s & bit) continue;
      int k = std::popcount(s);
      int delta = value[s | bit] - value[s];
      if (delta != 0) acc += static_cast<long long>(delta) * fact[k] * fact[m - k - 1];
    }
    scores[i] = {acc, fact[m]};
    scores[i].reduce();
  }
  return scores;
}

std::vector<Rational> correctedShap(const DecisionTree& tree,
                                    const PartialAssignment& instance,
                                    ShapLimits limits) {
  if (!instance.complete(tree.schema))
    throw PreconditionError("corrected SHAP scores need a complete instance");
  return correctedShap(tree, instance.toPoint(tree.schema), limits);
}

}  // namespace predeq
