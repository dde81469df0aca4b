#include "predeq/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace predeq {

// ---------------------------------------------------------------------------
// Domains and schema
// ---------------------------------------------------------------------------

Domain Domain::boolean() {
  Domain d;
  d.kind = DomainKind::Boolean;
  return d;
}

Domain Domain::categorical(std::vector<std::string> values) {
  Domain d;
  d.kind = DomainKind::Categorical;
  d.values = std::move(values);
  return d;
}

Domain Domain::ordinalInt(std::int64_t lo, std::int64_t hi) {
  Domain d;
  d.kind = DomainKind::OrdinalInt;
  d.intLo = lo;
  d.intHi = hi;
  return d;
}

Domain Domain::ordinalReal(double lo, double hi) {
  Domain d;
  d.kind = DomainKind::OrdinalReal;
  d.realLo = lo;
  d.realHi = hi;
  return d;
}

void checkSchema(const Schema& schema) {
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const FeatureSchema& f = schema[i];
    if (f.id != static_cast<int>(i) + 1)
      throw SchemaError("feature ids must form the contiguous range 1..m; found id " +
                        std::to_string(f.id) + " at position " + std::to_string(i + 1));
    switch (f.domain.kind) {
      case DomainKind::Boolean:
        break;
      case DomainKind::Categorical: {
        if (f.domain.values.empty())
          throw SchemaError("feature " + f.name + ": empty categorical value set");
        std::vector<std::string> v = f.domain.values;
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
          throw SchemaError("feature " + f.name + ": duplicate categorical value");
        break;
      }
      case DomainKind::OrdinalInt:
        if (f.domain.intLo > f.domain.intHi)
          throw SchemaError("feature " + f.name + ": integer interval lower > upper");
        break;
      case DomainKind::OrdinalReal:
        if (!(f.domain.realLo <= f.domain.realHi))
          throw SchemaError("feature " + f.name + ": real interval lower > upper");
        break;
    }
  }
}

int schemaFeatureByName(const Schema& schema, const std::string& name) {
  for (const FeatureSchema& f : schema)
    if (f.name == name) return f.id;
  return -1;
}

static const Domain& domainOf(const Schema& schema, int feature) {
  if (feature < 1 || feature > static_cast<int>(schema.size()))
    throw SchemaError("unknown feature id " + std::to_string(feature));
  return schema[feature - 1].domain;
}

// ---------------------------------------------------------------------------
// Literals
// ---------------------------------------------------------------------------

const char* litOpToken(LitOp op) {
  switch (op) {
    case LitOp::In: return "in";
    case LitOp::Eq: return "eq";
    case LitOp::Lt: return "lt";
    case LitOp::Le: return "le";
    case LitOp::Gt: return "gt";
    case LitOp::Ge: return "ge";
  }
  return "?";
}

Literal inDiscrete(int feature, std::vector<std::uint32_t> valueIdx) {
  Literal l;
  l.feature = feature;
  l.op = LitOp::In;
  std::sort(valueIdx.begin(), valueIdx.end());
  valueIdx.erase(std::unique(valueIdx.begin(), valueIdx.end()), valueIdx.end());
  l.setIdx = std::move(valueIdx);
  return l;
}

Literal eqDiscrete(int feature, std::uint32_t valueIdx) {
  return inDiscrete(feature, {valueIdx});
}

Literal eqBool(int feature, bool v) {
  return eqDiscrete(feature, v ? 1u : 0u);
}

Literal scalarInt(int feature, LitOp op, std::int64_t v) {
  Literal l;
  l.feature = feature;
  l.op = op;
  l.intValue = v;
  return l;
}

Literal scalarReal(int feature, LitOp op, double v) {
  Literal l;
  l.feature = feature;
  l.op = op;
  l.realValue = v;
  return l;
}

Literal inInt(int feature, std::vector<std::int64_t> values) {
  Literal l;
  l.feature = feature;
  l.op = LitOp::In;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  l.setInt = std::move(values);
  return l;
}

Literal inReal(int feature, std::vector<double> values) {
  Literal l;
  l.feature = feature;
  l.op = LitOp::In;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  l.setReal = std::move(values);
  return l;
}

void checkLiteral(const Schema& schema, const Literal& lit) {
  const Domain& dom = domainOf(schema, lit.feature);
  const std::string where = "literal on feature " + std::to_string(lit.feature);
  if (dom.discrete()) {
    if (lit.op != LitOp::In)
      throw SchemaError(where + ": discrete features take only in/eq literals");
    if (lit.setIdx.empty()) throw SchemaError(where + ": empty value set");
    for (std::uint32_t v : lit.setIdx)
      if (v >= dom.discreteSize())
        throw SchemaError(where + ": value index " + std::to_string(v) +
                          " outside the declared domain");
    return;
  }
  if (dom.kind == DomainKind::OrdinalInt) {
    if (lit.op == LitOp::In) {
      if (lit.setInt.empty()) throw SchemaError(where + ": empty value set");
      for (std::int64_t v : lit.setInt)
        if (v < dom.intLo || v > dom.intHi)
          throw SchemaError(where + ": value " + std::to_string(v) +
                            " outside the declared domain");
    } else {
      if (lit.intValue < dom.intLo || lit.intValue > dom.intHi)
        throw SchemaError(where + ": value " + std::to_string(lit.intValue) +
                          " outside the declared domain");
    }
    return;
  }
  // OrdinalReal
  if (lit.op == LitOp::In) {
    if (lit.setReal.empty()) throw SchemaError(where + ": empty value set");
    for (double v : lit.setReal)
      if (!(v >= dom.realLo && v <= dom.realHi))
        throw SchemaError(where + ": value " + std::to_string(v) +
                          " outside the declared domain");
  } else {
    if (!(lit.realValue >= dom.realLo && lit.realValue <= dom.realHi))
      throw SchemaError(where + ": value " + std::to_string(lit.realValue) +
                        " outside the declared domain");
  }
}

std::string literalToString(const Schema& schema, const Literal& lit) {
  const Domain& dom = domainOf(schema, lit.feature);
  std::ostringstream os;
  os << schema[lit.feature - 1].name;
  auto scalarTxt = [&](const char* sym) {
    os << sym;
    if (dom.kind == DomainKind::OrdinalInt)
      os << lit.intValue;
    else
      os << lit.realValue;
  };
  switch (lit.op) {
    case LitOp::In: {
      if (dom.discrete() && lit.setIdx.size() == 1) {
        os << "=" << pointValueToString(dom, PointValue{lit.setIdx[0], 0, 0});
        break;
      }
      break;
    }
    case LitOp::Eq: scalarTxt("="); break;
    case LitOp::Lt: scalarTxt("<"); break;
    case LitOp::Le: scalarTxt("<="); break;
    case LitOp::Gt: scalarTxt(">"); break;
    case LitOp::Ge: scalarTxt(">="); break;
  }
  if (lit.op == LitOp::In && !(dom.discrete() && lit.setIdx.size() == 1)) {
    os << " in {";
    bool first = true;
    if (dom.discrete()) {
      for (std::uint32_t v : lit.setIdx) {
        if (!first) os << ",";
        first = false;
        os << pointValueToString(dom, PointValue{v, 0, 0});
      }
    } else if (dom.kind == DomainKind::OrdinalInt) {
      for (std::int64_t v : lit.setInt) {
        if (!first) os << ",";
        first = false;
        os << v;
      }
    } else {
      for (double v : lit.setReal) {
        if (!first) os << ",";
        first = false;
        os << v;
      }
    }
    os << "}";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Interval algebra
// ---------------------------------------------------------------------------

static bool intIvEmpty(const IntIv& iv) { return iv.lo > iv.hi; }

static bool realIvEmpty(const RealIv& iv) {
  if (iv.lo > iv.hi) return true;
  if (iv.lo == iv.hi && (iv.loOpen || iv.hiOpen)) return true;
  return false;
}

static std::vector<IntIv> normalizeInt(std::vector<IntIv> ivs) {
  ivs.erase(std::remove_if(ivs.begin(), ivs.end(), intIvEmpty), ivs.end());
  std::sort(ivs.begin(), ivs.end(),
            [](const IntIv& a, const IntIv& b) { return a.lo < b.lo; });
  std::vector<IntIv> out;
  for (const IntIv& iv : ivs) {
    if (!out.empty()) {
      IntIv& cur = out.back();
      bool adjacent = cur.hi < std::numeric_limits<std::int64_t>::max() &&
                      iv.lo <= cur.hi + 1;
      if (iv.lo <= cur.hi || adjacent) {
        cur.hi = std::max(cur.hi, iv.hi);
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

// (hi, hiOpen) ordering: which endpoint reaches further right.
static bool hiLess(double h1, bool o1, double h2, bool o2) {
  if (h1 != h2) return h1 < h2;
  return o1 && !o2;  // open end is strictly inside a closed one
}

static std::vector<RealIv> normalizeReal(std::vector<RealIv> ivs) {
  ivs.erase(std::remove_if(ivs.begin(), ivs.end(), realIvEmpty), ivs.end());
  std::sort(ivs.begin(), ivs.end(), [](const RealIv& a, const RealIv& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.loOpen && b.loOpen;  // closed start first
  });
  std::vector<RealIv> out;
  for (const RealIv& iv : ivs) {
    if (!out.empty()) {
      RealIv& cur = out.back();
      bool overlapOrTouch =
          iv.lo < cur.hi || (iv.lo == cur.hi && !(iv.loOpen && cur.hiOpen));
      if (overlapOrTouch) {
        if (hiLess(cur.hi, cur.hiOpen, iv.hi, iv.hiOpen)) {
          cur.hi = iv.hi;
          cur.hiOpen = iv.hiOpen;
        }
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

static std::vector<IntIv> intersectInt(const std::vector<IntIv>& a,
                                       const std::vector<IntIv>& b) {
  std::vector<IntIv> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    IntIv iv{std::max(a[i].lo, b[j].lo), std::min(a[i].hi, b[j].hi)};
    if (!intIvEmpty(iv)) out.push_back(iv);
    if (a[i].hi < b[j].hi)
      ++i;
    else
      ++j;
  }
  return out;
}

static std::vector<RealIv> intersectReal(const std::vector<RealIv>& a,
                                         const std::vector<RealIv>& b) {
  std::vector<RealIv> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    RealIv iv;
    if (a[i].lo != b[j].lo) {
      bool fromA = a[i].lo > b[j].lo;
      iv.lo = fromA ? a[i].lo : b[j].lo;
      iv.loOpen = fromA ? a[i].loOpen : b[j].loOpen;
    } else {
      iv.lo = a[i].lo;
      iv.loOpen = a[i].loOpen || b[j].loOpen;
    }
    if (a[i].hi != b[j].hi) {
      bool fromA = a[i].hi < b[j].hi;
      iv.hi = fromA ? a[i].hi : b[j].hi;
      iv.hiOpen = fromA ? a[i].hiOpen : b[j].hiOpen;
    } else {
      iv.hi = a[i].hi;
      iv.hiOpen = a[i].hiOpen || b[j].hiOpen;
    }
    if (!realIvEmpty(iv)) out.push_back(iv);
    if (hiLess(a[i].hi, a[i].hiOpen, b[j].hi, b[j].hiOpen))
      ++i;
    else
      ++j;
  }
  return out;
}

static std::vector<IntIv> subtractInt(const std::vector<IntIv>& a,
                                      const std::vector<IntIv>& b) {
  std::vector<IntIv> out;
  for (IntIv iv : a) {
    std::int64_t lo = iv.lo;
    for (const IntIv& cut : b) {
      if (cut.hi < lo) continue;
      if (cut.lo > iv.hi) break;
      if (cut.lo > lo) out.push_back({lo, cut.lo - 1});
      lo = cut.hi == std::numeric_limits<std::int64_t>::max()
               ? std::numeric_limits<std::int64_t>::max()
               : cut.hi + 1;
      if (lo > iv.hi || cut.hi == std::numeric_limits<std::int64_t>::max()) {
        lo = iv.hi + 1;
        break;
      }
    }
    if (lo <= iv.hi) out.push_back({lo, iv.hi});
  }
  return normalizeInt(out);
}

static std::vector<RealIv> subtractReal(const std::vector<RealIv>& a,
                                        const std::vector<RealIv>& b) {
  std::vector<RealIv> out;
  for (const RealIv& ivOrig : a) {
    RealIv rest = ivOrig;
    bool consumed = false;
    for (const RealIv& cut : b) {
      // cut entirely left of rest
      if (cut.hi < rest.lo || (cut.hi == rest.lo && (cut.hiOpen || rest.loOpen)))
        continue;
      // cut entirely right of rest; b is sorted, so later cuts are too
      if (cut.lo > rest.hi || (cut.lo == rest.hi && (cut.loOpen || rest.hiOpen)))
        break;
      RealIv left{rest.lo, cut.lo, rest.loOpen, !cut.loOpen};
      if (!realIvEmpty(left)) out.push_back(left);
      RealIv right{cut.hi, rest.hi, !cut.hiOpen, rest.hiOpen};
      if (realIvEmpty(right)) {
        consumed = true;
        break;
      }
      rest = right;
    }
    if (!consumed) out.push_back(rest);
  }
  return normalizeReal(out);
}

// ---------------------------------------------------------------------------
// FeatureSubset operations
// ---------------------------------------------------------------------------

bool FeatureSubset::empty() const {
  switch (kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical:
      return big ? bigSet.empty() : mask == 0;
    case DomainKind::OrdinalInt:
      return ints.empty();
    case DomainKind::OrdinalReal:
      return reals.empty();
  }
  return true;
}

bool FeatureSubset::singleValue() const {
  switch (kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical:
      return big ? bigSet.size() == 1 : std::popcount(mask) == 1;
    case DomainKind::OrdinalInt:
      return ints.size() == 1 && ints[0].lo == ints[0].hi;
    case DomainKind::OrdinalReal:
      return reals.size() == 1 && reals[0].lo == reals[0].hi;
  }
  return false;
}

FeatureSubset fullSubset(const Domain& dom) {
  FeatureSubset s;
  s.kind = dom.kind;
  switch (dom.kind) {
    case DomainKind::Boolean:
      s.mask = 0b11;
      break;
    case DomainKind::Categorical: {
      std::size_t n = dom.values.size();
      if (n <= 64) {
        s.mask = n == 64 ? ~0ull : ((1ull << n) - 1);
      } else {
        s.big = true;
        s.bigSet.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.bigSet[i] = static_cast<std::uint32_t>(i);
      }
      break;
    }
    case DomainKind::OrdinalInt:
      s.ints = {{dom.intLo, dom.intHi}};
      break;
    case DomainKind::OrdinalReal:
      s.reals = {{dom.realLo, dom.realHi, false, false}};
      break;
  }
  return s;
}

FeatureSubset literalSubset(const Domain& dom, const Literal& lit) {
  FeatureSubset s;
  s.kind = dom.kind;
  if (dom.discrete()) {
    std::size_t n = dom.discreteSize();
    if (n <= 64) {
      for (std::uint32_t v : lit.setIdx) s.mask |= 1ull << v;
    } else {
      s.big = true;
      s.bigSet = lit.setIdx;
    }
    return s;
  }
  if (dom.kind == DomainKind::OrdinalInt) {
    std::vector<IntIv> ivs;
    const std::int64_t lo = dom.intLo, hi = dom.intHi;
    switch (lit.op) {
      case LitOp::In:
        for (std::int64_t v : lit.setInt) ivs.push_back({v, v});
        break;
      case LitOp::Eq: ivs.push_back({lit.intValue, lit.intValue}); break;
      case LitOp::Lt: ivs.push_back({lo, lit.intValue - 1}); break;
      case LitOp::Le: ivs.push_back({lo, lit.intValue}); break;
      case LitOp::Gt: ivs.push_back({lit.intValue + 1, hi}); break;
      case LitOp::Ge: ivs.push_back({lit.intValue, hi}); break;
    }
    s.ints = normalizeInt(std::move(ivs));
    return s;
  }
  // OrdinalReal
  std::vector<RealIv> ivs;
  const double lo = dom.realLo, hi = dom.realHi;
  switch (lit.op) {
    case LitOp::In:
      for (double v : lit.setReal) ivs.push_back({v, v, false, false});
      break;
    case LitOp::Eq: ivs.push_back({lit.realValue, lit.realValue, false, false}); break;
    case LitOp::Lt: ivs.push_back({lo, lit.realValue, false, true}); break;
    case LitOp::Le: ivs.push_back({lo, lit.realValue, false, false}); break;
    case LitOp::Gt: ivs.push_back({lit.realValue, hi, true, false}); break;
    case LitOp::Ge: ivs.push_back({lit.realValue, hi, false, false}); break;
  }
  s.reals = normalizeReal(std::move(ivs));
  return s;
}

FeatureSubset intersect(const FeatureSubset& a, const FeatureSubset& b) {
  FeatureSubset s;
  s.kind = a.kind;
  switch (a.kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical:
      if (a.big || b.big) {
        s.big = true;
        std::set_intersection(a.bigSet.begin(), a.bigSet.end(), b.bigSet.begin(),
                              b.bigSet.end(), std::back_inserter(s.bigSet));
      } else {
        s.mask = a.mask & b.mask;
      }
      break;
    case DomainKind::OrdinalInt:
      s.ints = intersectInt(a.ints, b.ints);
      break;
    case DomainKind::OrdinalReal:
      s.reals = intersectReal(a.reals, b.reals);
      break;
  }
  return s;
}

bool disjointSubsets(const FeatureSubset& a, const FeatureSubset& b) {
  switch (a.kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical: {
      if (!a.big && !b.big) return (a.mask & b.mask) == 0;
      std::size_t i = 0, j = 0;
      while (i < a.bigSet.size() && j < b.bigSet.size()) {
        if (a.bigSet[i] == b.bigSet[j]) return false;
        if (a.bigSet[i] < b.bigSet[j])
          ++i;
        else
          ++j;
      }
      return true;
    }
    case DomainKind::OrdinalInt: {
      std::size_t i = 0, j = 0;
      while (i < a.ints.size() && j < b.ints.size()) {
        if (std::max(a.ints[i].lo, b.ints[j].lo) <= std::min(a.ints[i].hi, b.ints[j].hi))
          return false;
        if (a.ints[i].hi < b.ints[j].hi)
          ++i;
        else
          ++j;
      }
      return true;
    }
    case DomainKind::OrdinalReal:
      return intersectReal(a.reals, b.reals).empty();
  }
  return true;
}

FeatureSubset subtract(const FeatureSubset& a, const FeatureSubset& b) {
  FeatureSubset s;
  s.kind = a.kind;
  switch (a.kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical:
      if (a.big || b.big) {
        s.big = true;
        std::set_difference(a.bigSet.begin(), a.bigSet.end(), b.bigSet.begin(),
                            b.bigSet.end(), std::back_inserter(s.bigSet));
      } else {
        s.mask = a.mask & ~b.mask;
      }
      break;
    case DomainKind::OrdinalInt:
      s.ints = subtractInt(a.ints, b.ints);
      break;
    case DomainKind::OrdinalReal:
      s.reals = subtractReal(a.reals, b.reals);
      break;
  }
  return s;
}

bool subsetContains(const FeatureSubset& s, const PointValue& v) {
  switch (s.kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical:
      if (!s.big) return v.idx < 64 && ((s.mask >> v.idx) & 1);
      return std::binary_search(s.bigSet.begin(), s.bigSet.end(), v.idx);
    case DomainKind::OrdinalInt:
      for (const IntIv& iv : s.ints) {
        if (v.i < iv.lo) return false;
        if (v.i <= iv.hi) return true;
      }
      return false;
    case DomainKind::OrdinalReal:
      for (const RealIv& iv : s.reals) {
        bool aboveLo = iv.loOpen ? v.r > iv.lo : v.r >= iv.lo;
        bool belowHi = iv.hiOpen ? v.r < iv.hi : v.r <= iv.hi;
        if (v.r < iv.lo) return false;
        if (aboveLo && belowHi) return true;
      }
      return false;
  }
  return false;
}

PointValue smallestValue(const FeatureSubset& s) {
  PointValue v;
  switch (s.kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical:
      v.idx = s.big ? s.bigSet.front()
                    : static_cast<std::uint32_t>(std::countr_zero(s.mask));
      break;
    case DomainKind::OrdinalInt:
      v.i = s.ints.front().lo;
      break;
    case DomainKind::OrdinalReal: {
      const RealIv& iv = s.reals.front();
      if (!iv.loOpen) {
        v.r = iv.lo;
      } else {
        double c = std::floor(iv.lo) + 1.0;  // smallest integer > lo
        if (c < iv.hi || (c == iv.hi && !iv.hiOpen))
          v.r = c;
        else
          v.r = (iv.lo + iv.hi) / 2.0;
      }
      break;
    }
  }
  return v;
}

std::uint64_t subsetSize(const FeatureSubset& s) {
  switch (s.kind) {
    case DomainKind::Boolean:
    case DomainKind::Categorical:
      return s.big ? s.bigSet.size() : std::popcount(s.mask);
    case DomainKind::OrdinalInt: {
      std::uint64_t n = 0;
      for (const IntIv& iv : s.ints)
        n += static_cast<std::uint64_t>(iv.hi - iv.lo) + 1;
      return n;
    }
    case DomainKind::OrdinalReal: {
      std::uint64_t n = 0;
      for (const RealIv& iv : s.reals) {
        if (iv.lo != iv.hi)
          throw SchemaError("real-valued domain subset is not enumerable");
        ++n;
      }
      return n;
    }
  }
  return 0;
}

std::string pointValueToString(const Domain& dom, const PointValue& v) {
  switch (dom.kind) {
    case DomainKind::Boolean:
      return v.idx ? "1" : "0";
    case DomainKind::Categorical:
      return dom.values[v.idx];
    case DomainKind::OrdinalInt:
      return std::to_string(v.i);
    case DomainKind::OrdinalReal: {
      std::ostringstream os;
      os << v.r;
      return os.str();
    }
  }
  return "?";
}

bool DomainSubset::empty() const {
  for (const FeatureSubset& s : perFeature)
    if (s.empty()) return true;
  return false;
}

DomainSubset fullDomain(const Schema& schema) {
  DomainSubset d;
  d.perFeature.reserve(schema.size());
  for (const FeatureSchema& f : schema) d.perFeature.push_back(fullSubset(f.domain));
  return d;
}

DomainSubset intersect(const DomainSubset& a, const DomainSubset& b) {
  DomainSubset d;
  d.perFeature.reserve(a.perFeature.size());
  for (std::size_t i = 0; i < a.perFeature.size(); ++i)
    d.perFeature.push_back(intersect(a.perFeature[i], b.perFeature[i]));
  return d;
}

// ---------------------------------------------------------------------------
// PartialAssignment
// ---------------------------------------------------------------------------

PartialAssignment::PartialAssignment(const Schema& schema, std::vector<Literal> lits)
    : lits_(std::move(lits)) {
  std::map<int, FeatureSubset> grouped;
  for (const Literal& l : lits_) {
    checkLiteral(schema, l);
    FeatureSubset s = literalSubset(schema[l.feature - 1].domain, l);
    auto it = grouped.find(l.feature);
    if (it == grouped.end())
      grouped.emplace(l.feature, std::move(s));
    else
      it->second = intersect(it->second, s);
  }
  perFeature_.reserve(grouped.size());
  for (auto& [f, s] : grouped) {
    if (s.empty()) consistent_ = false;
    perFeature_.emplace_back(f, std::move(s));
  }
}

const FeatureSubset* PartialAssignment::featureSubset(int feature) const {
  auto it = std::lower_bound(
      perFeature_.begin(), perFeature_.end(), feature,
      [](const std::pair<int, FeatureSubset>& e, int f) { return e.first < f; });
  if (it == perFeature_.end() || it->first != feature) return nullptr;
  return &it->second;
}

bool PartialAssignment::complete(const Schema& schema) const {
  if (perFeature_.size() != schema.size()) return false;
  for (const auto& [f, s] : perFeature_)
    if (!s.singleValue()) return false;
  return true;
}

Point PartialAssignment::toPoint(const Schema& schema) const {
  if (!complete(schema))
    throw PreconditionError("assignment is not a complete point");
  Point p(schema.size());
  for (const auto& [f, s] : perFeature_) p[f - 1] = smallestValue(s);
  return p;
}

DomainSubset PartialAssignment::domain(const Schema& schema) const {
  DomainSubset d = fullDomain(schema);
  for (const auto& [f, s] : perFeature_) d.perFeature[f - 1] = s;
  return d;
}

PartialAssignment pointAssignment(const Schema& schema, const Point& p) {
  std::vector<Literal> lits;
  lits.reserve(schema.size());
  for (const FeatureSchema& f : schema) {
    const PointValue& v = p[f.id - 1];
    switch (f.domain.kind) {
      case DomainKind::Boolean:
      case DomainKind::Categorical:
        lits.push_back(eqDiscrete(f.id, v.idx));
        break;
      case DomainKind::OrdinalInt:
        lits.push_back(scalarInt(f.id, LitOp::Eq, v.i));
        break;
      case DomainKind::OrdinalReal:
        lits.push_back(scalarReal(f.id, LitOp::Eq, v.r));
        break;
    }
  }
  return PartialAssignment(schema, std::move(lits));
}

std::string assignmentToString(const Schema& schema, const PartialAssignment& a) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const Literal& l : a.literals()) {
    if (!first) os << ", ";
    first = false;
    os << literalToString(schema, l);
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Tree construction
// ---------------------------------------------------------------------------

int DecisionTree::classIndex(const std::string& label) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i] == label) return static_cast<int>(i);
  return -1;
}

TreeBuilder::TreeBuilder(Schema schema, std::vector<std::string> classes)
    : schema_(std::move(schema)), classes_(std::move(classes)) {
  checkSchema(schema_);
  if (classes_.empty()) throw SchemaError("class list is empty");
  std::vector<std::string> c = classes_;
  std::sort(c.begin(), c.end());
  if (std::adjacent_find(c.begin(), c.end()) != c.end())
    throw SchemaError("duplicate class label");
}

TreeBuilder& TreeBuilder::leaf(int id, const std::string& cls) {
  pending_.push_back({id, true, 0, {}, cls});
  return *this;
}

TreeBuilder& TreeBuilder::internal(int id, int feature,
                                   std::vector<std::pair<Literal, int>> edges) {
  pending_.push_back({id, false, feature, std::move(edges), {}});
  return *this;
}

DecisionTree TreeBuilder::build(int rootId) {
  DecisionTree t;
  t.schema = schema_;
  t.classes = classes_;

  std::unordered_map<int, int> idToIdx;
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    if (!idToIdx.emplace(pending_[i].id, static_cast<int>(i)).second)
      throw StructureError("duplicate node id " + std::to_string(pending_[i].id));
  }
  auto resolve = [&](int id) {
    auto it = idToIdx.find(id);
    if (it == idToIdx.end())
      throw StructureError("reference to unknown node id " + std::to_string(id));
    return it->second;
  };

  t.nodes.resize(pending_.size());
  std::vector<int> parentCount(pending_.size(), 0);
  for (std::size_t i = 0; i < pending_.size(); ++i) {
    const Pending& p = pending_[i];
    Node& n = t.nodes[i];
    n.id = p.id;
    n.leaf = p.leaf;
    if (p.leaf) {
      n.cls = t.classIndex(p.cls);
      if (n.cls < 0)
        throw SchemaError("leaf node " + std::to_string(p.id) +
                          ": class label \"" + p.cls + "\" not in the class list");
    } else {
      if (p.feature < 1 || p.feature > static_cast<int>(schema_.size()))
        throw SchemaError("node " + std::to_string(p.id) + ": unknown feature id " +
                          std::to_string(p.feature));
      if (p.edges.size() < 2)
        throw StructureError("internal node " + std::to_string(p.id) +
                             " must have at least 2 children");
      n.feature = p.feature;
      for (const auto& [lit, childId] : p.edges) {
        if (lit.feature != p.feature)
          throw SchemaError("node " + std::to_string(p.id) +
                            ": edge literal tests a different feature");
        checkLiteral(schema_, lit);
        int childIdx = resolve(childId);
        parentCount[childIdx]++;
        n.edges.push_back({lit, childIdx});
      }
    }
  }

  t.root = resolve(rootId);
  if (parentCount[t.root] != 0)
    throw StructureError("root node has a parent");
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (static_cast<int>(i) == t.root) continue;
    if (parentCount[i] != 1)
      throw StructureError("node " + std::to_string(t.nodes[i].id) + " has " +
                           std::to_string(parentCount[i]) +
                           " parents; the graph must be a tree");
  }
  return t;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::string ValidationReport::str() const {
  if (ok()) return "OK";
  std::ostringstream os;
  for (const Violation& v : violations) {
    switch (v.kind) {
      case Violation::Kind::PathInconsistent: os << "path-inconsistent"; break;
      case Violation::Kind::ChildrenOverlap: os << "children-overlap"; break;
      case Violation::Kind::CoverageGap: os << "coverage-gap"; break;
    }
    os << " at node " << v.nodeId << ": " << v.detail << "\n";
  }
  return os.str();
}

ValidationReport validate(const DecisionTree& tree) {
  ValidationReport report;
  // DFS carrying the path-so-far restriction per feature.
  struct Frame {
    int node;
    std::vector<FeatureSubset> restr;  // indexed by feature-1
  };
  std::vector<FeatureSubset> rootRestr;
  rootRestr.reserve(tree.schema.size());
  for (const FeatureSchema& f : tree.schema) rootRestr.push_back(fullSubset(f.domain));

  std::vector<Frame> stack;
  stack.push_back({tree.root, std::move(rootRestr)});
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    const Node& n = tree.nodes[fr.node];
    bool inconsistent = false;
    for (const FeatureSubset& s : fr.restr)
      if (s.empty()) inconsistent = true;
    if (n.leaf) {
      if (inconsistent)
        report.violations.push_back({Violation::Kind::PathInconsistent, n.id,
                                     "root-to-leaf path has empty domain"});
      continue;
    }
    const Domain& dom = tree.schema[n.feature - 1].domain;
    const FeatureSubset& pathRestr = fr.restr[n.feature - 1];
    // pairwise disjointness of child literals
    std::vector<FeatureSubset> childSets;
    childSets.reserve(n.edges.size());
    for (const Edge& e : n.edges) childSets.push_back(literalSubset(dom, e.lit));
    for (std::size_t i = 0; i < childSets.size(); ++i)
      for (std::size_t j = i + 1; j < childSets.size(); ++j)
        if (!disjointSubsets(childSets[i], childSets[j]))
          report.violations.push_back(
              {Violation::Kind::ChildrenOverlap, n.id,
               "edges " + std::to_string(i) + " and " + std::to_string(j) +
                   " have overlapping literals"});
    // coverage of the path-restricted domain
    FeatureSubset uncovered = pathRestr;
    for (const FeatureSubset& c : childSets) uncovered = subtract(uncovered, c);
    if (!uncovered.empty() && !inconsistent)
      report.violations.push_back(
          {Violation::Kind::CoverageGap, n.id,
           "child literals do not cover the restricted domain of feature " +
               std::to_string(n.feature)});
    // recurse (reverse order so DFS visits stored order; order is
    // irrelevant for validation but keeps reports deterministic)
    for (std::size_t k = n.edges.size(); k-- > 0;) {
      Frame child;
      child.node = n.edges[k].child;
      child.restr = fr.restr;
      child.restr[n.feature - 1] = intersect(pathRestr, childSets[k]);
      stack.push_back(std::move(child));
    }
  }
  // stable report order by node id then kind
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) { return a.nodeId < b.nodeId; });
  return report;
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

namespace {

struct SubsetKey {
  std::size_t hash(const FeatureSubset& s) const {
    std::size_t h = static_cast<std::size_t>(s.kind) * 1099511628211ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(s.mask);
    for (std::uint32_t v : s.bigSet) mix(v);
    for (const IntIv& iv : s.ints) {
      mix(static_cast<std::uint64_t>(iv.lo));
      mix(static_cast<std::uint64_t>(iv.hi));
    }
    for (const RealIv& iv : s.reals) {
      std::uint64_t a, b;
      static_assert(sizeof(double) == 8);
      std::memcpy(&a, &iv.lo, 8);
      std::memcpy(&b, &iv.hi, 8);
      mix(a);
      mix(b);
      mix((iv.loOpen ? 1u : 0u) | (iv.hiOpen ? 2u : 0u));
    }
    return h;
  }
};

}  // namespace

PathSet pathsOf(const DecisionTree& tree) {
  PathSet ps;
  ps.tree = &tree;

  std::unordered_map<std::size_t, std::vector<int>> poolIndex;  // hash -> pool ids
  SubsetKey keyer;
  auto intern = [&](const FeatureSubset& s) -> int {
    std::size_t h = keyer.hash(s);
    for (int id : poolIndex[h])
      if (ps.pool[id] == s) return id;
    ps.pool.push_back(s);
    int id = static_cast<int>(ps.pool.size()) - 1;
    poolIndex[h].push_back(id);
    return id;
  };

  // Iterative DFS; restriction maintained as per-feature stack of pool ids.
  std::vector<std::vector<int>> restrStack(tree.schema.size() + 1);
  std::vector<int> nodePath;

  struct Task {
    int node;
    int viaFeature;  // 0 for root
    int viaSubset;   // pool id of the new restriction on viaFeature
    bool exit;       // second visit: pop state
  };
  std::vector<Task> tasks;
  tasks.push_back({tree.root, 0, -1, false});

  while (!tasks.empty()) {
    Task tk = tasks.back();
    tasks.pop_back();
    if (tk.exit) {
      nodePath.pop_back();
      if (tk.viaFeature != 0) restrStack[tk.viaFeature].pop_back();
      continue;
    }
    if (tk.viaFeature != 0) restrStack[tk.viaFeature].push_back(tk.viaSubset);
    nodePath.push_back(tk.node);
    tasks.push_back({tk.node, tk.viaFeature, tk.viaSubset, true});

    const Node& n = tree.nodes[tk.node];
    if (n.leaf) {
      Path p;
      p.nodes = nodePath;
      p.leafClass = n.cls;
      for (int f = 1; f <= static_cast<int>(tree.schema.size()); ++f)
        if (!restrStack[f].empty())
          p.restr.push_back({f, restrStack[f].back()});
      ps.paths.push_back(std::move(p));
      continue;
    }
    const Domain& dom = tree.schema[n.feature - 1].domain;
    const FeatureSubset* cur =
        restrStack[n.feature].empty() ? nullptr : &ps.pool[restrStack[n.feature].back()];
    // push children in reverse so they pop in stored order
    std::vector<int> childSubsets(n.edges.size());
    for (std::size_t k = 0; k < n.edges.size(); ++k) {
      FeatureSubset s = literalSubset(dom, n.edges[k].lit);
      if (cur) s = intersect(*cur, s);
      childSubsets[k] = intern(s);
    }
    for (std::size_t k = n.edges.size(); k-- > 0;)
      tasks.push_back({n.edges[k].child, n.feature, childSubsets[k], false});
  }
  return ps;
}

std::vector<Literal> pathLiterals(const DecisionTree& tree, const Path& p) {
  std::vector<Literal> lits;
  for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
    const Node& n = tree.nodes[p.nodes[i]];
    for (const Edge& e : n.edges) {
      if (e.child == p.nodes[i + 1]) {
        lits.push_back(e.lit);
        break;
      }
    }
  }
  return lits;
}

PartialAssignment pathAssignment(const DecisionTree& tree, const Path& p) {
  return PartialAssignment(tree.schema, pathLiterals(tree, p));
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

int classifyIdx(const DecisionTree& tree, const Point& p) {
  int cur = tree.root;
  for (;;) {
    const Node& n = tree.nodes[cur];
    if (n.leaf) return n.cls;
    const Domain& dom = tree.schema[n.feature - 1].domain;
    const PointValue& v = p[n.feature - 1];
    int next = -1;
    for (const Edge& e : n.edges) {
      if (subsetContains(literalSubset(dom, e.lit), v)) {
        next = e.child;
        break;
      }
    }
    if (next < 0)
      throw Error("no edge of node " + std::to_string(n.id) +
                  " matches the point; tree fails coverage");
    cur = next;
  }
}

std::string classify(const DecisionTree& tree, const PartialAssignment& a) {
  if (!a.complete(tree.schema))
    throw PreconditionError("classification requires a complete assignment");
  return tree.classes[classifyIdx(tree, a.toPoint(tree.schema))];
}

}  // namespace predeq
