#include "predeq/qm.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <random>
#include <sstream>

namespace predeq {

int Term::litCount() const { return std::popcount(pos | neg); }

bool termLess(const Term& a, const Term& b, int numFeatures) {
  for (int f = 0; f < numFeatures; ++f) {
    std::uint64_t bit = 1ull << f;
    int ca = (a.pos & bit) ? 1 : (a.neg & bit) ? 2 : 0;
    int cb = (b.pos & bit) ? 1 : (b.neg & bit) ? 2 : 0;
    if (ca != cb) return ca < cb;
  }
  return false;
}

bool consensus(const Term& a, const Term& b, Term& out) {
  std::uint64_t clash = (a.pos & b.neg) | (a.neg & b.pos);
  if (std::popcount(clash) != 1) return false;
  out.pos = (a.pos | b.pos) & ~clash;
  out.neg = (a.neg | b.neg) & ~clash;
  return true;
}

bool ClassDnf::evaluate(std::uint64_t point) const {
  for (const Term& t : terms)
    if (t.satisfiedBy(point)) return true;
  return false;
}

TieBreak TieBreak::parse(const std::string& text) {
  if (text == "lexlow") return lexLow();
  if (text == "lexhigh") return lexHigh();
  if (text.rfind("seeded:", 0) == 0) {
    try {
      return seeded(std::stoull(text.substr(7)));
    } catch (const std::exception&) {
      throw ParseError("bad seed in tie-break \"" + text + "\"");
    }
  }
  throw ParseError("unknown tie-break \"" + text +
                   "\" (expected lexlow | lexhigh | seeded:<n>)");
}

std::string TieBreak::str() const {
  switch (mode) {
    case TieBreakMode::LexLow: return "lexlow";
    case TieBreakMode::LexHigh: return "lexhigh";
    case TieBreakMode::Seeded: return "seeded:" + std::to_string(seed);
  }
  return "?";
}

namespace {

void sortCanonical(std::vector<Term>& terms, int m) {
  std::sort(terms.begin(), terms.end(),
            [m](const Term& a, const Term& b) { return termLess(a, b, m); });
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
}

int checkBooleanSchema(const DecisionTree& tree) {
  for (const FeatureSchema& f : tree.schema)
    if (f.domain.kind != DomainKind::Boolean)
      throw SchemaError("feature " + f.name +
                        " is not boolean; the QM pipeline handles boolean trees only");
  if (tree.schema.size() > 64)
    throw CapExceeded("more than 64 features; term bitmasks do not fit");
  return static_cast<int>(tree.schema.size());
}

}  // namespace

ClassDnf classTerms(const DecisionTree& tree, const std::string& cls) {
  int m = checkBooleanSchema(tree);
  int c = tree.classIndex(cls);
  if (c < 0) throw PreconditionError("unknown class label \"" + cls + "\"");

  ClassDnf dnf;
  dnf.cls = cls;
  dnf.kind = DnfKind::Raw;
  dnf.numFeatures = m;
  PathSet ps = pathsOf(tree);
  for (const Path& p : ps.paths) {
    if (p.leafClass != c) continue;
    Term t;
    for (const PathEntry& e : p.restr) {
      std::uint64_t bit = 1ull << (e.feature - 1);
      std::uint64_t mask = ps.subsetOf(e).mask;
      if (mask == 0b01)
        t.neg |= bit;
      else if (mask == 0b10)
        t.pos |= bit;
      // mask 0b11 leaves the feature unconstrained
    }
    dnf.terms.push_back(t);
  }
  sortCanonical(dnf.terms, m);
  return dnf;
}

ClassDnf bcf(const ClassDnf& raw, QmLimits limits) {
  ClassDnf out;
  out.cls = raw.cls;
  out.kind = DnfKind::Bcf;
  out.numFeatures = raw.numFeatures;

  // live set with absorption on insert; worklist of unprocessed terms
  std::vector<Term> live;
  std::deque<Term> work(raw.terms.begin(), raw.terms.end());

  auto absorbedByLive = [&](const Term& t) {
    for (const Term& l : live)
      if (l.absorbs(t)) return true;
    return false;
  };

  while (!work.empty()) {
    Term t = work.front();
    work.pop_front();
    if (absorbedByLive(t)) continue;
    // drop live terms the newcomer absorbs
    live.erase(std::remove_if(live.begin(), live.end(),
                              [&](const Term& l) { return t.absorbs(l); }),
               live.end());
    // consensus against the remaining live set
    for (const Term& l : live) {
      Term c;
      if (consensus(t, l, c) && !absorbedByLive(c)) work.push_back(c);
    }
    live.push_back(t);
    if (live.size() + work.size() > limits.termCap)
      throw CapExceeded("BCF generation exceeded the term cap of " +
                        std::to_string(limits.termCap));
  }

  // final absorption pass guarantees the fixpoint regardless of insert order
  std::vector<Term> primes;
  for (std::size_t i = 0; i < live.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < live.size() && !absorbed; ++j)
      if (i != j && live[j].absorbs(live[i])) absorbed = true;
    if (!absorbed) primes.push_back(live[i]);
  }
  out.terms = std::move(primes);
  sortCanonical(out.terms, out.numFeatures);
  return out;
}

namespace {

struct CoverSearch {
  const std::vector<Term>& primes;     // in the tie-break's preference order
  const std::vector<std::vector<int>>& coverOf;  // minterm -> covering primes
  std::size_t bestCost = ~std::size_t(0);
  int bestLits = 0;
  std::vector<int> bestPick;     // indices into primes, sorted
  bool haveBest = false;

  std::vector<char> covered;     // per minterm
  std::vector<int> pick;

  // lexicographic preference between two sorted picks of equal size
  bool prefer(const std::vector<int>& cand, int candLits) {
    if (!haveBest) return true;
    if (cand.size() != bestCost) return cand.size() < bestCost;
    if (candLits != bestLits) return candLits < bestLits;
    return cand < bestPick;
  }

  void run(std::size_t uncovered) {
    if (pick.size() >= bestCost + 1) return;  // cannot strictly improve or tie
    if (uncovered == 0) {
      std::vector<int> sorted = pick;
      std::sort(sorted.begin(), sorted.end());
      int lits = 0;
      for (int i : sorted) lits += primes[i].litCount();
      if (prefer(sorted, lits)) {
        bestCost = sorted.size();
        bestLits = lits;
        bestPick = std::move(sorted);
        haveBest = true;
      }
      return;
    }
    if (pick.size() + 1 > bestCost) return;  // even one more term is too many
    // branch on the uncovered minterm with the fewest covering primes
    int target = -1;
    std::size_t fewest = ~std::size_t(0);
    for (std::size_t mt = 0; mt < covered.size(); ++mt) {
      if (covered[mt]) continue;
      if (coverOf[mt].size() < fewest) {
        fewest = coverOf[mt].size();
        target = static_cast<int>(mt);
      }
    }
    for (int pr : coverOf[target]) {
      // cover with prime pr
      std::vector<int> newlyCovered;
      for (std::size_t mt = 0; mt < covered.size(); ++mt)
        if (!covered[mt] &&
            std::find(coverOf[mt].begin(), coverOf[mt].end(), pr) != coverOf[mt].end()) {
          covered[mt] = 1;
          newlyCovered.push_back(static_cast<int>(mt));
        }
      pick.push_back(pr);
      run(uncovered - newlyCovered.size());
      pick.pop_back();
      for (int mt : newlyCovered) covered[mt] = 0;
    }
  }
};

}  // namespace

ClassDnf minimize(const ClassDnf& bcfDnf, TieBreak tie, QmLimits limits) {
  if (bcfDnf.kind != DnfKind::Bcf)
    throw PreconditionError("minimize expects a BCF input");
  const int m = bcfDnf.numFeatures;
  if (m > limits.mintermFeatureCap)
    throw CapExceeded("minterm enumeration over " + std::to_string(m) +
                      " features exceeds the cap of " +
                      std::to_string(limits.mintermFeatureCap));

  ClassDnf out;
  out.cls = bcfDnf.cls;
  out.kind = DnfKind::Minimized;
  out.numFeatures = m;
  if (bcfDnf.terms.empty()) return out;  // constant-false predicate

  // preference order of the primes under the tie-break
  std::vector<int> order(bcfDnf.terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  switch (tie.mode) {
    case TieBreakMode::LexLow:
      break;  // canonical order as stored
    case TieBreakMode::LexHigh:
      std::reverse(order.begin(), order.end());
      break;
    case TieBreakMode::Seeded: {
      std::mt19937_64 rng(tie.seed);
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng() % i]);
      break;
    }
  }
  std::vector<Term> prefs(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) prefs[i] = bcfDnf.terms[order[i]];

  // minterms of the predicate, from the BCF itself
  std::vector<std::uint64_t> minterms;
  for (std::uint64_t x = 0; x < (1ull << m); ++x)
    if (bcfDnf.evaluate(x)) minterms.push_back(x);

  std::vector<std::vector<int>> coverOf(minterms.size());
  for (std::size_t mt = 0; mt < minterms.size(); ++mt)
    for (std::size_t pr = 0; pr < prefs.size(); ++pr)
      if (prefs[pr].satisfiedBy(minterms[mt]))
        coverOf[mt].push_back(static_cast<int>(pr));

  // essential primes are part of every cover; no dominance reductions,
  // they would hide alternative equal-cost covers from the tie-break
  std::vector<char> inCover(prefs.size(), 0);
  std::vector<char> covered(minterms.size(), 0);
  for (std::size_t mt = 0; mt < minterms.size(); ++mt) {
    if (coverOf[mt].size() != 1) continue;
    int pr = coverOf[mt][0];
    if (inCover[pr]) continue;
    inCover[pr] = 1;
    for (std::size_t k = 0; k < minterms.size(); ++k)
      if (prefs[pr].satisfiedBy(minterms[k])) covered[k] = 1;
  }

  std::size_t uncovered = 0;
  for (char c : covered)
    if (!c) ++uncovered;

  std::vector<int> chosen;
  for (std::size_t pr = 0; pr < prefs.size(); ++pr)
    if (inCover[pr]) chosen.push_back(static_cast<int>(pr));

  if (uncovered > 0) {
    // exact search over the cyclic remainder
    CoverSearch search{prefs, coverOf, ~std::size_t(0), 0, {}, false, covered, {}};
    search.run(uncovered);
    if (!search.haveBest) throw Error("cover search failed; BCF is not a cover");
    chosen.insert(chosen.end(), search.bestPick.begin(), search.bestPick.end());
  }

  for (int pr : chosen) out.terms.push_back(prefs[pr]);
  sortCanonical(out.terms, m);
  return out;
}

bool qmEquivalence(const DecisionTree& t1, const DecisionTree& t2, TieBreak tie1,
                   TieBreak tie2, QmLimits limits) {
  if (t1.schema != t2.schema)
    throw PreconditionError("trees have different schemas");
  if (t1.classes != t2.classes)
    throw PreconditionError("trees have different class sets");
  for (const std::string& cls : t1.classes) {
    ClassDnf d1 = minimize(bcf(classTerms(t1, cls), limits), tie1, limits);
    ClassDnf d2 = minimize(bcf(classTerms(t2, cls), limits), tie2, limits);
    if (d1.terms != d2.terms) return false;
  }
  return true;
}

bool bcfEquivalence(const DecisionTree& t1, const DecisionTree& t2, QmLimits limits) {
  if (t1.schema != t2.schema)
    throw PreconditionError("trees have different schemas");
  if (t1.classes != t2.classes)
    throw PreconditionError("trees have different class sets");
  for (const std::string& cls : t1.classes) {
    ClassDnf d1 = bcf(classTerms(t1, cls), limits);
    ClassDnf d2 = bcf(classTerms(t2, cls), limits);
    if (d1.terms != d2.terms) return false;
  }
  return true;
}

std::string termToText(const Term& t, int numFeatures) {
  if (t.pos == 0 && t.neg == 0) return "true";
  std::ostringstream os;
  bool first = true;
  for (int f = 1; f <= numFeatures; ++f) {
    std::uint64_t bit = 1ull << (f - 1);
    if (!((t.pos | t.neg) & bit)) continue;
    if (!first) os << " ";
    first = false;
    if (t.neg & bit) os << "~";
    os << "x" << f;
  }
  return os.str();
}

std::string dnfToText(const ClassDnf& dnf) {
  std::ostringstream os;
  for (const Term& t : dnf.terms) os << termToText(t, dnf.numFeatures) << "\n";
  return os.str();
}

}  // namespace predeq
