#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "predeq/model.hpp"

namespace predeq {

/// Conjunction of boolean literals over features 1..m (m <= 64):
/// bit i-1 of pos/neg set iff x_i / ~x_i occurs. pos & neg == 0.
/// The empty term is the constant-true implicant.
struct Term {
  std::uint64_t pos = 0, neg = 0;

  int litCount() const;
  bool satisfiedBy(std::uint64_t point) const {
    return (point & pos) == pos && (point & neg) == 0;
  }
  /// a absorbs b when a's literals are a subset of b's.
  bool absorbs(const Term& b) const {
    return (pos & ~b.pos) == 0 && (neg & ~b.neg) == 0;
  }
  bool operator==(const Term&) const = default;
};

/// Canonical order: feature-ascending lexicographic over the per-feature
/// codes (absent < positive < negative).
bool termLess(const Term& a, const Term& b, int numFeatures);

/// Consensus of two terms clashing on exactly one feature; false when no
/// consensus exists (zero or two and more clashes).
bool consensus(const Term& a, const Term& b, Term& out);

enum class DnfKind { Raw, Bcf, Minimized };

/// A class predicate as a set of terms in canonical order, so that set
/// equality is sequence equality.
struct ClassDnf {
  std::string cls;
  DnfKind kind = DnfKind::Raw;
  int numFeatures = 0;
  std::vector<Term> terms;  // canonical order, no duplicates

  bool evaluate(std::uint64_t point) const;
  bool operator==(const ClassDnf&) const = default;
};

struct QmLimits {
  std::size_t termCap = 1u << 20;  // abort BCF growth beyond this
  int mintermFeatureCap = 20;      // refuse minterm enumeration beyond 2^cap
};

enum class TieBreakMode { LexLow, LexHigh, Seeded };

struct TieBreak {
  TieBreakMode mode = TieBreakMode::LexLow;
  std::uint64_t seed = 0;

  static TieBreak lexLow() { return {TieBreakMode::LexLow, 0}; }
  static TieBreak lexHigh() { return {TieBreakMode::LexHigh, 0}; }
  static TieBreak seeded(std::uint64_t s) { return {TieBreakMode::Seeded, s}; }
  /// Parses "lexlow" | "lexhigh" | "seeded:<n>".
  static TieBreak parse(const std::string& text);
  std::string str() const;
};

/// One term per path with the given leaf class (boolean trees only).
ClassDnf classTerms(const DecisionTree& tree, const std::string& cls);

/// Blake canonical form: fixpoint of consensus closure plus absorption;
/// equals the set of all prime implicants of the input's disjunction.
ClassDnf bcf(const ClassDnf& raw, QmLimits limits = {});

/// Exact minimum-cardinality prime cover of all minterms (cost: term
/// count, then total literal count). Among equal-cost covers the tie
/// break picks the extremal canonical term sequence (LexLow smallest,
/// LexHigh largest, Seeded under a seed-shuffled term order).
ClassDnf minimize(const ClassDnf& bcfDnf, TieBreak tie, QmLimits limits = {});

/// The comparison the QM baseline performs: per-class minimized DNFs
/// compared as canonical sequences. Deliberately unsound when the two
/// sides resolve ties differently.
bool qmEquivalence(const DecisionTree& t1, const DecisionTree& t2, TieBreak tie1,
                   TieBreak tie2, QmLimits limits = {});

/// Sound and complete canonical comparison via per-class BCFs (may be
/// exponentially large).
bool bcfEquivalence(const DecisionTree& t1, const DecisionTree& t2,
                    QmLimits limits = {});

std::string termToText(const Term& t, int numFeatures);
/// One term per line, literals as x3 / ~x3, features ascending.
std::string dnfToText(const ClassDnf& dnf);

}  // namespace predeq
