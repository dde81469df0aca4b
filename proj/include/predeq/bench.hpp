#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace predeq {

struct Table1Row {
  int r = 0;
  int nodes = 0;
  int features = 0;
  bool capped = false;                 // term cap hit; sizes below are absent
  std::uint64_t bcf0 = 0, bcf1 = 0;
  double bcf0Seconds = 0, bcf1Seconds = 0;
  std::optional<std::uint64_t> bcf0Expected, bcf1Expected;
  bool sizesOk = true;  // matches the expected sizes when known
};

struct Table2Row {
  int r = 0;
  int nodes = 0;
  int features = 0;
  bool countsOk = true;  // nodes == 6r+3 and features == 2r+1
  double oneAxpSeconds = 0;
  double isWaxpSeconds = 0;
  double decideSeconds = 0;
  std::size_t axpSize = 0;
  bool twinEquivalent = true;  // decide verdict vs the leaf-mutated twin
};

struct BenchReport {
  int table = 0;
  std::vector<Table1Row> rows1;
  std::vector<Table2Row> rows2;

  bool allOk() const;
  std::string toText() const;
  std::string toJson() const;
};

/// Builds worstCase(r) for r in [rMin, rMax], compiles both class BCFs,
/// records sizes and wall times; sizes are compared to the known values
/// for r <= 9. Rows that trip the term cap are recorded as capped.
BenchReport runTable1(int rMin, int rMax, std::size_t termCap);

/// For each r: worstCase(r) and its leaf-mutated twin; times one-AXp
/// extraction on the longest all-ones path assignment, the WAXp decision
/// for the same assignment, and the equivalence decision vs the twin.
BenchReport runTable2(const std::vector<int>& rValues);

}  // namespace predeq
