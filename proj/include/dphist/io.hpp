#pragma once

#include <stdexcept>
#include <string>

#include "dphist/histogram.hpp"
#include "dphist/mechanism.hpp"

namespace dphist {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Count CSV: one record per line, either `count` (implicit 1-based index)
/// or `index,count`. An optional header line is detected by a non-numeric
/// first token. Missing indices read as 0.
Histogram read_histogram_csv(const std::string& path);
void write_histogram_csv(const std::string& path, const Histogram& h);

/// A released vector on disk: a line-oriented CSV of values plus a JSON
/// sidecar at `<path>.meta.json` recording strategy, epsilon, sensitivity,
/// tree shape (for hierarchical releases) and whether inference has been
/// applied. Hierarchical rows are `node_id,level,offset,value`; flat rows
/// are `index,value`.
struct ReleaseFile {
  NoisyVector data;
  bool inferred = false;
};

void write_release(const std::string& path, const ReleaseFile& release);
ReleaseFile read_release(const std::string& path);

/// Ledger JSON: {"entries": [{"label", "epsilon"}...], "total"}. Reading a
/// missing file yields an empty ledger.
void write_ledger(const std::string& path, const BudgetLedger& ledger);
BudgetLedger read_ledger(const std::string& path);

}  // namespace dphist
