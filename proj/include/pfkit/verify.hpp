#pragma once

#include <string>
#include <vector>

#include "pfkit/corpus.hpp"

namespace pfkit {

enum class CheckStatus { Pass, Fail, Skip, Erratum };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct EntryReport {
  std::string id;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool ok() const;
  bool uses_erratum() const;
  const CheckResult* find(const std::string& name) const;
};

struct VerifyOptions {
  bool oracle = false;
  long max_dhat = 12;
  int max_n = 4;
  double timeout_seconds = 300;
};

// Checks every expectation present on the entry. `all` resolves `dual = <name>` references.
// A field `<key>_erratum` is consulted only when `<key>` itself fails.
EntryReport verify_entry(const CorpusEntry& e, const std::vector<CorpusEntry>& all, const VerifyOptions& opts);

// Reports come back in input order for both variants.
std::vector<EntryReport> verify_serial(const std::vector<CorpusEntry>& entries, const std::vector<CorpusEntry>& all,
                                       const VerifyOptions& opts);
std::vector<EntryReport> verify_parallel(const std::vector<CorpusEntry>& entries, const std::vector<CorpusEntry>& all,
                                         const VerifyOptions& opts);

struct VerifySummary {
  size_t entries = 0;
  size_t passed = 0;
  size_t failed = 0;
  size_t with_errata = 0;
  size_t checks = 0;
  size_t failed_checks = 0;
};
VerifySummary summarize(const std::vector<EntryReport>& reports);

}  // namespace pfkit
