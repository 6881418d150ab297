#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfkit/invertible.hpp"

namespace pfkit {

// One section of a corpus file. Values are kept as text and parsed by the verifier so
// that a malformed expectation is reported against its entry instead of aborting the load.
struct CorpusEntry {
  std::string id;
  std::string file;
  int line = 0;
  std::map<std::string, std::string> fields;

  bool has(const std::string& key) const { return fields.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  std::vector<std::string> vars() const;  // from `vars`, empty for x1..xn
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Format: '#' comments, "[ID]" section headers, "key = value" lines. Repeated keys or
// ids are errors.
std::vector<CorpusEntry> parse_corpus(const std::string& text, const std::string& file);
const std::vector<CorpusEntry>& builtin_corpus();
// Glob patterns with '*' and '?'; an empty pattern list selects everything.
std::vector<CorpusEntry> filter_corpus(const std::vector<CorpusEntry>& entries, const std::vector<std::string>& patterns);
bool glob_match(const std::string& pattern, const std::string& text);

// Comma separated lists.
std::vector<long> parse_long_list(const std::string& text);
std::vector<BigRat> parse_rat_list(const std::string& text);

// Monomials written as products of variables, e.g. "w^36x", "w^2x^2y^2", "x1^3*x4".
// Names longer than one character must be separated by '*'.
Exponent parse_monomial(const std::string& text, const std::vector<std::string>& names);
std::vector<Exponent> parse_monomial_list(const std::string& text, const std::vector<std::string>& names);

}  // namespace pfkit
