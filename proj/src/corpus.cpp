#include "pfkit/corpus.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pfkit {

const std::vector<std::pair<std::string, std::string>>& embedded_corpus_files();

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace

const std::string& CorpusEntry::get(const std::string& key) const {
  auto it = fields.find(key);
  if (it == fields.end()) throw CorpusError(id + ": missing field '" + key + "'");
  return it->second;
}

std::vector<std::string> CorpusEntry::vars() const {
  if (!has("vars")) return {};
  return split(get("vars"), ',');
}

std::vector<CorpusEntry> parse_corpus(const std::string& text, const std::string& file) {
  std::vector<CorpusEntry> out;
  std::set<std::string> ids;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw CorpusError(file + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) fail("malformed section header");
      CorpusEntry e;
      e.id = trim(line.substr(1, line.size() - 2));
      e.file = file;
      e.line = lineno;
      if (!ids.insert(e.id).second) fail("duplicate id " + e.id);
      out.push_back(std::move(e));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    if (out.empty()) fail("field outside of a section");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("empty key");
    if (!out.back().fields.emplace(key, value).second) fail("duplicate key " + key);
  }
  return out;
}

const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> all;
    for (const auto& [name, text] : embedded_corpus_files()) {
      auto part = parse_corpus(text, name);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }();
  return entries;
}

bool glob_match(const std::string& pattern, const std::string& text) {
  size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::vector<CorpusEntry> filter_corpus(const std::vector<CorpusEntry>& entries,
                                       const std::vector<std::string>& patterns) {
  if (patterns.empty()) return entries;
  std::vector<CorpusEntry> out;
  for (const auto& e : entries)
    if (std::any_of(patterns.begin(), patterns.end(), [&](const std::string& p) { return glob_match(p, e.id); }))
      out.push_back(e);
  return out;
}

std::vector<long> parse_long_list(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  std::vector<long> out;
  for (const auto& tok : split(t, ',')) {
    size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad integer '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<BigRat> parse_rat_list(const std::string& text) {
  std::vector<BigRat> out;
  for (const auto& tok : split(text, ',')) out.push_back(parse_rat(tok));
  return out;
}

Exponent parse_monomial(const std::string& text, const std::vector<std::string>& names) {
  Exponent m(static_cast<int>(names.size()));
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "1") return m;
  size_t i = 0;
  while (i < t.size()) {
    if (t[i] == '*' && i > 0) {
      ++i;
      continue;
    }
    int best = -1;
    size_t best_len = 0;
    for (size_t k = 0; k < names.size(); ++k)
      if (names[k].size() > best_len && t.compare(i, names[k].size(), names[k]) == 0) {
        best = static_cast<int>(k);
        best_len = names[k].size();
      }
    if (best < 0) throw ParseError("monomial: unknown variable", i);
    i += best_len;
    long e = 1;
    if (i < t.size() && t[i] == '^') {
      size_t st = ++i;
      while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
      if (st == i) throw ParseError("monomial: expected exponent", i);
      e = std::stol(t.substr(st, i - st));
    }
    m[best] += static_cast<int>(e);
  }
  return m;
}

std::vector<Exponent> parse_monomial_list(const std::string& text, const std::vector<std::string>& names) {
  std::vector<Exponent> out;
  for (const auto& tok : split(text, ',')) out.push_back(parse_monomial(tok, names));
  return out;
}

}  // namespace pfkit
