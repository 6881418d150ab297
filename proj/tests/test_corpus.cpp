#include <gtest/gtest.h>

#include <set>

#include "pfkit/corpus.hpp"
#include "pfkit/verify.hpp"

using namespace pfkit;

TEST(Corpus, ParsesSectionsAndFields) {
  auto es = parse_corpus("# c\n[A:1]\npoly = x1^2+x2^2\n u = 1 \n\n[A:2]\npoly=x1^3\n", "t");
  ASSERT_EQ(es.size(), 2u);
  EXPECT_EQ(es[0].id, "A:1");
  EXPECT_EQ(es[0].get("u"), "1");
  EXPECT_EQ(es[1].get("poly"), "x1^3");
  EXPECT_EQ(es[1].line, 6);
}

TEST(Corpus, RejectsMalformedInput) {
  EXPECT_THROW(parse_corpus("[A]\n[A]\n", "t"), CorpusError);
  EXPECT_THROW(parse_corpus("[A]\nu=1\nu=2\n", "t"), CorpusError);
  EXPECT_THROW(parse_corpus("u=1\n", "t"), CorpusError);
  EXPECT_THROW(parse_corpus("[A]\nnonsense\n", "t"), CorpusError);
}

TEST(Corpus, GlobMatching) {
  EXPECT_TRUE(glob_match("ASD:*", "ASD:E12"));
  EXPECT_TRUE(glob_match("YON:3?", "YON:35"));
  EXPECT_FALSE(glob_match("YON:3?", "YON:3"));
  EXPECT_TRUE(glob_match("*", ""));
  EXPECT_FALSE(glob_match("ELL:*", "ASD:E12"));
}

TEST(Corpus, BuiltinHasExpectedSizes) {
  const auto& all = builtin_corpus();
  EXPECT_EQ(filter_corpus(all, {"ASD:*"}).size(), 14u);
  EXPECT_EQ(filter_corpus(all, {"ELL:*"}).size(), 3u);
  EXPECT_GE(filter_corpus(all, {"YON:*"}).size(), 48u);
  std::set<std::string> ids;
  for (const auto& e : all) EXPECT_TRUE(ids.insert(e.id).second) << e.id;
}

TEST(Corpus, MonomialParsing) {
  std::vector<std::string> wxyz{"w", "x", "y", "z"};
  EXPECT_EQ(parse_monomial("w^36x", wxyz), (Exponent{36, 1, 0, 0}));
  EXPECT_EQ(parse_monomial("w^2x^2y^2z", wxyz), (Exponent{2, 2, 2, 1}));
  EXPECT_EQ(parse_monomial("1", wxyz), (Exponent{0, 0, 0, 0}));
  std::vector<std::string> xs{"x1", "x2", "x3", "x10"};
  EXPECT_EQ(parse_monomial("x10^2*x1", xs), (Exponent{1, 0, 0, 2}));
  EXPECT_THROW(parse_monomial("q", wxyz), ParseError);
}

TEST(Corpus, EveryEntryVerifies) {
  const auto& all = builtin_corpus();
  auto reports = verify_serial(all, all, VerifyOptions());
  for (const auto& r : reports) {
    EXPECT_TRUE(r.ok()) << r.id;
    for (const auto& c : r.checks)
      if (c.status == CheckStatus::Fail) ADD_FAILURE() << r.id << " " << c.name << ": " << c.detail;
  }
}

TEST(Corpus, ParallelMatchesSerial) {
  const auto& all = builtin_corpus();
  auto a = verify_serial(all, all, VerifyOptions());
  auto b = verify_parallel(all, all, VerifyOptions());
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    ASSERT_EQ(a[i].checks.size(), b[i].checks.size());
    for (size_t k = 0; k < a[i].checks.size(); ++k) {
      EXPECT_EQ(a[i].checks[k].status, b[i].checks[k].status);
      EXPECT_EQ(a[i].checks[k].detail, b[i].checks[k].detail);
    }
  }
}
