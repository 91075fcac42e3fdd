#include <gtest/gtest.h>

#include "oracles.h"
#include "typogen/editdist.h"
#include "typogen/error.h"
#include "typogen/utf8.h"

using namespace typogen;

TEST(DamerauLevenshtein, KnownValues) {
  EXPECT_EQ(damerau_levenshtein("jack", "jack"), 0u);
  EXPECT_EQ(damerau_levenshtein("jack", "jakc"), 1u);
  EXPECT_EQ(damerau_levenshtein("ab", "ba"), 1u);
  EXPECT_EQ(damerau_levenshtein("abc", "ca"), 3u);
  EXPECT_EQ(damerau_levenshtein("", ""), 0u);
  EXPECT_EQ(damerau_levenshtein("", "abc"), 3u);
  EXPECT_EQ(damerau_levenshtein("kitten", "sitting"), 3u);
}

TEST(DamerauLevenshtein, CountsCharactersNotBytes) {
  EXPECT_EQ(damerau_levenshtein("привет", "пирвет"), 1u);
  EXPECT_EQ(damerau_levenshtein("αβγ", "αγ"), 1u);
  EXPECT_EQ(damerau_levenshtein("é", "e"), 1u);
}

TEST(DamerauLevenshtein, MatchesRecurrenceOracle) {
  oracle::Gen gen{1};
  const std::u32string alphabet = U"abcй";
  for (int i = 0; i < 3000; ++i) {
    auto a = gen.string(alphabet, 0, 7);
    auto b = gen.string(alphabet, 0, 7);
    ASSERT_EQ(damerau_levenshtein(a, b), oracle::osa(a, b)) << to_utf8(a) << " / " << to_utf8(b);
  }
}

TEST(DamerauLevenshtein, MetricLikeProperties) {
  oracle::Gen gen{2};
  const std::u32string alphabet = U"abcdxy";
  for (int i = 0; i < 2000; ++i) {
    auto a = gen.string(alphabet, 0, 10);
    auto b = gen.string(alphabet, 0, 10);
    EXPECT_EQ(damerau_levenshtein(a, a), 0u);
    EXPECT_EQ(damerau_levenshtein(a, b), damerau_levenshtein(b, a));
    EXPECT_LE(damerau_levenshtein(a, b), std::max(a.size(), b.size()));
  }
}

TEST(DamerauLevenshtein, SingleEditsAreAtMostOneAway) {
  oracle::Gen gen{3};
  const std::u32string alphabet = U"abcde";
  for (int i = 0; i < 300; ++i) {
    auto s = gen.string(alphabet, 2, 8);
    for (const auto& e : oracle::single_edits(s, alphabet)) ASSERT_EQ(damerau_levenshtein(s, e.result), 1u);
  }
}

TEST(ClassifySingleEdit, Examples) {
  auto del = classify_single_edit(U"hello", U"helo");
  EXPECT_EQ(del.kind, EditKind::Deletion);
  EXPECT_EQ(del.position, 2u);
  EXPECT_EQ(del.chars, U"l");

  auto trans = classify_single_edit(U"form", U"from");
  EXPECT_EQ(trans.kind, EditKind::Transposition);
  EXPECT_EQ(trans.position, 1u);
  EXPECT_EQ(trans.chars, U"or");

  auto sub = classify_single_edit(U"abc", U"xbc");
  EXPECT_EQ(sub.kind, EditKind::Substitution);
  EXPECT_EQ(sub.position, 0u);
  EXPECT_EQ(sub.chars, U"ax");
}

TEST(ClassifySingleEdit, DoubledLetterInsertionUsesLeftmostSlot) {
  // Inserting 'c' before index 2 or 3 of "jack" both give "jacck"; the
  // leftmost valid slot is reported.
  auto ins = classify_single_edit(U"jack", U"jacck");
  EXPECT_EQ(ins.kind, EditKind::Insertion);
  EXPECT_EQ(ins.position, 2u);
  EXPECT_EQ(ins.chars, U"c");
}

TEST(ClassifySingleEdit, InsertionAtEnd) {
  auto ins = classify_single_edit(U"cat", U"cats");
  EXPECT_EQ(ins.kind, EditKind::Insertion);
  EXPECT_EQ(ins.position, 3u);
}

TEST(ClassifySingleEdit, RejectsOtherDistances) {
  EXPECT_THROW(classify_single_edit(U"jack", U"jack"), Error);
  EXPECT_THROW(classify_single_edit(U"jack", U"jcka"), Error);
  EXPECT_THROW(classify_single_edit(U"abc", U"ca"), Error);
}

TEST(ClassifySingleEdit, AgreesWithEnumerationOracle) {
  // For every single edit of a random string, the classification must
  // replay exactly and report the leftmost position among all enumerated
  // edits of that kind producing the same typo.
  oracle::Gen gen{4};
  const std::u32string alphabet = U"abcé";
  for (int i = 0; i < 300; ++i) {
    auto s = gen.string(alphabet, 1, 7);
    auto edits = oracle::single_edits(s, alphabet);
    for (const auto& e : edits) {
      const auto c = classify_single_edit(s, e.result);
      ASSERT_EQ(apply_edit(s, c), e.result);
      std::size_t leftmost = SIZE_MAX;
      for (const auto& other : edits)
        if (other.result == e.result && other.kind == static_cast<int>(c.kind))
          leftmost = std::min(leftmost, other.position);
      ASSERT_EQ(c.position, leftmost) << to_utf8(s) << " -> " << to_utf8(e.result);
    }
  }
}

TEST(ClassifySingleEdit, EqualNeighbourSwapIsNotATypo) {
  EXPECT_THROW(classify_single_edit(U"aab", U"aab"), Error);
}

TEST(FirstDivergence, Examples) {
  EXPECT_EQ(first_divergence_position(U"jessica", U"jessicca"), 6u);
  EXPECT_EQ(first_divergence_position(U"abc", U"xbc"), 0u);
  EXPECT_EQ(first_divergence_position(U"cat", U"cats"), 3u);
  EXPECT_THROW(first_divergence_position(U"same", U"same"), Error);
}

TEST(FirstDivergence, MatchesScan) {
  oracle::Gen gen{5};
  for (int i = 0; i < 2000; ++i) {
    auto a = gen.string(U"ab", 0, 6);
    auto b = gen.string(U"ab", 0, 6);
    if (a == b) continue;
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    ASSERT_EQ(first_divergence_position(a, b), k);
  }
}

TEST(EditKind, NamesRoundTrip) {
  for (EditKind k : kEditKinds) EXPECT_EQ(parse_edit_kind(to_string(k)), k);
  EXPECT_FALSE(parse_edit_kind("swap").has_value());
}

TEST(ApplyEdit, RejectsMisfits) {
  EXPECT_THROW(apply_edit(U"ab", {EditKind::Deletion, 5, U"a"}), Error);
  EXPECT_THROW(apply_edit(U"ab", {EditKind::Transposition, 1, U"ba"}), Error);
}

TEST(DamerauLevenshtein, RestrictedNeverBelowUnrestricted) {
  oracle::Gen gen{6};
  for (int i = 0; i < 2000; ++i) {
    auto a = gen.string(U"abc", 0, 6);
    auto b = gen.string(U"abc", 0, 6);
    ASSERT_GE(damerau_levenshtein(a, b), oracle::full_dl(a, b));
  }
  EXPECT_EQ(oracle::full_dl(U"abc", U"ca"), 2u);
}
