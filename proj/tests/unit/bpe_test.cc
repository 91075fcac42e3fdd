#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "oracles.h"
#include "typogen/bpe.h"
#include "typogen/error.h"
#include "typogen/utf8.h"

using namespace typogen;

namespace {

std::vector<std::string> repeat(std::initializer_list<std::pair<std::string, int>> words) {
  std::vector<std::string> lines;
  for (const auto& [w, n] : words)
    for (int i = 0; i < n; ++i) lines.push_back(w);
  return lines;
}

// Recounts every pair from scratch after each merge.
std::vector<BpeVocab::Merge> naive_merges(const std::vector<std::string>& corpus, std::size_t target) {
  std::map<std::vector<std::string>, int> words;
  std::set<std::string> tokens;
  for (const auto& line : corpus) {
    std::istringstream in(line);
    std::string w;
    while (in >> w) {
      std::vector<std::string> symbols;
      for (char32_t c : to_u32(w)) {
        symbols.push_back(to_utf8(c));
        tokens.insert(symbols.back());
      }
      symbols.push_back("</w>");
      ++words[symbols];
    }
  }
  std::vector<BpeVocab::Merge> merges;
  while (tokens.size() < target) {
    std::map<BpeVocab::Merge, int> counts;
    for (const auto& [s, n] : words)
      for (std::size_t j = 0; j + 1 < s.size(); ++j) counts[{s[j], s[j + 1]}] += n;
    const BpeVocab::Merge* best = nullptr;
    int best_count = 1;
    for (const auto& [pair, n] : counts)
      if (n > best_count) best = &pair, best_count = n;
    if (!best) break;
    const auto merge = *best;
    merges.push_back(merge);
    tokens.insert(merge.first + merge.second);
    std::map<std::vector<std::string>, int> next;
    for (const auto& [s, n] : words) {
      std::vector<std::string> out;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (j + 1 < s.size() && s[j] == merge.first && s[j + 1] == merge.second) {
          out.push_back(merge.first + merge.second);
          ++j;
        } else {
          out.push_back(s[j]);
        }
      }
      next[out] += n;
    }
    words = std::move(next);
  }
  return merges;
}

std::string vocab_text(const BpeVocab& v) {
  std::ostringstream out;
  save_vocab(v, out);
  return out.str();
}

}  // namespace

TEST(Bpe, HandRunMerges) {
  const auto corpus = repeat({{"low", 5}, {"lower", 2}, {"newest", 6}, {"widest", 3}});
  const auto vocab = fit_bpe(corpus, 13);
  ASSERT_GE(vocab.merges().size(), 3u);
  EXPECT_EQ(vocab.merges()[0], BpeVocab::Merge("e", "s"));
  EXPECT_EQ(vocab.merges()[1], BpeVocab::Merge("es", "t"));
  EXPECT_EQ(vocab.merges()[2], BpeVocab::Merge("est", "</w>"));
  EXPECT_EQ(vocab.alphabet().size(), 10u);
  EXPECT_EQ(vocab.token_count(), 13u);
  EXPECT_EQ(encode("newest", vocab), (std::vector<std::string>{"n", "e", "w", "est</w>"}));
}

TEST(Bpe, RepeatedCharacterMergesLeftToRight) {
  const auto vocab = fit_bpe(std::vector<std::string>{"aaaa"}, 10);
  ASSERT_EQ(vocab.merges().size(), 1u);
  EXPECT_EQ(vocab.merges()[0], BpeVocab::Merge("a", "a"));
  EXPECT_EQ(encode("aaaa", vocab), (std::vector<std::string>{"aa", "aa", "</w>"}));
  EXPECT_EQ(encode("aaa", vocab), (std::vector<std::string>{"aa", "a", "</w>"}));
}

TEST(Bpe, TargetEqualToAlphabetMeansNoMerges) {
  const auto vocab = fit_bpe(std::vector<std::string>{"abc abc abc"}, 3);
  EXPECT_TRUE(vocab.merges().empty());
  EXPECT_EQ(encode("cab", vocab), (std::vector<std::string>{"c", "a", "b", "</w>"}));
}

TEST(Bpe, RejectsDegenerateInput) {
  const std::vector<std::string> blank{"   ", ""};
  EXPECT_THROW(fit_bpe(blank, 10), Error);
  EXPECT_THROW(fit_bpe(std::vector<std::string>{"abc"}, 2), Error);
}

TEST(Bpe, MatchesNaiveRecountingOracle) {
  oracle::Gen gen{99};
  for (int round = 0; round < 40; ++round) {
    std::vector<std::string> corpus;
    const std::size_t lines = 1 + gen.below(12);
    for (std::size_t i = 0; i < lines; ++i) {
      std::u32string line;
      const std::size_t words = 1 + gen.below(4);
      for (std::size_t w = 0; w < words; ++w) line += gen.string(U"abcdé", 1, 7) + U" ";
      corpus.push_back(to_utf8(line));
    }
    const std::size_t target = 5 + gen.below(25);
    const auto vocab = fit_bpe(corpus, target);
    ASSERT_EQ(vocab.merges(), naive_merges(corpus, target)) << "round " << round;
  }
}

TEST(Bpe, EncodeDecodeRoundTrip) {
  const auto vocab = fit_bpe(std::vector<std::string>{"the quick brown fox", "jumps over the lazy dog"}, 40);
  oracle::Gen gen{5};
  for (int i = 0; i < 500; ++i) {
    const std::string text = to_utf8(gen.string(U"thequick \tbrownzЖ😀\n ", 0, 30));
    ASSERT_EQ(decode(encode(text, vocab)), text);
    if (text.find_first_of("\t\n") == std::string::npos && text.find("Ж") == std::string::npos &&
        text.find("😀") == std::string::npos)
      ASSERT_EQ(decode_ids(encode_ids(text, vocab), vocab), text);
  }
}

TEST(Bpe, IdsFollowDocumentedOrder) {
  const auto vocab = fit_bpe(std::vector<std::string>{"ab ab"}, 3);
  EXPECT_EQ(vocab.id_of("a"), 2);
  EXPECT_EQ(vocab.id_of("b"), 3);
  EXPECT_EQ(vocab.id_of("</w>"), 4);
  EXPECT_EQ(vocab.id_of("ab"), 5);
  EXPECT_EQ(vocab.token_of(kSpaceId), " ");
  EXPECT_EQ(vocab.id_of("zz"), kUnknownId);
  EXPECT_EQ(encode_ids("ab\tq", vocab), (std::vector<std::int32_t>{5, 4, kUnknownId, kUnknownId, 4}));
}

TEST(Bpe, VocabFileRoundTripAndDeterminism) {
  std::vector<std::string> corpus;
  oracle::Gen gen{17};
  for (int i = 0; i < 300; ++i) corpus.push_back(to_utf8(gen.string(U"abcdefg hij", 3, 25)));
  const auto a = fit_bpe(corpus, 60);
  const auto b = fit_bpe(corpus, 60);
  EXPECT_EQ(vocab_text(a), vocab_text(b));
  std::istringstream in(vocab_text(a));
  const auto loaded = load_vocab(in);
  EXPECT_EQ(loaded, a);
  for (const auto& line : corpus) EXPECT_EQ(encode(line, loaded), encode(line, a));

  std::istringstream bad("#typogen-bpe version=9 target_size=3 alphabet=abc\n");
  EXPECT_THROW(load_vocab(bad), Error);
}

TEST(Split, SizesAndPartition) {
  std::vector<std::string> lines;
  for (int i = 0; i < 10200; ++i) lines.push_back(std::to_string(i));
  const auto split = split_dataset(lines, 3);
  EXPECT_EQ(split.train.size(), 10000u);
  EXPECT_EQ(split.validation.size(), 100u);
  EXPECT_EQ(split.test.size(), 100u);
  std::multiset<std::string> all(split.train.begin(), split.train.end());
  all.insert(split.validation.begin(), split.validation.end());
  all.insert(split.test.begin(), split.test.end());
  EXPECT_EQ(all, std::multiset<std::string>(lines.begin(), lines.end()));

  const auto again = split_dataset(lines, 3);
  EXPECT_EQ(again.test, split.test);
  EXPECT_NE(split_dataset(lines, 4).test, split.test);
  EXPECT_TRUE(split_dataset({}, 1).train.empty());
}
