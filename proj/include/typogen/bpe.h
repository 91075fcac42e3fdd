#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace typogen {

/// Appended to every word while fitting; a token ending in it closes a word.
inline constexpr std::string_view kEndOfWord = "</w>";
inline constexpr int kBpeFormatVersion = 1;

/// Byte-pair-encoding vocabulary over Unicode characters.
///
/// Token ids, as consumed by downstream trainers: 0 is the unknown token,
/// 1 a single space, then the alphabet in order, then the end-of-word marker,
/// then each distinct merge result in merge order.
class BpeVocab {
 public:
  using Merge = std::pair<std::string, std::string>;

  BpeVocab() = default;
  BpeVocab(std::vector<std::string> alphabet, std::vector<Merge> merges, std::size_t target_size);

  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<Merge>& merges() const { return merges_; }
  std::size_t target_size() const { return target_size_; }

  /// Subword units: every alphabet character plus every merge result; the
  /// end-of-word marker alone is not counted.
  std::size_t token_count() const { return token_count_; }
  bool contains(std::string_view token) const;

  /// Rank of a merge, or -1.
  int merge_rank(std::string_view left, std::string_view right) const;

  std::int32_t id_of(std::string_view token) const;
  const std::string& token_of(std::int32_t id) const;
  std::size_t id_count() const { return id_to_token_.size(); }

  bool operator==(const BpeVocab& other) const {
    return alphabet_ == other.alphabet_ && merges_ == other.merges_ && target_size_ == other.target_size_;
  }

 private:
  std::vector<std::string> alphabet_;
  std::vector<Merge> merges_;
  std::size_t target_size_ = 0;
  std::size_t token_count_ = 0;
  std::unordered_map<std::string, int> ranks_;
  std::unordered_map<std::string, std::int32_t> token_to_id_;
  std::vector<std::string> id_to_token_;
};

inline constexpr std::int32_t kUnknownId = 0;
inline constexpr std::int32_t kSpaceId = 1;

/// Greedy most-frequent-pair merging over the whitespace-separated words of
/// `corpus` until the vocabulary holds `target_size` tokens or no pair occurs
/// twice. Ties go to the lexicographically smallest (left, right).
/// Throws Error("bpe") on an empty corpus or a target below the alphabet size.
BpeVocab fit_bpe(std::span<const std::string> corpus, std::size_t target_size);

/// Whitespace runs pass through as single tokens; characters unseen at fit
/// time stay single-character tokens.
std::vector<std::string> encode(std::string_view text, const BpeVocab& vocab);
std::string decode(std::span<const std::string> tokens);

/// Whitespace other than ' ' and unseen characters map to kUnknownId.
std::vector<std::int32_t> encode_ids(std::string_view text, const BpeVocab& vocab);
std::string decode_ids(std::span<const std::int32_t> ids, const BpeVocab& vocab);

/// Header line `#typogen-bpe version=1 target_size=N alphabet=<chars>`, then
/// one `left right` merge per line.
void save_vocab(const BpeVocab& vocab, std::ostream& out);
void save_vocab(const BpeVocab& vocab, const std::filesystem::path& path);
BpeVocab load_vocab(std::istream& in);
BpeVocab load_vocab(const std::filesystem::path& path);

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
};

/// Seeded shuffle, then 100:1:1 (validation and test each round(n / 102)).
DatasetSplit split_dataset(std::vector<std::string> lines, std::uint64_t seed);

}  // namespace typogen
