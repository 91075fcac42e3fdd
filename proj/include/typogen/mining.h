#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

namespace typogen {

struct QueryLogRecord {
  std::string user_id;
  std::int64_t timestamp_ms = 0;
  std::string query;
};

/// Parses `user_id \t timestamp_ms \t query`. Returns nullopt for malformed
/// lines: wrong field count, non-numeric timestamp, invalid UTF-8, or a query
/// that is empty after trimming. The query comes back trimmed.
std::optional<QueryLogRecord> parse_log_line(std::string_view line);

struct TypoPair {
  std::string typo;
  std::string correct;

  auto operator<=>(const TypoPair&) const = default;
};

using Vocabulary = std::unordered_set<std::string>;

struct PopularityIndex {
  std::unordered_map<std::string, std::uint64_t> query_counts;
  std::unordered_map<std::string, std::uint64_t> token_counts;
  // Most frequent first; ties broken lexicographically.
  std::vector<std::string> top_tokens;
  std::unordered_set<std::string> top_token_set;

  std::uint64_t query_count(const std::string& query) const;
};

PopularityIndex build_popularity_index(std::span<const QueryLogRecord> records, std::size_t k);

/// Every whitespace token is either in the vocabulary or among the top tokens.
bool is_correct_query(std::string_view query, const Vocabulary& vocabulary,
                      const PopularityIndex& index);

struct MiningConfig {
  std::size_t window_size = 10;
  std::size_t max_edit_distance = 1;
  double popularity_ratio = 15.0;
  std::size_t top_token_count = 1500;
  std::u32string forbidden_chars = U"@_#\\";

  void validate() const;
};

// Filters, in the order judge_candidate evaluates them.
enum class MiningRule : std::uint8_t {
  ForbiddenChars,
  Prefix,
  Containment,
  EditDistance,
  Popularity,
  CorrectVocabulary,
  TypoAllKnown,
};

inline constexpr std::size_t kMiningRuleCount = 7;

std::string_view to_string(MiningRule rule);

/// nullopt means the candidate passes every filter; otherwise the first
/// failing rule.
std::optional<MiningRule> judge_candidate(std::string_view candidate_typo,
                                          std::string_view candidate_correct,
                                          const Vocabulary& vocabulary,
                                          const PopularityIndex& index,
                                          const MiningConfig& config);

struct MiningReport {
  std::uint64_t judged = 0;
  std::uint64_t accepted = 0;
  std::array<std::uint64_t, kMiningRuleCount> rejected{};
  std::uint64_t malformed_lines = 0;

  std::uint64_t rejected_by(MiningRule rule) const { return rejected[static_cast<std::size_t>(rule)]; }
  void merge(const MiningReport& other);
  nlohmann::json to_json() const;
};

struct MiningResult {
  // Deduplicated pairs with the number of times each was accepted.
  std::map<TypoPair, std::uint64_t> pairs;
  MiningReport report;

  void merge(const MiningResult& other);
};

/// Windows each user's queries (ordered by timestamp, stable on ties) and
/// judges every pair within `window_size` subsequent queries in both
/// orientations. Identical query strings are not candidates.
MiningResult mine_pairs(std::span<const QueryLogRecord> records, const Vocabulary& vocabulary,
                        const MiningConfig& config);

/// Same, against a popularity index built over the whole log; lets callers
/// mine per-user shards independently and merge the results.
MiningResult mine_pairs(std::span<const QueryLogRecord> records, const Vocabulary& vocabulary,
                        const PopularityIndex& index, const MiningConfig& config);

}  // namespace typogen
