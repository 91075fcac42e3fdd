#include "typogen/mining.h"

#include <algorithm>
#include <charconv>

#include "typogen/editdist.h"
#include "typogen/error.h"
#include "typogen/utf8.h"

namespace typogen {

std::optional<QueryLogRecord> parse_log_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto first = line.find('\t');
  if (first == std::string_view::npos) return std::nullopt;
  const auto second = line.find('\t', first + 1);
  if (second == std::string_view::npos) return std::nullopt;
  const std::string_view rest = line.substr(second + 1);
  if (rest.find('\t') != std::string_view::npos) return std::nullopt;

  QueryLogRecord record;
  record.user_id = std::string(line.substr(0, first));
  if (record.user_id.empty()) return std::nullopt;
  const std::string_view stamp = line.substr(first + 1, second - first - 1);
  auto [end, ec] = std::from_chars(stamp.data(), stamp.data() + stamp.size(), record.timestamp_ms);
  if (ec != std::errc() || end != stamp.data() + stamp.size()) return std::nullopt;
  if (!is_valid_utf8(rest)) return std::nullopt;
  record.query = trim(rest);
  if (record.query.empty()) return std::nullopt;
  return record;
}

std::uint64_t PopularityIndex::query_count(const std::string& query) const {
  auto it = query_counts.find(query);
  return it == query_counts.end() ? 0 : it->second;
}

PopularityIndex build_popularity_index(std::span<const QueryLogRecord> records, std::size_t k) {
  PopularityIndex index;
  for (const auto& record : records) {
    ++index.query_counts[record.query];
    for (auto& token : split_tokens(record.query)) ++index.token_counts[token];
  }
  std::vector<std::pair<std::string, std::uint64_t>> ranked(index.token_counts.begin(),
                                                             index.token_counts.end());
  const std::size_t keep = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                    [](const auto& a, const auto& b) {
                      return a.second != b.second ? a.second > b.second : a.first < b.first;
                    });
  for (std::size_t i = 0; i < keep; ++i) {
    index.top_tokens.push_back(ranked[i].first);
    index.top_token_set.insert(ranked[i].first);
  }
  return index;
}

bool is_correct_query(std::string_view query, const Vocabulary& vocabulary,
                      const PopularityIndex& index) {
  const auto tokens = split_tokens(query);
  if (tokens.empty()) return false;
  return std::all_of(tokens.begin(), tokens.end(), [&](const std::string& token) {
    return vocabulary.contains(token) || index.top_token_set.contains(token);
  });
}

void MiningConfig::validate() const {
  if (window_size < 2) throw Error("config", "window_size must be at least 2");
  if (!(popularity_ratio > 1.0)) throw Error("config", "popularity_ratio must exceed 1");
  if (max_edit_distance < 1) throw Error("config", "max_edit_distance must be at least 1");
}

std::string_view to_string(MiningRule rule) {
  switch (rule) {
    case MiningRule::ForbiddenChars:
      return "forbidden_chars";
    case MiningRule::Prefix:
      return "prefix";
    case MiningRule::Containment:
      return "containment";
    case MiningRule::EditDistance:
      return "edit_distance";
    case MiningRule::Popularity:
      return "popularity";
    case MiningRule::CorrectVocabulary:
      return "correct_vocabulary";
    case MiningRule::TypoAllKnown:
      return "typo_all_known";
  }
  return "unknown";
}

namespace {

bool has_forbidden(std::u32string_view text, std::u32string_view forbidden) {
  return text.find_first_of(forbidden) != std::u32string_view::npos;
}

}  // namespace

std::optional<MiningRule> judge_candidate(std::string_view candidate_typo,
                                          std::string_view candidate_correct,
                                          const Vocabulary& vocabulary,
                                          const PopularityIndex& index,
                                          const MiningConfig& config) {
  const std::u32string typo = to_u32(candidate_typo);
  const std::u32string correct = to_u32(candidate_correct);

  if (has_forbidden(typo, config.forbidden_chars) || has_forbidden(correct, config.forbidden_chars))
    return MiningRule::ForbiddenChars;
  if (correct.starts_with(typo)) return MiningRule::Prefix;
  if (typo.find(correct) != std::u32string::npos) return MiningRule::Containment;

  const std::size_t distance = damerau_levenshtein(typo, correct);
  if (distance == 0 || distance > config.max_edit_distance) return MiningRule::EditDistance;

  const std::uint64_t typo_count = std::max<std::uint64_t>(index.query_count(std::string(candidate_typo)), 1);
  const std::uint64_t correct_count = index.query_count(std::string(candidate_correct));
  if (static_cast<double>(correct_count) < config.popularity_ratio * static_cast<double>(typo_count))
    return MiningRule::Popularity;

  if (!is_correct_query(candidate_correct, vocabulary, index)) return MiningRule::CorrectVocabulary;
  // "Known" here means the verified vocabulary only: counting popular log
  // tokens as known would discard any typo frequent enough to rank.
  const auto typo_tokens = split_tokens(candidate_typo);
  if (std::all_of(typo_tokens.begin(), typo_tokens.end(), [&](const auto& t) { return vocabulary.contains(t); }))
    return MiningRule::TypoAllKnown;
  return std::nullopt;
}

void MiningReport::merge(const MiningReport& other) {
  judged += other.judged;
  accepted += other.accepted;
  for (std::size_t i = 0; i < kMiningRuleCount; ++i) rejected[i] += other.rejected[i];
  malformed_lines += other.malformed_lines;
}

nlohmann::json MiningReport::to_json() const {
  nlohmann::json by_rule = nlohmann::json::object();
  for (std::size_t i = 0; i < kMiningRuleCount; ++i)
    by_rule[std::string(to_string(static_cast<MiningRule>(i)))] = rejected[i];
  return {{"judged", judged},
          {"accepted", accepted},
          {"rejected_by_rule", by_rule},
          {"malformed_lines", malformed_lines}};
}

void MiningResult::merge(const MiningResult& other) {
  for (const auto& [pair, count] : other.pairs) pairs[pair] += count;
  report.merge(other.report);
}

MiningResult mine_pairs(std::span<const QueryLogRecord> records, const Vocabulary& vocabulary,
                        const MiningConfig& config) {
  const PopularityIndex index = build_popularity_index(records, config.top_token_count);
  return mine_pairs(records, vocabulary, index, config);
}

MiningResult mine_pairs(std::span<const QueryLogRecord> records, const Vocabulary& vocabulary,
                        const PopularityIndex& index, const MiningConfig& config) {
  config.validate();

  std::map<std::string, std::vector<const QueryLogRecord*>> by_user;
  for (const auto& record : records) by_user[record.user_id].push_back(&record);

  MiningResult result;
  auto judge = [&](const std::string& typo, const std::string& correct) {
    ++result.report.judged;
    if (auto rule = judge_candidate(typo, correct, vocabulary, index, config)) {
      ++result.report.rejected[static_cast<std::size_t>(*rule)];
    } else {
      ++result.report.accepted;
      ++result.pairs[TypoPair{typo, correct}];
    }
  };

  for (auto& [user, stream] : by_user) {
    std::stable_sort(stream.begin(), stream.end(), [](const auto* a, const auto* b) {
      return a->timestamp_ms < b->timestamp_ms;
    });
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const std::size_t end = std::min(stream.size(), i + config.window_size);
      for (std::size_t j = i + 1; j < end; ++j) {
        const std::string& earlier = stream[i]->query;
        const std::string& later = stream[j]->query;
        if (earlier == later) continue;
        judge(earlier, later);
        judge(later, earlier);
      }
    }
  }
  return result;
}

}  // namespace typogen
