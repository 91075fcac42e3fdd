#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "typogen/editdist.h"
#include "typogen/mining.h"

namespace typogen {

inline constexpr std::size_t kPercentiles = 100;
inline constexpr int kStatsFormatVersion = 1;
inline constexpr int kStatsExtractionVersion = 1;

// confusion[source][replacement]: probability that `source` is mistyped as
// `replacement`. Rows never contain their own key.
using ConfusionMatrix = std::map<char32_t, std::map<char32_t, double>>;

/// Distilled human-error model.
struct TypoStats {
  std::array<double, 4> type_freq{};  // indexed by index_of(EditKind)
  ConfusionMatrix confusion;
  // position_cdf[p]: probability that a typo falls within the first (p+1)% of
  // the string.
  std::array<double, kPercentiles> position_cdf{};
  std::uint64_t sample_count = 0;

  double type_probability(EditKind kind) const { return type_freq[index_of(kind)]; }
  double confusion_probability(char32_t from, char32_t to) const;

  /// Throws Error("invalid_stats") unless every distribution is well formed.
  void validate() const;
};

/// Raw counts behind a TypoStats; shards merge by addition.
struct StatsCounts {
  int version = kStatsExtractionVersion;
  std::array<std::uint64_t, 4> kind_counts{};
  std::map<char32_t, std::map<char32_t, std::uint64_t>> substitutions;
  std::array<std::uint64_t, kPercentiles> position_bins{};
  std::uint64_t sample_count = 0;

  /// Throws Error("distance") unless the pair is exactly one edit apart.
  void add(std::u32string_view correct, std::u32string_view typo);
  void add(const TypoPair& pair);

  bool operator==(const StatsCounts&) const = default;
};

/// Percentile bin of a first-divergence position: floor(position / length *
/// 100), the normalized position clamped below 1.
std::size_t position_bin(std::size_t position, std::size_t correct_length);

StatsCounts count_pairs(std::span<const TypoPair> pairs);

/// Commutative, associative; throws Error("version") on mismatched versions.
StatsCounts merge_stats(const StatsCounts& a, const StatsCounts& b);

/// Throws Error("empty") when no pairs were counted.
TypoStats normalize(const StatsCounts& counts);

TypoStats extract_stats(std::span<const TypoPair> pairs);

/// Per-character typo probability for a string of `length` characters:
/// entry i is the CDF mass over (i/length, (i+1)/length], with the CDF
/// linearly interpolated inside each percentile.
std::vector<double> position_pmf_for_length(const TypoStats& stats, std::size_t length);

/// Mean of the normalized position distribution described by position_cdf.
double mean_normalized_position(const TypoStats& stats);

/// Equiprobable kinds and positions; each confusion row uniform over the
/// other characters of `alphabet`.
TypoStats uniform_stats(std::u32string_view alphabet);

nlohmann::json to_json(const TypoStats& stats);
TypoStats stats_from_json(const nlohmann::json& json);
TypoStats load_stats(const std::filesystem::path& path);
void save_stats(const TypoStats& stats, const std::filesystem::path& path);

nlohmann::json to_json(const StatsCounts& counts);
StatsCounts counts_from_json(const nlohmann::json& json);

}  // namespace typogen
