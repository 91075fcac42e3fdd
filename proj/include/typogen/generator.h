#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "typogen/editdist.h"
#include "typogen/random.h"
#include "typogen/stats.h"

namespace typogen {

enum class GenerationMode : std::uint8_t { Realistic, Uniform };

inline constexpr std::u32string_view kEnglishLetters =
    U"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

struct GenerationConfig {
  GenerationMode mode = GenerationMode::Realistic;
  double mean_typos_per_record = 1.0;
  std::size_t max_typos_per_record = 3;
  std::uint64_t seed = kDefaultSeed;
  std::u32string uniform_alphabet{kEnglishLetters};
  std::size_t min_length = 2;

  /// Throws Error("config") on a non-positive mean, zero max or (in uniform
  /// mode) an empty alphabet.
  void validate() const;
};

/// Edits in the order they were applied; each position refers to the string
/// as it was before that edit.
using EditLog = std::vector<EditClassification>;

std::u32string replay(std::u32string_view input, const EditLog& log);

/// Number of edits per record: Poisson truncated to [0, max].
///
/// The rate is calibrated so the truncated law has the requested mean (for
/// mean 1 and max 3 the rate is about 1.08), because plain Poisson(1) cut at
/// 3 only averages 0.94 edits. When the mean is not reachable below `max`
/// the requested mean is used as the rate directly.
class EditCountLaw {
 public:
  EditCountLaw(double mean, std::size_t max);

  double rate() const { return rate_; }
  std::size_t max() const { return pmf_.size() - 1; }
  double probability(std::size_t k) const { return k < pmf_.size() ? pmf_[k] : 0.0; }
  double mean() const;
  std::size_t sample(Rng& rng) const { return rng.pick(cumulative_); }

 private:
  double rate_;
  std::vector<double> pmf_;
  std::vector<double> cumulative_;
};

std::size_t sample_edit_count(const GenerationConfig& config, Rng& rng);

struct GeneratedTypo {
  std::u32string text;
  EditLog log;
};

/// Samplers precomputed from a TypoStats for repeated generation.
class RealisticTypoModel {
 public:
  explicit RealisticTypoModel(const TypoStats& stats);

  /// One stats-driven edit; strings shorter than `min_length` come back
  /// unchanged with an empty log.
  GeneratedTypo generate(std::u32string_view input, Rng& rng, std::size_t min_length = 2) const;

  const TypoStats& stats() const { return stats_; }

 private:
  struct Row {
    std::u32string targets;
    std::vector<double> cumulative;
  };

  char32_t replacement_for(char32_t c, Rng& rng) const;
  std::size_t sample_position(std::size_t length, Rng& rng) const;

  TypoStats stats_;
  std::vector<double> kind_cumulative_;
  std::unordered_map<char32_t, Row> rows_;
  std::u32string row_keys_;
  std::vector<std::vector<double>> position_cumulative_;  // by length, short strings only
};

GeneratedTypo generate_typo(std::u32string_view input, const TypoStats& stats, Rng& rng,
                            std::size_t min_length = 2);

/// Baseline noise: kind, position and character all uniform.
GeneratedTypo uniform_typo(std::u32string_view input, const GenerationConfig& config, Rng& rng);

struct GeneratedPair {
  std::string typo;
  std::string correct;
  EditLog log;
  std::size_t sampled_edits = 0;
};

/// Corrupts records line by line. Record i uses its own RNG seeded with
/// mix_seed(config.seed, i), so output does not depend on batching.
class TypoGenerator {
 public:
  /// Realistic mode requires `stats`.
  TypoGenerator(GenerationConfig config, std::optional<TypoStats> stats);

  GeneratedPair corrupt_line(std::string_view line, std::uint64_t line_index) const;

  const GenerationConfig& config() const { return config_; }
  const EditCountLaw& law() const { return law_; }

 private:
  GenerationConfig config_;
  EditCountLaw law_;
  std::optional<RealisticTypoModel> model_;
};

std::vector<GeneratedPair> corrupt_corpus(std::span<const std::string> lines,
                                          const std::optional<TypoStats>& stats,
                                          const GenerationConfig& config);

/// Streaming variant; throws Error("io") carrying the failing line number when
/// the stream breaks or a line is not valid UTF-8.
std::size_t corrupt_corpus(std::istream& lines, const TypoGenerator& generator,
                           const std::function<void(const GeneratedPair&)>& emit);

}  // namespace typogen
