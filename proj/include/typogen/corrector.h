#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "typogen/generator.h"
#include "typogen/stats.h"

namespace typogen {

inline constexpr double kDefaultSmoothingMass = 1e-6;

/// Unigram counts over whole training lines and over their tokens.
///
/// P(q) is the relative frequency of q among training lines when q was seen
/// as a line; otherwise the product of its token probabilities, with every
/// unseen token (or an unseen empty query) weighted by `smoothing_mass`.
struct LanguageModel {
  std::unordered_map<std::string, std::uint64_t> line_counts;
  std::unordered_map<std::string, std::uint64_t> token_counts;
  std::uint64_t total_lines = 0;
  std::uint64_t total_tokens = 0;
  double smoothing_mass = kDefaultSmoothingMass;
  std::u32string alphabet;  // sorted characters seen in training lines

  std::uint64_t count(const std::string& query) const;
  double probability(const std::string& query) const;
};

/// Throws Error("empty") when the corpus has no non-blank line.
LanguageModel train(std::span<const std::string> corpus, double smoothing_mass = kDefaultSmoothingMass);

/// All strings within `max_edits` OSA edits of `input` whose new characters
/// come from `alphabet`; `input` itself is always first.
std::vector<std::u32string> candidates(std::u32string_view input, std::u32string_view alphabet,
                                       std::size_t max_edits = 1);

/// Over the model's alphabet; beyond `cap` results only the input and the
/// highest-probability candidates (ties lexicographic) are kept.
std::vector<std::string> candidates(std::string_view input, const LanguageModel& lm,
                                    std::size_t max_edits = 1, std::size_t cap = 50'000);

struct Correction {
  std::string output;
  double confidence = 0.0;
  bool corrected = false;
};

struct CorrectorConfig {
  std::size_t max_edits = 1;
  std::size_t candidate_cap = 50'000;
  // Edit-count law of the channel; mirrors GenerationConfig.
  double mean_typos_per_record = 1.0;
  std::size_t max_typos_per_record = 3;
  std::size_t min_length = 2;
};

/// Posterior summary for one input, reusable across thresholds.
struct Analysis {
  std::string input;
  std::string best;
  double best_posterior = 1.0;
  double input_posterior = 1.0;
  // Total posterior of every other candidate relative to the best one.
  double rest_ratio = 0.0;

  /// The best candidate is returned only when it differs from the input and
  /// its posterior is at least `threshold`.
  Correction decide(double threshold) const;
};

/// Scores candidate c for input t by P(c) * P(t | c). The channel mirrors the
/// realistic generator: identity has the edit-count law's P(k=0); a single
/// edit has P(k=1) * type frequency * position mass * confusion entry.
class NoisyChannelCorrector {
 public:
  NoisyChannelCorrector(LanguageModel lm, TypoStats stats, CorrectorConfig config = {});

  Analysis analyze(std::string_view input) const;
  Correction correct(std::string_view input, double threshold) const {
    return analyze(input).decide(threshold);
  }

  const LanguageModel& language_model() const { return lm_; }
  const TypoStats& stats() const { return stats_; }
  const CorrectorConfig& config() const { return config_; }

 private:
  struct Edit {
    std::u32string candidate;
    double probability;
  };

  // Single edits c -> typo, each with its channel probability excluding P(k).
  std::vector<Edit> inverse_edits(std::u32string_view typo) const;
  double replacement_probability(char32_t from, char32_t to) const;
  std::vector<double> pmf(std::size_t length) const;

  LanguageModel lm_;
  TypoStats stats_;
  CorrectorConfig config_;
  EditCountLaw law_;
  std::u32string row_keys_;
  std::vector<std::vector<double>> pmf_cache_;
};

Correction correct(std::string_view input, const NoisyChannelCorrector& corrector, double threshold);

nlohmann::json to_json(const NoisyChannelCorrector& corrector);
NoisyChannelCorrector corrector_from_json(const nlohmann::json& json);
void save_model(const NoisyChannelCorrector& corrector, const std::filesystem::path& path);
NoisyChannelCorrector load_model(const std::filesystem::path& path);

}  // namespace typogen
