#pragma once

#include <filesystem>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "typogen/corrector.h"
#include "typogen/mining.h"

namespace typogen {

struct CurvePoint {
  double threshold = 0.0;
  double correction_rate = 0.0;
};

struct EvalReport {
  double typo_accuracy = 0.0;
  double identity_accuracy = 0.0;
  std::size_t n_typos = 0;
  std::size_t n_identity = 0;
  std::vector<CurvePoint> curve;
};

/// Exact-match fraction after NFC. Throws Error("length") on mismatched
/// sizes and Error("empty") on empty input.
double sequence_accuracy(std::span<const std::string> predictions, std::span<const std::string> references);

using CorrectFn = std::function<std::string(std::string_view)>;
using ThresholdedFn = std::function<Correction(std::string_view, double)>;

/// Typo accuracy over <typo, correct> and identity accuracy over
/// <correct, correct>, both on the full pair list.
EvalReport evaluate(const CorrectFn& correct_fn, std::span<const TypoPair> pairs);

/// Thresholds 0.0, 0.1, ..., 1.0.
std::vector<double> default_thresholds();

/// Fraction of queries corrected at each threshold. Throws Error("thresholds")
/// unless thresholds are sorted ascending.
std::vector<CurvePoint> correction_rate_curve(const ThresholdedFn& correct_fn_at,
                                              std::span<const std::string> queries,
                                              std::span<const double> thresholds);

/// Same result, analysing every query once.
std::vector<CurvePoint> correction_rate_curve(const NoisyChannelCorrector& corrector,
                                              std::span<const std::string> queries,
                                              std::span<const double> thresholds);

nlohmann::json to_json(const EvalReport& report);

/// Rows Typos and Identity, one percentage column per model.
std::string format_table(std::span<const std::pair<std::string, EvalReport>> models);

std::string curve_csv(std::span<const CurvePoint> curve);

enum class PairFormat { Tsv, Birkbeck, Wikipedia };

PairFormat parse_pair_format(std::string_view name);

/// `tsv`: typo<TAB>correct. `birkbeck`: a `$correct` line followed by its
/// misspellings. `wikipedia`: typo->correct[, alternatives], first kept.
/// Blank and `#` lines are skipped; others that do not parse throw
/// Error("pairs") with the line number.
std::vector<TypoPair> read_pairs(std::istream& in, PairFormat format);
std::vector<TypoPair> load_pairs(const std::filesystem::path& path, PairFormat format = PairFormat::Tsv);

/// input<TAB>prediction[<TAB>...] lines written by an external model.
std::unordered_map<std::string, std::string> read_predictions(std::istream& in);
std::unordered_map<std::string, std::string> load_predictions(const std::filesystem::path& path);

}  // namespace typogen
