#include "typogen/generator.h"

#include <cmath>

#include "typogen/error.h"
#include "typogen/utf8.h"

namespace typogen {

void GenerationConfig::validate() const {
  if (!(mean_typos_per_record > 0.0) || !std::isfinite(mean_typos_per_record))
    throw Error("config", "mean_typos_per_record must be positive");
  if (max_typos_per_record < 1) throw Error("config", "max_typos_per_record must be at least 1");
  if (mode == GenerationMode::Uniform && uniform_alphabet.empty())
    throw Error("config", "uniform generation needs a non-empty alphabet");
}

std::u32string replay(std::u32string_view input, const EditLog& log) {
  std::u32string text(input);
  for (const auto& edit : log) text = apply_edit(text, edit);
  return text;
}

namespace {

std::vector<double> truncated_poisson(double rate, std::size_t max) {
  std::vector<double> pmf(max + 1);
  double term = 1.0;
  double total = 0.0;
  for (std::size_t k = 0; k <= max; ++k) {
    if (k > 0) term *= rate / static_cast<double>(k);
    pmf[k] = term;
    total += term;
  }
  for (double& p : pmf) p /= total;
  return pmf;
}

double mean_of(const std::vector<double>& pmf) {
  double mean = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) mean += static_cast<double>(k) * pmf[k];
  return mean;
}

}  // namespace

EditCountLaw::EditCountLaw(double mean, std::size_t max) : rate_(mean) {
  if (!(mean > 0.0)) throw Error("config", "mean edit count must be positive");
  if (max < 1) throw Error("config", "max edit count must be at least 1");
  if (mean < static_cast<double>(max)) {
    // The truncated mean increases monotonically with the rate.
    double lo = 0.0;
    double hi = std::max(1.0, mean);
    while (mean_of(truncated_poisson(hi, max)) < mean) hi *= 2.0;
    for (int iteration = 0; iteration < 200; ++iteration) {
      const double mid = 0.5 * (lo + hi);
      (mean_of(truncated_poisson(mid, max)) < mean ? lo : hi) = mid;
    }
    rate_ = 0.5 * (lo + hi);
  }
  pmf_ = truncated_poisson(rate_, max);
  cumulative_.resize(pmf_.size());
  double running = 0.0;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    running += pmf_[k];
    cumulative_[k] = running;
  }
}

double EditCountLaw::mean() const { return mean_of(pmf_); }

std::size_t sample_edit_count(const GenerationConfig& config, Rng& rng) {
  return EditCountLaw(config.mean_typos_per_record, config.max_typos_per_record).sample(rng);
}

namespace {

std::vector<double> cumulative_of(std::span<const double> weights) {
  std::vector<double> out(weights.size());
  double running = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    running += weights[i];
    out[i] = running;
  }
  return out;
}

}  // namespace

RealisticTypoModel::RealisticTypoModel(const TypoStats& stats) : stats_(stats) {
  stats_.validate();
  kind_cumulative_ = cumulative_of(stats_.type_freq);
  position_cumulative_.emplace_back();
  for (std::size_t length = 1; length <= 64; ++length)
    position_cumulative_.push_back(cumulative_of(position_pmf_for_length(stats_, length)));
  for (const auto& [from, row] : stats_.confusion) {
    Row sampler;
    std::vector<double> weights;
    for (const auto& [to, p] : row) {
      sampler.targets.push_back(to);
      weights.push_back(p);
    }
    sampler.cumulative = cumulative_of(weights);
    rows_.emplace(from, std::move(sampler));
    row_keys_.push_back(from);
  }
}

char32_t RealisticTypoModel::replacement_for(char32_t c, Rng& rng) const {
  if (auto it = rows_.find(c); it != rows_.end())
    return it->second.targets[rng.pick(it->second.cumulative)];
  // No row for c: uniform over the characters that do have rows.
  const bool has_self = row_keys_.find(c) != std::u32string::npos;
  const std::size_t choices = row_keys_.size() - (has_self ? 1 : 0);
  if (choices == 0) return 0;
  std::size_t pick = rng.below(choices);
  for (char32_t key : row_keys_) {
    if (key == c) continue;
    if (pick-- == 0) return key;
  }
  return 0;
}

std::size_t RealisticTypoModel::sample_position(std::size_t length, Rng& rng) const {
  if (length < position_cumulative_.size()) return rng.pick(position_cumulative_[length]);
  return rng.pick(cumulative_of(position_pmf_for_length(stats_, length)));
}

GeneratedTypo RealisticTypoModel::generate(std::u32string_view input, Rng& rng,
                                           std::size_t min_length) const {
  const std::size_t length = input.size();
  if (length < std::max<std::size_t>(min_length, 1)) return {std::u32string(input), {}};

  EditKind kind = kEditKinds[rng.pick(kind_cumulative_)];
  std::size_t p = sample_position(length, rng);

  if (kind == EditKind::Transposition) {
    // Draw from the position law restricted to positions with a distinct
    // right neighbour, so realized kinds keep type_freq. Strings without
    // such a position (e.g. "aaa") get a substitution at p instead.
    std::vector<double> cumulative(length, 0.0);
    double previous = 0.0, running = 0.0;
    const bool cached = length < position_cumulative_.size();
    const std::vector<double> pmf = cached ? std::vector<double>{} : position_pmf_for_length(stats_, length);
    for (std::size_t i = 0; i < length; ++i) {
      const double mass = cached ? position_cumulative_[length][i] - previous : pmf[i];
      if (cached) previous = position_cumulative_[length][i];
      if (i + 1 < length && input[i] != input[i + 1]) running += mass;
      cumulative[i] = running;
    }
    if (running > 0.0) p = rng.pick(cumulative);
    else kind = EditKind::Substitution;
  }

  EditClassification edit{kind, p, {}};
  switch (kind) {
    case EditKind::Substitution:
    case EditKind::Insertion: {
      const char32_t replacement = replacement_for(input[p], rng);
      if (replacement == 0) {
        // Stats without any confusion rows cannot supply characters.
        edit = {EditKind::Deletion, p, std::u32string(1, input[p])};
      } else if (kind == EditKind::Substitution) {
        edit.chars = {input[p], replacement};
      } else {
        edit.position = p + 1;
        edit.chars = std::u32string(1, replacement);
      }
      break;
    }
    case EditKind::Deletion:
      edit.chars = std::u32string(1, input[p]);
      break;
    case EditKind::Transposition:
      edit.chars = {input[p], input[p + 1]};
      break;
  }
  return {apply_edit(input, edit), {edit}};
}

GeneratedTypo generate_typo(std::u32string_view input, const TypoStats& stats, Rng& rng,
                            std::size_t min_length) {
  return RealisticTypoModel(stats).generate(input, rng, min_length);
}

GeneratedTypo uniform_typo(std::u32string_view input, const GenerationConfig& config, Rng& rng) {
  const std::size_t length = input.size();
  if (length < std::max<std::size_t>(config.min_length, 1)) return {std::u32string(input), {}};
  if (config.uniform_alphabet.empty()) throw Error("config", "uniform generation needs a non-empty alphabet");

  const auto& alphabet = config.uniform_alphabet;
  EditKind kind = kEditKinds[rng.below(4)];
  if (kind == EditKind::Transposition && length < 2) kind = EditKind::Substitution;

  EditClassification edit{kind, 0, {}};
  switch (kind) {
    case EditKind::Insertion:
      edit.position = rng.below(length + 1);
      edit.chars = std::u32string(1, alphabet[rng.below(alphabet.size())]);
      break;
    case EditKind::Substitution:
      edit.position = rng.below(length);
      edit.chars = {input[edit.position], alphabet[rng.below(alphabet.size())]};
      break;
    case EditKind::Deletion:
      edit.position = rng.below(length);
      edit.chars = std::u32string(1, input[edit.position]);
      break;
    case EditKind::Transposition:
      edit.position = rng.below(length - 1);
      edit.chars = {input[edit.position], input[edit.position + 1]};
      break;
  }
  return {apply_edit(input, edit), {edit}};
}

TypoGenerator::TypoGenerator(GenerationConfig config, std::optional<TypoStats> stats)
    : config_(std::move(config)),
      law_((config_.validate(), config_.mean_typos_per_record), config_.max_typos_per_record) {
  if (config_.mode == GenerationMode::Realistic) {
    if (!stats) throw Error("config", "realistic generation requires typo statistics");
    model_.emplace(*stats);
  }
}

GeneratedPair TypoGenerator::corrupt_line(std::string_view line, std::uint64_t line_index) const {
  Rng rng(mix_seed(config_.seed, line_index));
  GeneratedPair pair;
  pair.correct = std::string(line);
  pair.sampled_edits = law_.sample(rng);

  std::u32string text = to_u32(line);
  for (std::size_t e = 0; e < pair.sampled_edits; ++e) {
    if (text.size() < config_.min_length) break;
    GeneratedTypo step = model_ ? model_->generate(text, rng, config_.min_length)
                                : uniform_typo(text, config_, rng);
    pair.log.insert(pair.log.end(), step.log.begin(), step.log.end());
    text = std::move(step.text);
  }
  pair.typo = to_utf8(text);
  return pair;
}

std::vector<GeneratedPair> corrupt_corpus(std::span<const std::string> lines,
                                          const std::optional<TypoStats>& stats,
                                          const GenerationConfig& config) {
  TypoGenerator generator(config, stats);
  std::vector<GeneratedPair> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) out.push_back(generator.corrupt_line(lines[i], i));
  return out;
}

std::size_t corrupt_corpus(std::istream& lines, const TypoGenerator& generator,
                           const std::function<void(const GeneratedPair&)>& emit) {
  std::string line;
  std::uint64_t index = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      emit(generator.corrupt_line(line, index));
    } catch (const Error& e) {
      throw Error("io", "line " + std::to_string(index + 1) + ": " + e.what());
    }
    ++index;
  }
  if (lines.bad()) throw Error("io", "read failed after line " + std::to_string(index));
  return index;
}

}  // namespace typogen
