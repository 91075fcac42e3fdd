#include "typogen/corrector.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <unordered_set>

#include "typogen/editdist.h"
#include "typogen/error.h"
#include "typogen/utf8.h"

namespace typogen {

std::uint64_t LanguageModel::count(const std::string& query) const {
  auto it = line_counts.find(query);
  return it == line_counts.end() ? 0 : it->second;
}

double LanguageModel::probability(const std::string& query) const {
  if (auto it = line_counts.find(query); it != line_counts.end())
    return static_cast<double>(it->second) / static_cast<double>(total_lines);
  const auto tokens = split_tokens(query);
  if (tokens.empty()) return smoothing_mass;
  double p = 1.0;
  for (const auto& token : tokens) {
    auto it = token_counts.find(token);
    p *= it == token_counts.end() ? smoothing_mass
                                  : static_cast<double>(it->second) / static_cast<double>(total_tokens);
  }
  return p;
}

LanguageModel train(std::span<const std::string> corpus, double smoothing_mass) {
  LanguageModel lm;
  lm.smoothing_mass = smoothing_mass;
  std::set<char32_t> chars;
  for (const auto& raw : corpus) {
    std::string line = trim(raw);
    if (line.empty()) continue;
    for (char32_t c : to_u32(line)) chars.insert(c);
    for (auto& token : split_tokens(line)) {
      ++lm.token_counts[token];
      ++lm.total_tokens;
    }
    ++lm.line_counts[std::move(line)];
    ++lm.total_lines;
  }
  if (lm.total_lines == 0) throw Error("empty", "cannot train a language model on an empty corpus");
  lm.alphabet.assign(chars.begin(), chars.end());
  return lm;
}

namespace {

// Queries are stored with single interior spaces, so a candidate with edge
// or doubled whitespace is never a plausible intended query.
bool well_spaced(std::u32string_view s) {
  if (s.empty()) return true;
  if (is_space(s.front()) || is_space(s.back())) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (is_space(s[i]) && is_space(s[i - 1])) return false;
  return true;
}

// Position mass on indices whose right neighbour differs.
double swappable_mass(std::u32string_view s, const std::vector<double>& positions) {
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] != s[i + 1]) mass += positions[i];
  return mass;
}

template <typename Emit>
void for_each_single_edit(std::u32string_view input, std::u32string_view alphabet, Emit&& emit) {
  std::u32string work;
  const std::size_t n = input.size();
  for (std::size_t i = 0; i < n; ++i) {
    work.assign(input);
    work.erase(i, 1);
    emit(work);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (input[i] == input[i + 1]) continue;
    work.assign(input);
    std::swap(work[i], work[i + 1]);
    emit(work);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (char32_t c : alphabet) {
      if (c == input[i]) continue;
      work.assign(input);
      work[i] = c;
      emit(work);
    }
  }
  for (std::size_t i = 0; i <= n; ++i) {
    for (char32_t c : alphabet) {
      work.assign(input);
      work.insert(work.begin() + static_cast<std::ptrdiff_t>(i), c);
      emit(work);
    }
  }
}

}  // namespace

std::vector<std::u32string> candidates(std::u32string_view input, std::u32string_view alphabet,
                                       std::size_t max_edits) {
  std::set<std::u32string> seen{std::u32string(input)};
  std::vector<std::u32string> frontier{std::u32string(input)};
  for (std::size_t level = 0; level < max_edits; ++level) {
    std::vector<std::u32string> next;
    for (const auto& source : frontier) {
      for_each_single_edit(source, alphabet, [&](const std::u32string& s) {
        if (seen.insert(s).second) next.push_back(s);
      });
    }
    frontier = std::move(next);
  }
  std::vector<std::u32string> out{std::u32string(input)};
  for (const auto& s : seen) {
    if (s == input) continue;
    // Chains of single edits can reach strings whose restricted distance is larger.
    if (max_edits > 1 && damerau_levenshtein(input, s) > max_edits) continue;
    out.push_back(s);
  }
  return out;
}

std::vector<std::string> candidates(std::string_view input, const LanguageModel& lm, std::size_t max_edits,
                                    std::size_t cap) {
  const auto raw = candidates(to_u32(input), lm.alphabet, max_edits);
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (const auto& c : raw) out.push_back(to_utf8(c));
  if (cap == 0 || out.size() <= cap) return out;

  std::vector<std::pair<double, std::string>> ranked;
  ranked.reserve(out.size() - 1);
  for (std::size_t i = 1; i < out.size(); ++i) ranked.emplace_back(lm.probability(out[i]), std::move(out[i]));
  const std::size_t keep = cap - 1;
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                    [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
  out.resize(1);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(std::move(ranked[i].second));
  return out;
}

Correction Analysis::decide(double threshold) const {
  // best_posterior >= threshold, written so that threshold 1 can only pass
  // when no other candidate carries any mass.
  if (best != input && (1.0 - threshold) >= threshold * rest_ratio) return {best, best_posterior, true};
  return {input, input_posterior, false};
}

NoisyChannelCorrector::NoisyChannelCorrector(LanguageModel lm, TypoStats stats, CorrectorConfig config)
    : lm_(std::move(lm)),
      stats_(std::move(stats)),
      config_(config),
      law_(config_.mean_typos_per_record, config_.max_typos_per_record) {
  stats_.validate();
  if (config_.max_edits < 1) throw Error("config", "max_edits must be at least 1");
  for (const auto& [from, row] : stats_.confusion) row_keys_.push_back(from);
  pmf_cache_.push_back({});
  for (std::size_t length = 1; length <= 64; ++length) pmf_cache_.push_back(position_pmf_for_length(stats_, length));
}

std::vector<double> NoisyChannelCorrector::pmf(std::size_t length) const {
  if (length < pmf_cache_.size()) return pmf_cache_[length];
  return position_pmf_for_length(stats_, length);
}

double NoisyChannelCorrector::replacement_probability(char32_t from, char32_t to) const {
  if (from == to) return 0.0;
  if (auto row = stats_.confusion.find(from); row != stats_.confusion.end()) {
    auto cell = row->second.find(to);
    return cell == row->second.end() ? 0.0 : cell->second;
  }
  // Same fallback as the generator: uniform over the row keys.
  if (row_keys_.find(to) == std::u32string::npos) return 0.0;
  const bool has_self = row_keys_.find(from) != std::u32string::npos;
  return 1.0 / static_cast<double>(row_keys_.size() - (has_self ? 1 : 0));
}

std::vector<NoisyChannelCorrector::Edit> NoisyChannelCorrector::inverse_edits(std::u32string_view typo) const {
  std::vector<Edit> out;
  const std::size_t n = typo.size();
  const double p_ins = stats_.type_probability(EditKind::Insertion);
  const double p_sub = stats_.type_probability(EditKind::Substitution);
  const double p_del = stats_.type_probability(EditKind::Deletion);
  const double p_trans = stats_.type_probability(EditKind::Transposition);
  const std::size_t min_length = config_.min_length;

  // typo has an extra character at j, inserted after candidate[j - 1].
  if (n >= 1 && n - 1 >= min_length && p_ins > 0.0) {
    const auto positions = pmf(n - 1);
    for (std::size_t j = 1; j < n; ++j) {
      const double p = p_ins * positions[j - 1] * replacement_probability(typo[j - 1], typo[j]);
      if (p <= 0.0) continue;
      std::u32string c(typo);
      c.erase(j, 1);
      out.push_back({std::move(c), p});
    }
  }
  // typo lost the character at j.
  if (n + 1 >= min_length && p_del > 0.0) {
    const auto positions = pmf(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      if (positions[j] <= 0.0) continue;
      for (char32_t x : lm_.alphabet) {
        std::u32string c(typo);
        c.insert(c.begin() + static_cast<std::ptrdiff_t>(j), x);
        out.push_back({std::move(c), p_del * positions[j]});
      }
    }
  }
  if (n >= min_length && n > 0) {
    const auto positions = pmf(n);
    if (p_sub > 0.0) {
      for (std::size_t j = 0; j < n; ++j) {
        for (char32_t x : lm_.alphabet) {
          std::u32string c(typo);
          c[j] = x;
          // The generator turns transpositions of swap-free strings into
          // substitutions.
          const double kind = swappable_mass(c, positions) > 0.0 ? p_sub : p_sub + p_trans;
          const double p = kind * positions[j] * replacement_probability(x, typo[j]);
          if (p <= 0.0) continue;
          out.push_back({std::move(c), p});
        }
      }
    }
    if (p_trans > 0.0) {
      for (std::size_t j = 0; j + 1 < n; ++j) {
        if (typo[j] == typo[j + 1] || positions[j] <= 0.0) continue;
        std::u32string c(typo);
        std::swap(c[j], c[j + 1]);
        // Transposition positions follow the position law restricted to
        // swappable positions of the candidate.
        const double p = p_trans * positions[j] / swappable_mass(c, positions);
        out.push_back({std::move(c), p});
      }
    }
  }
  return out;
}

Analysis NoisyChannelCorrector::analyze(std::string_view input) const {
  const std::u32string typo = to_u32(input);
  std::unordered_map<std::u32string, double> channel;
  channel[typo] = typo.size() < config_.min_length ? 1.0 : law_.probability(0);

  std::vector<std::pair<std::u32string, double>> level;
  for (auto& edit : inverse_edits(typo)) {
    channel[edit.candidate] += law_.probability(1) * edit.probability;
    if (config_.max_edits > 1) level.emplace_back(std::move(edit.candidate), edit.probability);
  }
  if (config_.max_edits > 1) {
    std::unordered_map<std::u32string, double> second;
    for (const auto& [first, p_first] : level) {
      if (first == typo) continue;
      for (auto& edit : inverse_edits(first)) second[edit.candidate] += edit.probability * p_first;
    }
    for (auto& [candidate, p] : second) {
      if (candidate == typo || damerau_levenshtein(candidate, typo) > 2) continue;
      channel[candidate] += law_.probability(2) * p;
    }
  }

  struct Scored {
    std::string text;
    double log_score;
    std::uint64_t count;
  };
  std::vector<Scored> scored;
  scored.reserve(channel.size());
  for (const auto& [candidate, p_channel] : channel) {
    if (p_channel <= 0.0 || (candidate != typo && !well_spaced(candidate))) continue;
    std::string text = to_utf8(candidate);
    const double log_score = std::log(lm_.probability(text)) + std::log(p_channel);
    const std::uint64_t count = lm_.count(text);
    scored.push_back({std::move(text), log_score, count});
  }
  auto better = [](const Scored& a, const Scored& b) {
    if (a.log_score != b.log_score) return a.log_score > b.log_score;
    if (a.count != b.count) return a.count > b.count;
    return a.text < b.text;
  };
  if (config_.candidate_cap > 0 && scored.size() > config_.candidate_cap) {
    // Keep the input and the most probable candidates under the LM.
    const std::string input_text(input);
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(config_.candidate_cap),
                      scored.end(), [&](const Scored& a, const Scored& b) {
                        const bool a_input = a.text == input_text;
                        const bool b_input = b.text == input_text;
                        if (a_input != b_input) return a_input;
                        const double pa = lm_.probability(a.text);
                        const double pb = lm_.probability(b.text);
                        return pa != pb ? pa > pb : a.text < b.text;
                      });
    scored.resize(config_.candidate_cap);
  }

  const auto best_it = std::min_element(scored.begin(), scored.end(), better);
  double rest = 0.0;
  double input_log = -std::numeric_limits<double>::infinity();
  for (const auto& s : scored) {
    if (s.text == input) input_log = s.log_score;
    if (&s != &*best_it) rest += std::exp(s.log_score - best_it->log_score);
  }

  Analysis analysis;
  analysis.input = std::string(input);
  analysis.best = best_it->text;
  analysis.rest_ratio = rest;
  analysis.best_posterior = 1.0 / (1.0 + rest);
  analysis.input_posterior = std::exp(input_log - best_it->log_score) * analysis.best_posterior;
  return analysis;
}

Correction correct(std::string_view input, const NoisyChannelCorrector& corrector, double threshold) {
  return corrector.correct(input, threshold);
}

namespace {

constexpr std::string_view kModelFormat = "typogen-noisy-channel";
constexpr int kModelVersion = 1;

template <typename Map>
nlohmann::json sorted_counts(const Map& counts) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, n] : counts) out[key] = n;
  return out;
}

}  // namespace

nlohmann::json to_json(const NoisyChannelCorrector& corrector) {
  const auto& lm = corrector.language_model();
  const auto& config = corrector.config();
  return {{"format", kModelFormat},
          {"version", kModelVersion},
          {"config",
           {{"max_edits", config.max_edits},
            {"candidate_cap", config.candidate_cap},
            {"mean_typos_per_record", config.mean_typos_per_record},
            {"max_typos_per_record", config.max_typos_per_record},
            {"min_length", config.min_length}}},
          {"smoothing_mass", lm.smoothing_mass},
          {"line_counts", sorted_counts(lm.line_counts)},
          {"token_counts", sorted_counts(lm.token_counts)},
          {"stats", to_json(corrector.stats())}};
}

NoisyChannelCorrector corrector_from_json(const nlohmann::json& json) {
  try {
    if (json.at("format").get<std::string>() != kModelFormat || json.at("version").get<int>() != kModelVersion)
      throw Error("invalid_model", "unsupported model format");
    CorrectorConfig config;
    const auto& c = json.at("config");
    config.max_edits = c.at("max_edits").get<std::size_t>();
    config.candidate_cap = c.at("candidate_cap").get<std::size_t>();
    config.mean_typos_per_record = c.at("mean_typos_per_record").get<double>();
    config.max_typos_per_record = c.at("max_typos_per_record").get<std::size_t>();
    config.min_length = c.at("min_length").get<std::size_t>();

    LanguageModel lm;
    lm.smoothing_mass = json.at("smoothing_mass").get<double>();
    std::set<char32_t> chars;
    for (const auto& [line, n] : json.at("line_counts").items()) {
      lm.line_counts[line] = n.get<std::uint64_t>();
      lm.total_lines += n.get<std::uint64_t>();
      for (char32_t ch : to_u32(line)) chars.insert(ch);
    }
    for (const auto& [token, n] : json.at("token_counts").items()) {
      lm.token_counts[token] = n.get<std::uint64_t>();
      lm.total_tokens += n.get<std::uint64_t>();
    }
    if (lm.total_lines == 0) throw Error("invalid_model", "model has no training lines");
    lm.alphabet.assign(chars.begin(), chars.end());
    return NoisyChannelCorrector(std::move(lm), stats_from_json(json.at("stats")), config);
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid_model", e.what());
  }
}

void save_model(const NoisyChannelCorrector& corrector, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write model " + path.string());
  out << to_json(corrector).dump() << '\n';
}

NoisyChannelCorrector load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open model " + path.string());
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid_model", path.string() + ": " + e.what());
  }
  return corrector_from_json(json);
}

}  // namespace typogen
