#include "typogen/stats.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "typogen/error.h"
#include "typogen/utf8.h"

namespace typogen {

namespace {

constexpr double kSumTolerance = 1e-9;

[[noreturn]] void invalid(const std::string& what) { throw Error("invalid_stats", what); }

std::string describe(char32_t c) { return "'" + to_utf8(c) + "'"; }

}  // namespace

double TypoStats::confusion_probability(char32_t from, char32_t to) const {
  auto row = confusion.find(from);
  if (row == confusion.end()) return 0.0;
  auto cell = row->second.find(to);
  return cell == row->second.end() ? 0.0 : cell->second;
}

void TypoStats::validate() const {
  double total = 0.0;
  for (double p : type_freq) {
    if (!(p >= 0.0) || !std::isfinite(p)) invalid("type_freq entries must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) invalid("type_freq must sum to 1");

  for (const auto& [from, row] : confusion) {
    if (row.empty()) invalid("empty confusion row for " + describe(from));
    double row_total = 0.0;
    for (const auto& [to, p] : row) {
      if (to == from) invalid("confusion row " + describe(from) + " contains itself");
      if (!(p >= 0.0) || !std::isfinite(p)) invalid("negative confusion entry in row " + describe(from));
      row_total += p;
    }
    if (std::abs(row_total - 1.0) > kSumTolerance)
      invalid("confusion row " + describe(from) + " does not sum to 1");
  }

  double previous = 0.0;
  for (std::size_t i = 0; i < kPercentiles; ++i) {
    const double v = position_cdf[i];
    if (!(v >= previous) || v > 1.0 + kSumTolerance) invalid("position_cdf must be non-decreasing in [0,1]");
    previous = v;
  }
  if (std::abs(position_cdf.back() - 1.0) > kSumTolerance) invalid("position_cdf must end at 1");
}

std::size_t position_bin(std::size_t position, std::size_t correct_length) {
  if (correct_length == 0) return kPercentiles - 1;
  // Integer arithmetic: floor(100 * position / length), clamped to the last bin.
  const std::size_t bin = position * kPercentiles / correct_length;
  return std::min(bin, kPercentiles - 1);
}

void StatsCounts::add(std::u32string_view correct, std::u32string_view typo) {
  const EditClassification edit = classify_single_edit(correct, typo);
  ++kind_counts[index_of(edit.kind)];
  if (edit.kind == EditKind::Substitution) ++substitutions[edit.chars[0]][edit.chars[1]];
  ++position_bins[position_bin(first_divergence_position(correct, typo), correct.size())];
  ++sample_count;
}

void StatsCounts::add(const TypoPair& pair) { add(to_u32(pair.correct), to_u32(pair.typo)); }

StatsCounts count_pairs(std::span<const TypoPair> pairs) {
  StatsCounts counts;
  for (const auto& pair : pairs) counts.add(pair);
  return counts;
}

StatsCounts merge_stats(const StatsCounts& a, const StatsCounts& b) {
  if (a.version != b.version)
    throw Error("version", "cannot merge counts of extraction versions " + std::to_string(a.version) +
                               " and " + std::to_string(b.version));
  StatsCounts merged = a;
  for (std::size_t i = 0; i < merged.kind_counts.size(); ++i) merged.kind_counts[i] += b.kind_counts[i];
  for (const auto& [from, row] : b.substitutions)
    for (const auto& [to, n] : row) merged.substitutions[from][to] += n;
  for (std::size_t i = 0; i < kPercentiles; ++i) merged.position_bins[i] += b.position_bins[i];
  merged.sample_count += b.sample_count;
  return merged;
}

TypoStats normalize(const StatsCounts& counts) {
  if (counts.sample_count == 0) throw Error("empty", "no typo pairs to extract statistics from");
  TypoStats stats;
  stats.sample_count = counts.sample_count;
  const double n = static_cast<double>(counts.sample_count);
  for (std::size_t i = 0; i < 4; ++i) stats.type_freq[i] = static_cast<double>(counts.kind_counts[i]) / n;

  for (const auto& [from, row] : counts.substitutions) {
    std::uint64_t row_total = 0;
    for (const auto& [to, c] : row) row_total += c;
    if (row_total == 0) continue;
    auto& out = stats.confusion[from];
    for (const auto& [to, c] : row) {
      if (c > 0) out[to] = static_cast<double>(c) / static_cast<double>(row_total);
    }
  }

  std::uint64_t running = 0;
  for (std::size_t i = 0; i < kPercentiles; ++i) {
    running += counts.position_bins[i];
    stats.position_cdf[i] = static_cast<double>(running) / n;
  }
  return stats;
}

TypoStats extract_stats(std::span<const TypoPair> pairs) { return normalize(count_pairs(pairs)); }

namespace {

// CDF at normalized position x, linear inside each percentile.
double cdf_at(const TypoStats& stats, double scaled) {
  if (scaled <= 0.0) return 0.0;
  if (scaled >= static_cast<double>(kPercentiles)) return stats.position_cdf.back();
  const auto bin = static_cast<std::size_t>(scaled);
  const double frac = scaled - static_cast<double>(bin);
  const double lo = bin == 0 ? 0.0 : stats.position_cdf[bin - 1];
  const double hi = stats.position_cdf[bin];
  return lo + (hi - lo) * frac;
}

}  // namespace

std::vector<double> position_pmf_for_length(const TypoStats& stats, std::size_t length) {
  if (length == 0) throw Error("length", "position distribution needs a positive length");
  std::vector<double> pmf(length);
  const double total = stats.position_cdf.back();
  const double scale = static_cast<double>(kPercentiles) / static_cast<double>(length);
  double previous = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    const double next = cdf_at(stats, scale * static_cast<double>(i + 1));
    pmf[i] = (next - previous) / total;
    previous = next;
  }
  return pmf;
}

double mean_normalized_position(const TypoStats& stats) {
  double mean = 0.0;
  double previous = 0.0;
  for (std::size_t i = 0; i < kPercentiles; ++i) {
    const double mass = stats.position_cdf[i] - previous;
    mean += mass * (static_cast<double>(i) + 0.5) / static_cast<double>(kPercentiles);
    previous = stats.position_cdf[i];
  }
  return mean;
}

TypoStats uniform_stats(std::u32string_view alphabet) {
  std::u32string symbols(alphabet);
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  if (symbols.size() < 2) throw Error("config", "uniform statistics need at least two characters");

  TypoStats stats;
  stats.type_freq.fill(0.25);
  for (std::size_t i = 0; i < kPercentiles; ++i)
    stats.position_cdf[i] = static_cast<double>(i + 1) / static_cast<double>(kPercentiles);
  const double p = 1.0 / static_cast<double>(symbols.size() - 1);
  for (char32_t from : symbols)
    for (char32_t to : symbols)
      if (to != from) stats.confusion[from][to] = p;
  return stats;
}

nlohmann::json to_json(const TypoStats& stats) {
  nlohmann::json type_freq = nlohmann::json::object();
  for (EditKind kind : kEditKinds) type_freq[std::string(to_string(kind))] = stats.type_probability(kind);
  nlohmann::json confusion = nlohmann::json::object();
  for (const auto& [from, row] : stats.confusion) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [to, p] : row) out[to_utf8(to)] = p;
    confusion[to_utf8(from)] = std::move(out);
  }
  return {{"version", kStatsFormatVersion},
          {"sample_count", stats.sample_count},
          {"type_freq", type_freq},
          {"confusion", confusion},
          {"position_cdf", stats.position_cdf}};
}

namespace {

char32_t single_char(const std::string& key) {
  std::u32string text = to_u32(key);
  if (text.size() != 1) invalid("confusion key '" + key + "' is not a single character");
  return text[0];
}

}  // namespace

TypoStats stats_from_json(const nlohmann::json& json) {
  TypoStats stats;
  try {
    if (json.at("version").get<int>() != kStatsFormatVersion)
      invalid("unsupported stats version " + json.at("version").dump());
    stats.sample_count = json.value("sample_count", std::uint64_t{0});
    const auto& type_freq = json.at("type_freq");
    if (type_freq.size() != 4) invalid("type_freq must have exactly four kinds");
    for (EditKind kind : kEditKinds)
      stats.type_freq[index_of(kind)] = type_freq.at(std::string(to_string(kind))).get<double>();
    for (const auto& [from, row] : json.at("confusion").items()) {
      auto& out = stats.confusion[single_char(from)];
      for (const auto& [to, p] : row.items()) out[single_char(to)] = p.get<double>();
    }
    const auto& cdf = json.at("position_cdf");
    if (!cdf.is_array() || cdf.size() != kPercentiles) invalid("position_cdf must have 100 entries");
    for (std::size_t i = 0; i < kPercentiles; ++i) stats.position_cdf[i] = cdf[i].get<double>();
  } catch (const nlohmann::json::exception& e) {
    invalid(e.what());
  } catch (const Error& e) {
    if (e.code() == "invalid_stats") throw;
    invalid(e.what());
  }
  stats.validate();
  return stats;
}

TypoStats load_stats(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open stats file " + path.string());
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    invalid(path.string() + ": " + e.what());
  }
  return stats_from_json(json);
}

void save_stats(const TypoStats& stats, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write stats file " + path.string());
  out << to_json(stats).dump(1) << '\n';
}

nlohmann::json to_json(const StatsCounts& counts) {
  nlohmann::json kinds = nlohmann::json::object();
  for (EditKind kind : kEditKinds) kinds[std::string(to_string(kind))] = counts.kind_counts[index_of(kind)];
  nlohmann::json substitutions = nlohmann::json::object();
  for (const auto& [from, row] : counts.substitutions) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [to, n] : row) out[to_utf8(to)] = n;
    substitutions[to_utf8(from)] = std::move(out);
  }
  return {{"extraction_version", counts.version},
          {"sample_count", counts.sample_count},
          {"kind_counts", kinds},
          {"substitutions", substitutions},
          {"position_bins", counts.position_bins}};
}

StatsCounts counts_from_json(const nlohmann::json& json) {
  StatsCounts counts;
  try {
    counts.version = json.at("extraction_version").get<int>();
    counts.sample_count = json.at("sample_count").get<std::uint64_t>();
    for (EditKind kind : kEditKinds)
      counts.kind_counts[index_of(kind)] =
          json.at("kind_counts").at(std::string(to_string(kind))).get<std::uint64_t>();
    for (const auto& [from, row] : json.at("substitutions").items()) {
      auto& out = counts.substitutions[single_char(from)];
      for (const auto& [to, n] : row.items()) out[single_char(to)] = n.get<std::uint64_t>();
    }
    const auto& bins = json.at("position_bins");
    if (bins.size() != kPercentiles) invalid("position_bins must have 100 entries");
    for (std::size_t i = 0; i < kPercentiles; ++i) counts.position_bins[i] = bins[i].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    invalid(e.what());
  }
  return counts;
}

}  // namespace typogen
