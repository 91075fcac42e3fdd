#include "typogen/keyboard.h"

#include <fstream>

#include "typogen/error.h"
#include "typogen/utf8.h"

namespace typogen {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error("invalid_layout", what); }

std::optional<char32_t> key_char(const nlohmann::json& key, const char* field) {
  if (!key.contains(field) || key.at(field).is_null()) return std::nullopt;
  const std::u32string text = to_u32(key.at(field).get<std::string>());
  if (text.size() != 1) invalid(std::string(field) + " of key " + key.value("key_id", "?") +
                                " must be a single character");
  return text[0];
}

}  // namespace

KeyboardLayout KeyboardLayout::from_json(const nlohmann::json& json) {
  KeyboardLayout layout;
  try {
    layout.name_ = json.at("name").get<std::string>();
    for (const auto& key : json.at("keys")) {
      const std::string id = key.at("key_id").get<std::string>();
      Key entry{key_char(key, "base"), key_char(key, "shift")};
      if (!layout.keys_.emplace(id, entry).second) invalid("duplicate key id " + id);
      if (entry.base && !layout.base_index_.emplace(*entry.base, id).second)
        invalid("'" + to_utf8(*entry.base) + "' appears twice on the base layer");
      if (entry.shift && !layout.shift_index_.emplace(*entry.shift, id).second)
        invalid("'" + to_utf8(*entry.shift) + "' appears twice on the shift layer");
    }
  } catch (const nlohmann::json::exception& e) {
    invalid(e.what());
  }
  return layout;
}

std::optional<std::pair<std::string, KeyLayer>> KeyboardLayout::locate(char32_t c) const {
  if (auto it = base_index_.find(c); it != base_index_.end()) return std::pair{it->second, KeyLayer::Base};
  if (auto it = shift_index_.find(c); it != shift_index_.end()) return std::pair{it->second, KeyLayer::Shift};
  return std::nullopt;
}

std::optional<char32_t> KeyboardLayout::char_at(const std::string& key_id, KeyLayer layer) const {
  auto it = keys_.find(key_id);
  if (it == keys_.end()) return std::nullopt;
  return layer == KeyLayer::Base ? it->second.base : it->second.shift;
}

KeyboardLayout load_layout(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open layout " + path.string());
  nlohmann::json json;
  try {
    in >> json;
  } catch (const nlohmann::json::exception& e) {
    invalid(path.string() + ": " + e.what());
  }
  return KeyboardLayout::from_json(json);
}

std::optional<char32_t> map_char(char32_t c, const KeyboardLayout& source, const KeyboardLayout& target) {
  const auto position = source.locate(c);
  if (!position) return std::nullopt;
  return target.char_at(position->first, position->second);
}

nlohmann::json TransferReport::to_json() const {
  return {{"rows_in", rows_in},
          {"rows_out", rows_out},
          {"entries_dropped", entries_dropped},
          {"dropped_mass_fraction", dropped_mass_fraction}};
}

TransferResult transfer_stats(const TypoStats& stats, const KeyboardLayout& source,
                              const KeyboardLayout& target) {
  TransferResult result;
  result.stats.type_freq = stats.type_freq;
  result.stats.position_cdf = stats.position_cdf;
  result.stats.sample_count = stats.sample_count;
  result.report.rows_in = stats.confusion.size();

  double dropped = 0.0;
  for (const auto& [from, row] : stats.confusion) {
    const auto mapped_from = map_char(from, source, target);
    std::map<char32_t, double> out;
    double kept = 0.0;
    for (const auto& [to, p] : row) {
      const auto mapped_to = mapped_from ? map_char(to, source, target) : std::nullopt;
      if (!mapped_to || *mapped_to == *mapped_from) {
        dropped += p;
        ++result.report.entries_dropped;
        continue;
      }
      out[*mapped_to] += p;
      kept += p;
    }
    if (out.empty()) continue;
    // Two source rows can land on one target character when the target
    // repeats a character across layers; their entries are pooled.
    auto& destination = result.stats.confusion[*mapped_from];
    const bool pooled = !destination.empty();
    const bool lost_mass = out.size() != row.size() || pooled;
    for (auto& [to, p] : out) destination[to] += lost_mass ? p / kept : p;
  }
  for (auto& [from, row] : result.stats.confusion) {
    double total = 0.0;
    for (const auto& [to, p] : row) total += p;
    if (std::abs(total - 1.0) > 1e-12)
      for (auto& [to, p] : row) p /= total;
  }

  result.report.rows_out = result.stats.confusion.size();
  result.report.dropped_mass_fraction =
      stats.confusion.empty() ? 0.0 : dropped / static_cast<double>(stats.confusion.size());
  if (result.report.dropped_mass_fraction > 0.5)
    throw Error("transfer", "layouts " + source.name() + " -> " + target.name() +
                                " lose " + std::to_string(result.report.dropped_mass_fraction * 100.0) +
                                "% of the confusion mass");
  return result;
}

}  // namespace typogen
