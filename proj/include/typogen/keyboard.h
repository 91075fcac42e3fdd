#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "typogen/stats.h"

namespace typogen {

enum class KeyLayer : std::uint8_t { Base, Shift };

/// Physical key id -> produced character, per layer. Key ids follow the XKB
/// names of ISO positions (AD01 is the key right of Tab, AC01 right of Caps
/// Lock, AE01 the "1" key, TLDE the key left of it).
class KeyboardLayout {
 public:
  KeyboardLayout() = default;

  /// Parses {name, keys: [{key_id, base, shift}]}; `base`/`shift` may be
  /// omitted or null. Throws Error("invalid_layout") on duplicate key ids,
  /// multi-character entries or a character bound to two keys of one layer.
  static KeyboardLayout from_json(const nlohmann::json& json);

  const std::string& name() const { return name_; }
  std::size_t key_count() const { return keys_.size(); }

  std::optional<std::pair<std::string, KeyLayer>> locate(char32_t c) const;
  std::optional<char32_t> char_at(const std::string& key_id, KeyLayer layer) const;

 private:
  struct Key {
    std::optional<char32_t> base;
    std::optional<char32_t> shift;
  };

  std::string name_;
  std::map<std::string, Key> keys_;
  std::unordered_map<char32_t, std::string> base_index_;
  std::unordered_map<char32_t, std::string> shift_index_;
};

KeyboardLayout load_layout(const std::filesystem::path& path);

/// Character on the same physical key and layer of `target`; the base layer
/// wins when `c` appears on both layers of `source`.
std::optional<char32_t> map_char(char32_t c, const KeyboardLayout& source, const KeyboardLayout& target);

struct TransferReport {
  std::size_t rows_in = 0;
  std::size_t rows_out = 0;
  std::size_t entries_dropped = 0;
  // Share of total confusion mass (one unit per row) that had no mapping.
  double dropped_mass_fraction = 0.0;

  nlohmann::json to_json() const;
};

struct TransferResult {
  TypoStats stats;
  TransferReport report;
};

/// Remaps the confusion matrix key by key; type frequencies and the position
/// CDF are copied unchanged. Throws Error("transfer") when more than half of
/// the confusion mass is lost.
TransferResult transfer_stats(const TypoStats& stats, const KeyboardLayout& source,
                              const KeyboardLayout& target);

}  // namespace typogen
