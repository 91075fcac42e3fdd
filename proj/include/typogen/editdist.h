#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace typogen {

enum class EditKind : std::uint8_t { Insertion, Substitution, Deletion, Transposition };

inline constexpr std::array<EditKind, 4> kEditKinds = {
    EditKind::Insertion, EditKind::Substitution, EditKind::Deletion, EditKind::Transposition};

constexpr std::size_t index_of(EditKind kind) { return static_cast<std::size_t>(kind); }

std::string_view to_string(EditKind kind);
std::optional<EditKind> parse_edit_kind(std::string_view name);

/// A single edit that turns a correct string into a typo.
///
/// `position` indexes the correct string in characters:
///   Insertion      `chars[0]` is inserted before correct[position]
///                  (position == size means appended);
///   Substitution   correct[position] becomes `chars[1]` (`chars[0]` is the original);
///   Deletion       correct[position] (== `chars[0]`) is removed;
///   Transposition  correct[position], correct[position + 1] (== `chars`) swap.
struct EditClassification {
  EditKind kind;
  std::size_t position;
  std::u32string chars;

  bool operator==(const EditClassification&) const = default;
};

/// Optimal-string-alignment distance: unit-cost insertion, deletion,
/// substitution and adjacent transposition, no substring edited twice.
std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t damerau_levenshtein(std::string_view a, std::string_view b);

/// Kind, leftmost position and involved characters of the single edit that
/// turns `correct` into `typo`. Throws Error("distance") unless the two
/// strings are exactly one edit apart.
EditClassification classify_single_edit(std::u32string_view correct, std::u32string_view typo);

/// Smallest index at which the strings differ, or the shorter length when one
/// is a prefix of the other. Throws Error("identical") for equal strings.
std::size_t first_divergence_position(std::u32string_view correct, std::u32string_view typo);

/// Applies `edit` to `text`; throws Error("edit") when the edit does not fit.
std::u32string apply_edit(std::u32string_view text, const EditClassification& edit);

}  // namespace typogen
