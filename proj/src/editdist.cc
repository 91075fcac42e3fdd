#include "typogen/editdist.h"

#include <algorithm>
#include <vector>

#include "typogen/error.h"
#include "typogen/utf8.h"

namespace typogen {

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::Insertion:
      return "insertion";
    case EditKind::Substitution:
      return "substitution";
    case EditKind::Deletion:
      return "deletion";
    case EditKind::Transposition:
      return "transposition";
  }
  return "unknown";
}

std::optional<EditKind> parse_edit_kind(std::string_view name) {
  for (EditKind kind : kEditKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;

  // Three rolling rows: two back for transpositions.
  std::vector<std::size_t> before(m + 1), previous(m + 1), current(m + 1);
  for (std::size_t j = 0; j <= m; ++j) previous[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    current[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      std::size_t best = std::min({previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, before[j - 2] + 1);
      }
      current[j] = best;
    }
    std::swap(before, previous);
    std::swap(previous, current);
  }
  return previous[m];
}

std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
  return damerau_levenshtein(to_u32(a), to_u32(b));
}

std::size_t first_divergence_position(std::u32string_view correct, std::u32string_view typo) {
  const std::size_t shorter = std::min(correct.size(), typo.size());
  for (std::size_t i = 0; i < shorter; ++i) {
    if (correct[i] != typo[i]) return i;
  }
  if (correct.size() == typo.size()) throw Error("identical", "strings do not differ");
  return shorter;
}

namespace {

[[noreturn]] void not_single_edit(std::u32string_view correct, std::u32string_view typo) {
  throw Error("distance", "not a single edit: '" + to_utf8(typo) + "' vs '" + to_utf8(correct) + "'");
}

// Start of the run of `c` that ends right before `end`; an inserted or deleted
// character inside a run of equal characters is attributed to its first slot.
std::size_t run_start(std::u32string_view text, std::size_t end, char32_t c) {
  while (end > 0 && text[end - 1] == c) --end;
  return end;
}

}  // namespace

EditClassification classify_single_edit(std::u32string_view correct, std::u32string_view typo) {
  if (correct == typo) not_single_edit(correct, typo);
  const std::size_t split = first_divergence_position(correct, typo);

  if (typo.size() == correct.size() + 1) {
    if (typo.substr(split + 1) != correct.substr(split)) not_single_edit(correct, typo);
    const char32_t inserted = typo[split];
    return {EditKind::Insertion, run_start(correct, split, inserted), std::u32string(1, inserted)};
  }
  if (correct.size() == typo.size() + 1) {
    if (typo.substr(split) != correct.substr(split + 1)) not_single_edit(correct, typo);
    const char32_t deleted = correct[split];
    return {EditKind::Deletion, run_start(correct, split, deleted), std::u32string(1, deleted)};
  }
  if (correct.size() == typo.size()) {
    if (correct.substr(split + 1) == typo.substr(split + 1)) {
      return {EditKind::Substitution, split, std::u32string{correct[split], typo[split]}};
    }
    if (split + 1 < correct.size() && correct[split] == typo[split + 1] &&
        correct[split + 1] == typo[split] && correct.substr(split + 2) == typo.substr(split + 2)) {
      return {EditKind::Transposition, split, std::u32string{correct[split], correct[split + 1]}};
    }
  }
  not_single_edit(correct, typo);
}

std::u32string apply_edit(std::u32string_view text, const EditClassification& edit) {
  const std::size_t p = edit.position;
  auto bad = [&]() -> Error {
    return Error("edit", std::string(to_string(edit.kind)) + " at " + std::to_string(p) +
                             " does not fit '" + to_utf8(text) + "'");
  };
  std::u32string out(text);
  switch (edit.kind) {
    case EditKind::Insertion:
      if (p > text.size() || edit.chars.size() != 1) throw bad();
      out.insert(out.begin() + static_cast<std::ptrdiff_t>(p), edit.chars[0]);
      break;
    case EditKind::Substitution:
      if (p >= text.size() || edit.chars.size() != 2 || text[p] != edit.chars[0]) throw bad();
      out[p] = edit.chars[1];
      break;
    case EditKind::Deletion:
      if (p >= text.size() || edit.chars.size() != 1 || text[p] != edit.chars[0]) throw bad();
      out.erase(p, 1);
      break;
    case EditKind::Transposition:
      if (p + 1 >= text.size() || edit.chars.size() != 2 || text[p] != edit.chars[0] ||
          text[p + 1] != edit.chars[1])
        throw bad();
      std::swap(out[p], out[p + 1]);
      break;
  }
  return out;
}

}  // namespace typogen
