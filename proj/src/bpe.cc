#include "typogen/bpe.h"

#include <algorithm>
#include <map>
#include <optional>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "typogen/error.h"
#include "typogen/random.h"
#include "typogen/utf8.h"

namespace typogen {

namespace {

std::string merge_key(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left).push_back('\x1f');
  key.append(right);
  return key;
}

bool ends_with_marker(std::string_view token) { return token.ends_with(kEndOfWord); }

}  // namespace

BpeVocab::BpeVocab(std::vector<std::string> alphabet, std::vector<Merge> merges, std::size_t target_size)
    : alphabet_(std::move(alphabet)), merges_(std::move(merges)), target_size_(target_size) {
  std::unordered_set<std::string> tokens(alphabet_.begin(), alphabet_.end());
  id_to_token_ = {"<unk>", " "};
  for (const auto& c : alphabet_) id_to_token_.push_back(c);
  id_to_token_.emplace_back(kEndOfWord);
  for (std::size_t rank = 0; rank < merges_.size(); ++rank) {
    const auto& [left, right] = merges_[rank];
    ranks_.emplace(merge_key(left, right), static_cast<int>(rank));
    std::string merged = left + right;
    if (tokens.insert(merged).second) id_to_token_.push_back(std::move(merged));
  }
  token_count_ = tokens.size();
  for (std::size_t id = 0; id < id_to_token_.size(); ++id)
    token_to_id_.emplace(id_to_token_[id], static_cast<std::int32_t>(id));
}

bool BpeVocab::contains(std::string_view token) const {
  return token != kEndOfWord && token != "<unk>" && token != " " && token_to_id_.contains(std::string(token));
}

int BpeVocab::merge_rank(std::string_view left, std::string_view right) const {
  auto it = ranks_.find(merge_key(left, right));
  return it == ranks_.end() ? -1 : it->second;
}

std::int32_t BpeVocab::id_of(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kUnknownId : it->second;
}

const std::string& BpeVocab::token_of(std::int32_t id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= id_to_token_.size())
    throw Error("bpe", "token id " + std::to_string(id) + " out of range");
  return id_to_token_[static_cast<std::size_t>(id)];
}

namespace {

// Incremental pair statistics for fitting.
class PairTable {
 public:
  using Key = std::uint64_t;

  explicit PairTable(const std::vector<std::string>& symbols) : symbols_(symbols) {}

  static Key key(int left, int right) {
    return (static_cast<Key>(static_cast<std::uint32_t>(left)) << 32) | static_cast<std::uint32_t>(right);
  }

  void add(int left, int right, std::int64_t delta) {
    const Key k = key(left, right);
    std::int64_t& count = counts_[k];
    if (count > 0) queue_.erase(Entry{count, left, right, &symbols_});
    count += delta;
    if (count > 0) queue_.insert(Entry{count, left, right, &symbols_});
  }

  // Most frequent pair, lexicographically smallest on ties.
  std::optional<std::tuple<std::int64_t, int, int>> best() const {
    if (queue_.empty()) return std::nullopt;
    const Entry& top = *queue_.begin();
    return std::tuple{top.count, top.left, top.right};
  }

 private:
  struct Entry {
    std::int64_t count;
    int left;
    int right;
    const std::vector<std::string>* symbols;

    bool operator<(const Entry& other) const {
      if (count != other.count) return count > other.count;
      if (left != other.left) return (*symbols)[left] < (*symbols)[other.left];
      if (right != other.right) return (*symbols)[right] < (*symbols)[other.right];
      return false;
    }
  };

  const std::vector<std::string>& symbols_;
  std::unordered_map<Key, std::int64_t> counts_;
  std::set<Entry> queue_;
};

struct FitWord {
  std::vector<int> symbols;
  std::int64_t count;
};

}  // namespace

BpeVocab fit_bpe(std::span<const std::string> corpus, std::size_t target_size) {
  std::map<std::u32string, std::int64_t> word_counts;
  for (const auto& line : corpus)
    for (const auto& token : split_tokens(line)) ++word_counts[to_u32(token)];
  if (word_counts.empty()) throw Error("bpe", "cannot fit BPE on an empty corpus");

  std::set<char32_t> chars;
  for (const auto& [word, count] : word_counts) chars.insert(word.begin(), word.end());
  std::vector<std::string> alphabet;
  for (char32_t c : chars) alphabet.push_back(to_utf8(c));
  if (target_size < alphabet.size())
    throw Error("bpe", "target size " + std::to_string(target_size) + " is below the " +
                           std::to_string(alphabet.size()) + " distinct characters");

  std::vector<std::string> symbols;
  std::unordered_map<std::string, int> symbol_ids;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = symbol_ids.emplace(s, static_cast<int>(symbols.size()));
    if (inserted) symbols.push_back(s);
    return it->second;
  };
  for (const auto& c : alphabet) intern(c);
  const int marker = intern(std::string(kEndOfWord));

  std::vector<FitWord> words;
  words.reserve(word_counts.size());
  for (const auto& [word, count] : word_counts) {
    FitWord w{{}, count};
    for (char32_t c : word) w.symbols.push_back(symbol_ids.at(to_utf8(c)));
    w.symbols.push_back(marker);
    words.push_back(std::move(w));
  }

  PairTable table(symbols);
  std::unordered_map<PairTable::Key, std::vector<std::uint32_t>> where;
  for (std::uint32_t i = 0; i < words.size(); ++i) {
    const auto& s = words[i].symbols;
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
      table.add(s[j], s[j + 1], words[i].count);
      where[PairTable::key(s[j], s[j + 1])].push_back(i);
    }
  }

  std::unordered_set<std::string> tokens(alphabet.begin(), alphabet.end());
  std::vector<BpeVocab::Merge> merges;
  while (tokens.size() < target_size) {
    const auto best = table.best();
    if (!best || std::get<0>(*best) < 2) break;
    const auto [count, left, right] = *best;
    const std::string merged_text = symbols[left] + symbols[right];
    merges.emplace_back(symbols[left], symbols[right]);
    tokens.insert(merged_text);
    const int merged = intern(merged_text);

    auto affected = std::move(where[PairTable::key(left, right)]);
    where.erase(PairTable::key(left, right));
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
    for (std::uint32_t i : affected) {
      auto& w = words[i];
      auto& s = w.symbols;
      bool present = false;
      for (std::size_t j = 0; j + 1 < s.size(); ++j)
        if (s[j] == left && s[j + 1] == right) present = true;
      if (!present) continue;

      for (std::size_t j = 0; j + 1 < s.size(); ++j) table.add(s[j], s[j + 1], -w.count);
      std::vector<int> next;
      next.reserve(s.size());
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (j + 1 < s.size() && s[j] == left && s[j + 1] == right) {
          next.push_back(merged);
          ++j;
        } else {
          next.push_back(s[j]);
        }
      }
      s = std::move(next);
      for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        table.add(s[j], s[j + 1], w.count);
        where[PairTable::key(s[j], s[j + 1])].push_back(i);
      }
    }
  }
  return BpeVocab(std::move(alphabet), std::move(merges), target_size);
}

namespace {

std::vector<std::string> encode_word(std::u32string_view word, const BpeVocab& vocab) {
  std::vector<std::string> symbols;
  symbols.reserve(word.size() + 1);
  for (char32_t c : word) symbols.push_back(to_utf8(c));
  symbols.emplace_back(kEndOfWord);

  while (symbols.size() > 1) {
    int best_rank = -1;
    std::size_t best_at = 0;
    for (std::size_t j = 0; j + 1 < symbols.size(); ++j) {
      const int rank = vocab.merge_rank(symbols[j], symbols[j + 1]);
      if (rank >= 0 && (best_rank < 0 || rank < best_rank)) {
        best_rank = rank;
        best_at = j;
      }
    }
    if (best_rank < 0) break;
    const std::string left = symbols[best_at];
    const std::string right = symbols[best_at + 1];
    std::vector<std::string> next;
    next.reserve(symbols.size());
    for (std::size_t j = 0; j < symbols.size(); ++j) {
      if (j + 1 < symbols.size() && symbols[j] == left && symbols[j + 1] == right) {
        next.push_back(left + right);
        ++j;
      } else {
        next.push_back(std::move(symbols[j]));
      }
    }
    symbols = std::move(next);
  }
  return symbols;
}

}  // namespace

std::vector<std::string> encode(std::string_view text, const BpeVocab& vocab) {
  std::vector<std::string> tokens;
  const std::u32string chars = to_u32(text);
  std::size_t i = 0;
  while (i < chars.size()) {
    std::size_t j = i;
    const bool space = is_space(chars[i]);
    while (j < chars.size() && is_space(chars[j]) == space) ++j;
    const std::u32string_view run = std::u32string_view(chars).substr(i, j - i);
    if (space) {
      tokens.push_back(to_utf8(run));
    } else {
      for (auto& token : encode_word(run, vocab)) tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

std::string decode(std::span<const std::string> tokens) {
  std::string text;
  for (const auto& token : tokens) {
    if (ends_with_marker(token)) {
      text.append(token, 0, token.size() - kEndOfWord.size());
    } else {
      text.append(token);
    }
  }
  return text;
}

std::vector<std::int32_t> encode_ids(std::string_view text, const BpeVocab& vocab) {
  std::vector<std::int32_t> ids;
  for (const auto& token : encode(text, vocab)) {
    const std::u32string chars = to_u32(token);
    if (!chars.empty() && is_space(chars[0])) {
      for (char32_t c : chars) ids.push_back(c == U' ' ? kSpaceId : kUnknownId);
    } else {
      ids.push_back(vocab.id_of(token));
    }
  }
  return ids;
}

std::string decode_ids(std::span<const std::int32_t> ids, const BpeVocab& vocab) {
  std::vector<std::string> tokens;
  tokens.reserve(ids.size());
  for (std::int32_t id : ids) tokens.push_back(id == kUnknownId ? std::string("\xEF\xBF\xBD") : vocab.token_of(id));
  return decode(tokens);
}

void save_vocab(const BpeVocab& vocab, std::ostream& out) {
  out << "#typogen-bpe version=" << kBpeFormatVersion << " target_size=" << vocab.target_size()
      << " alphabet=";
  for (const auto& c : vocab.alphabet()) out << c;
  out << '\n';
  for (const auto& [left, right] : vocab.merges()) out << left << ' ' << right << '\n';
}

void save_vocab(const BpeVocab& vocab, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write vocabulary " + path.string());
  save_vocab(vocab, out);
}

BpeVocab load_vocab(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || !header.starts_with("#typogen-bpe "))
    throw Error("bpe", "missing vocabulary header");
  std::istringstream fields(header.substr(std::string_view("#typogen-bpe ").size()));
  std::string version, target, alphabet_field;
  fields >> version >> target;
  const auto alphabet_at = header.find(" alphabet=");
  if (version != "version=" + std::to_string(kBpeFormatVersion) || !target.starts_with("target_size=") ||
      alphabet_at == std::string::npos)
    throw Error("bpe", "malformed vocabulary header: " + header);
  const std::size_t target_size = std::stoull(target.substr(std::string_view("target_size=").size()));
  std::vector<std::string> alphabet;
  for (char32_t c : to_u32(std::string_view(header).substr(alphabet_at + std::string_view(" alphabet=").size())))
    alphabet.push_back(to_utf8(c));

  std::vector<BpeVocab::Merge> merges;
  std::string line;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos || line.find(' ', space + 1) != std::string::npos)
      throw Error("bpe", "malformed merge on line " + std::to_string(number));
    merges.emplace_back(line.substr(0, space), line.substr(space + 1));
  }
  return BpeVocab(std::move(alphabet), std::move(merges), target_size);
}

BpeVocab load_vocab(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open vocabulary " + path.string());
  return load_vocab(in);
}

DatasetSplit split_dataset(std::vector<std::string> lines, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = lines.size(); i > 1; --i) std::swap(lines[i - 1], lines[rng.below(i)]);

  const auto held_out = static_cast<std::size_t>(std::llround(static_cast<double>(lines.size()) / 102.0));
  const std::size_t train_size = lines.size() - 2 * held_out;
  DatasetSplit split;
  auto begin = std::make_move_iterator(lines.begin());
  split.train.assign(begin, begin + static_cast<std::ptrdiff_t>(train_size));
  split.validation.assign(begin + static_cast<std::ptrdiff_t>(train_size),
                          begin + static_cast<std::ptrdiff_t>(train_size + held_out));
  split.test.assign(begin + static_cast<std::ptrdiff_t>(train_size + held_out),
                    std::make_move_iterator(lines.end()));
  return split;
}

}  // namespace typogen
