#pragma once

// Deliberately naive reference implementations used to cross-check the
// library. They share no code with src/.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Restricted Damerau-Levenshtein straight from the recurrence, memoised on
// suffix lengths.
inline std::size_t osa(const std::u32string& a, const std::u32string& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  auto go = [&](auto&& self, std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = std::min({self(self, i - 1, j) + 1, self(self, i, j - 1) + 1,
                                 self(self, i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1)});
    if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
      best = std::min(best, self(self, i - 2, j - 2) + 1);
    memo[key] = best;
    return best;
  };
  return go(go, a.size(), b.size());
}

// Unrestricted Damerau-Levenshtein (Lowrance-Wagner), a true metric.
inline std::size_t full_dl(const std::u32string& a, const std::u32string& b) {
  const std::size_t n = a.size(), m = b.size(), inf = n + m;
  std::map<char32_t, std::size_t> last_row;
  std::vector<std::vector<std::size_t>> d(n + 2, std::vector<std::size_t>(m + 2, 0));
  d[0][0] = inf;
  for (std::size_t i = 0; i <= n; ++i) d[i + 1][0] = inf, d[i + 1][1] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j + 1] = inf, d[1][j + 1] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t last_col = 0;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t i1 = last_row.count(b[j - 1]) ? last_row[b[j - 1]] : 0;
      const std::size_t j1 = last_col;
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      if (cost == 0) last_col = j;
      d[i + 1][j + 1] = std::min({d[i][j] + cost, d[i + 1][j] + 1, d[i][j + 1] + 1,
                                  d[i1][j1] + (i - i1 - 1) + 1 + (j - j1 - 1)});
    }
    last_row[a[i - 1]] = i;
  }
  return d[n + 1][m + 1];
}

struct Edit {
  int kind;  // 0 insertion, 1 substitution, 2 deletion, 3 transposition
  std::size_t position;
  std::u32string result;
};

// Every single edit of `s` over `alphabet`, in (position, kind) order.
inline std::vector<Edit> single_edits(const std::u32string& s, const std::u32string& alphabet) {
  std::vector<Edit> out;
  for (std::size_t p = 0; p <= s.size(); ++p) {
    for (char32_t c : alphabet) {
      std::u32string t = s;
      t.insert(t.begin() + p, c);
      out.push_back({0, p, t});
    }
    if (p < s.size()) {
      for (char32_t c : alphabet) {
        if (c == s[p]) continue;
        std::u32string t = s;
        t[p] = c;
        out.push_back({1, p, t});
      }
      std::u32string t = s;
      t.erase(p, 1);
      out.push_back({2, p, t});
      if (p + 1 < s.size() && s[p] != s[p + 1]) {
        std::u32string u = s;
        std::swap(u[p], u[p + 1]);
        out.push_back({3, p, u});
      }
    }
  }
  return out;
}

inline std::set<std::u32string> within(const std::u32string& s, const std::u32string& alphabet, std::size_t k) {
  std::set<std::u32string> level{s}, all{s};
  for (std::size_t i = 0; i < k; ++i) {
    std::set<std::u32string> next;
    for (const auto& x : level)
      for (const auto& e : single_edits(x, alphabet))
        if (all.insert(e.result).second) next.insert(e.result);
    level = next;
  }
  std::set<std::u32string> out;
  for (const auto& x : all)
    if (osa(s, x) <= k) out.insert(x);
  return out;
}

// Plain splitmix64 stream for generating test inputs.
struct Gen {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::u32string string(const std::u32string& alphabet, std::size_t min_len, std::size_t max_len) {
    std::u32string s;
    const std::size_t len = min_len + below(max_len - min_len + 1);
    for (std::size_t i = 0; i < len; ++i) s += alphabet[below(alphabet.size())];
    return s;
  }
};

}  // namespace oracle
