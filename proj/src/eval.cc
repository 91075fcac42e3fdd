#include "typogen/eval.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "typogen/error.h"
#include "typogen/utf8.h"

namespace typogen {

double sequence_accuracy(std::span<const std::string> predictions, std::span<const std::string> references) {
  if (predictions.size() != references.size())
    throw Error("length", "got " + std::to_string(predictions.size()) + " predictions for " +
                              std::to_string(references.size()) + " references");
  if (predictions.empty()) throw Error("empty", "no predictions to score");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    if (nfc(predictions[i]) == nfc(references[i])) ++hits;
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

EvalReport evaluate(const CorrectFn& correct_fn, std::span<const TypoPair> pairs) {
  if (pairs.empty()) throw Error("empty", "no pairs to evaluate");
  std::vector<std::string> on_typos, on_identity, references;
  on_typos.reserve(pairs.size());
  on_identity.reserve(pairs.size());
  references.reserve(pairs.size());
  for (const auto& pair : pairs) {
    on_typos.push_back(correct_fn(pair.typo));
    on_identity.push_back(correct_fn(pair.correct));
    references.push_back(pair.correct);
  }
  EvalReport report;
  report.typo_accuracy = sequence_accuracy(on_typos, references);
  report.identity_accuracy = sequence_accuracy(on_identity, references);
  report.n_typos = pairs.size();
  report.n_identity = pairs.size();
  return report;
}

std::vector<double> default_thresholds() {
  std::vector<double> out;
  for (int i = 0; i <= 10; ++i) out.push_back(i / 10.0);
  return out;
}

namespace {

void check_thresholds(std::span<const double> thresholds) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    throw Error("thresholds", "thresholds must be sorted ascending");
}

}  // namespace

std::vector<CurvePoint> correction_rate_curve(const ThresholdedFn& correct_fn_at,
                                              std::span<const std::string> queries,
                                              std::span<const double> thresholds) {
  check_thresholds(thresholds);
  std::vector<CurvePoint> curve;
  for (double t : thresholds) {
    std::size_t corrected = 0;
    for (const auto& q : queries)
      if (correct_fn_at(q, t).corrected) ++corrected;
    curve.push_back({t, queries.empty() ? 0.0 : static_cast<double>(corrected) / queries.size()});
  }
  return curve;
}

std::vector<CurvePoint> correction_rate_curve(const NoisyChannelCorrector& corrector,
                                              std::span<const std::string> queries,
                                              std::span<const double> thresholds) {
  check_thresholds(thresholds);
  std::vector<std::size_t> corrected(thresholds.size(), 0);
  for (const auto& q : queries) {
    const Analysis analysis = corrector.analyze(q);
    for (std::size_t i = 0; i < thresholds.size(); ++i)
      if (analysis.decide(thresholds[i]).corrected) ++corrected[i];
  }
  std::vector<CurvePoint> curve;
  for (std::size_t i = 0; i < thresholds.size(); ++i)
    curve.push_back({thresholds[i], queries.empty() ? 0.0 : static_cast<double>(corrected[i]) / queries.size()});
  return curve;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& p : report.curve) curve.push_back({{"threshold", p.threshold}, {"correction_rate", p.correction_rate}});
  return {{"typo_accuracy", report.typo_accuracy},
          {"identity_accuracy", report.identity_accuracy},
          {"n_typos", report.n_typos},
          {"n_identity", report.n_identity},
          {"curve", curve}};
}

std::string format_table(std::span<const std::pair<std::string, EvalReport>> models) {
  constexpr std::size_t kLabelWidth = 10;
  std::vector<std::size_t> widths;
  for (const auto& [name, report] : models) widths.push_back(std::max<std::size_t>(name.size(), 6));

  std::ostringstream out;
  auto pad_right = [&](const std::string& s, std::size_t w) { out << s << std::string(w > s.size() ? w - s.size() : 0, ' '); };
  auto pad_left = [&](const std::string& s, std::size_t w) { out << std::string(w > s.size() ? w - s.size() : 0, ' ') << s; };
  auto percent = [](double v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
    return std::string(buf);
  };

  pad_right("", kLabelWidth);
  for (std::size_t i = 0; i < models.size(); ++i) {
    out << "  ";
    pad_left(models[i].first, widths[i]);
  }
  out << '\n';
  for (const char* row : {"Typos", "Identity"}) {
    pad_right(row, kLabelWidth);
    for (std::size_t i = 0; i < models.size(); ++i) {
      const auto& r = models[i].second;
      out << "  ";
      pad_left(percent(row[0] == 'T' ? r.typo_accuracy : r.identity_accuracy), widths[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string curve_csv(std::span<const CurvePoint> curve) {
  std::ostringstream out;
  out << "threshold,correction_rate\n";
  char buf[64];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%.4f,%.6f\n", p.threshold, p.correction_rate);
    out << buf;
  }
  return out.str();
}

PairFormat parse_pair_format(std::string_view name) {
  if (name == "tsv") return PairFormat::Tsv;
  if (name == "birkbeck") return PairFormat::Birkbeck;
  if (name == "wikipedia") return PairFormat::Wikipedia;
  throw Error("config", "unknown pair format '" + std::string(name) + "'");
}

std::vector<TypoPair> read_pairs(std::istream& in, PairFormat format) {
  std::vector<TypoPair> pairs;
  std::string line;
  std::string current;  // birkbeck: the active correct word
  std::size_t number = 0;
  auto fail = [&](const std::string& why) -> void {
    throw Error("pairs", "line " + std::to_string(number) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    if (!is_valid_utf8(trimmed)) fail("invalid UTF-8");
    switch (format) {
      case PairFormat::Tsv: {
        const auto tab = line.find('\t');
        if (tab == std::string::npos) fail("expected typo<TAB>correct");
        std::string typo = trim(line.substr(0, tab));
        std::string correct = trim(line.substr(tab + 1));
        if (correct.find('\t') != std::string::npos) correct = trim(correct.substr(0, correct.find('\t')));
        if (typo.empty() || correct.empty()) fail("empty field");
        pairs.push_back({nfc(typo), nfc(correct)});
        break;
      }
      case PairFormat::Birkbeck: {
        if (trimmed[0] == '$') {
          current = trim(trimmed.substr(1));
          if (current.empty()) fail("empty correct word");
          current = nfc(current);
        } else {
          if (current.empty()) fail("misspelling before any $word line");
          pairs.push_back({nfc(trimmed), current});
        }
        break;
      }
      case PairFormat::Wikipedia: {
        const auto arrow = trimmed.find("->");
        if (arrow == std::string::npos) fail("expected typo->correct");
        std::string typo = trim(trimmed.substr(0, arrow));
        std::string correct = trimmed.substr(arrow + 2);
        if (auto comma = correct.find(','); comma != std::string::npos) correct = correct.substr(0, comma);
        correct = trim(correct);
        if (typo.empty() || correct.empty()) fail("empty field");
        pairs.push_back({nfc(typo), nfc(correct)});
        break;
      }
    }
  }
  return pairs;
}

std::vector<TypoPair> load_pairs(const std::filesystem::path& path, PairFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open " + path.string());
  return read_pairs(in, format);
}

std::unordered_map<std::string, std::string> read_predictions(std::istream& in) {
  std::unordered_map<std::string, std::string> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("predictions", "line " + std::to_string(number) + ": expected input<TAB>prediction");
    const auto end = line.find('\t', tab + 1);
    out[line.substr(0, tab)] = line.substr(tab + 1, end == std::string::npos ? std::string::npos : end - tab - 1);
  }
  return out;
}

std::unordered_map<std::string, std::string> load_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open " + path.string());
  return read_predictions(in);
}

}  // namespace typogen
