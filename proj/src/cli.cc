#include "typogen/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "typogen/artifact.h"
#include "typogen/bpe.h"
#include "typogen/corrector.h"
#include "typogen/error.h"
#include "typogen/eval.h"
#include "typogen/generator.h"
#include "typogen/keyboard.h"
#include "typogen/mining.h"
#include "typogen/stats.h"
#include "typogen/utf8.h"

namespace typogen {

namespace {

using Path = std::filesystem::path;

std::ifstream open_input(const Path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  return in;
}

std::vector<std::string> read_lines(const Path& path) {
  auto in = open_input(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string format_confidence(double confidence) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", confidence);
  return buf;
}

void write_correction(std::ostream& out, const Correction& c) {
  out << c.output << '\t' << format_confidence(c.confidence) << '\t' << (c.corrected ? "true" : "false") << '\n';
}

Correction correct_capped(const NoisyChannelCorrector& corrector, const std::string& input, double threshold,
                          std::size_t max_length) {
  if (max_length > 0 && char_count(input) >= max_length) return {input, 1.0, false};
  return corrector.correct(input, threshold);
}

struct MineOptions {
  Path log, vocab, out, report;
  MiningConfig config;
  std::string forbidden = "@_#\\";
};

struct StatsOptions {
  std::vector<Path> pairs, counts;
  std::string format = "tsv";
  Path out, counts_out;
};

struct GenOptions {
  Path input, stats, out;
  bool uniform = false;
  std::string alphabet;
  GenerationConfig config;
};

struct TransferOptions {
  Path stats, from, to, out, report;
};

struct BpeFitOptions {
  std::vector<Path> corpus;
  std::size_t target_size = 1000;
  Path out;
};

struct BpeEncodeOptions {
  Path vocab, input, ids_out, raw_out;
};

struct SplitOptions {
  Path input, out_dir;
  std::uint64_t seed = kDefaultSeed;
};

struct TrainOptions {
  Path train, stats, out;
  bool uniform = false;
  std::string alphabet;
  double smoothing = kDefaultSmoothingMass;
  CorrectorConfig config;
};

struct CorrectOptions {
  Path model, input, out;
  double threshold = 0.5;
  std::size_t max_length = kDefaultMaxInputLength;
};

struct EvalOptions {
  Path pairs, json_out, curve_csv;
  std::string format = "tsv";
  std::vector<Path> models, predictions;
  bool identity = false;
  double threshold = 0.5;
};

struct CurveOptions {
  Path model, queries, out;
  std::vector<double> thresholds = default_thresholds();
};

struct ServeOptions {
  Path model;
  double threshold = 0.5;
  std::size_t max_length = kDefaultMaxInputLength;
};

int do_mine(const MineOptions& o, std::ostream& out) {
  MiningConfig config = o.config;
  config.forbidden_chars = to_u32(o.forbidden);
  config.validate();

  Vocabulary vocabulary;
  for (auto& word : read_lines(o.vocab)) {
    std::string w = trim(word);
    if (!w.empty()) vocabulary.insert(std::move(w));
  }
  std::vector<QueryLogRecord> records;
  std::uint64_t malformed = 0;
  {
    auto in = open_input(o.log);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (auto record = parse_log_line(line)) records.push_back(std::move(*record));
      else ++malformed;
    }
  }
  MiningResult result = mine_pairs(records, vocabulary, config);
  result.report.malformed_lines += malformed;

  ArtifactMeta meta{"mine", std::nullopt, {o.log, o.vocab},
                    {{"window_size", config.window_size},
                     {"max_edit_distance", config.max_edit_distance},
                     {"popularity_ratio", config.popularity_ratio},
                     {"top_token_count", config.top_token_count},
                     {"forbidden_chars", o.forbidden}}};
  ArtifactSet artifacts(std::move(meta));
  auto& pairs = artifacts.open(o.out);
  for (const auto& [pair, count] : result.pairs) pairs << pair.typo << '\t' << pair.correct << '\n';
  const std::string report = result.report.to_json().dump(2) + "\n";
  if (!o.report.empty()) artifacts.open(o.report) << report;
  artifacts.commit_all();
  if (o.report.empty()) out << report;
  return 0;
}

int do_stats(const StatsOptions& o, std::ostream& err) {
  if (o.out.empty() && o.counts_out.empty()) throw Error("config", "give --out and/or --counts-out");
  if (o.pairs.empty() && o.counts.empty()) throw Error("config", "give --pairs and/or --counts");
  const PairFormat format = parse_pair_format(o.format);

  StatsCounts total;
  std::size_t skipped = 0;
  for (const auto& path : o.pairs) {
    StatsCounts counts;
    for (const auto& pair : load_pairs(path, format)) {
      try {
        counts.add(pair);
      } catch (const Error& e) {
        if (e.code() != "distance") throw;
        ++skipped;
      }
    }
    total = merge_stats(total, counts);
  }
  for (const auto& path : o.counts) {
    auto in = open_input(path);
    nlohmann::json json;
    try {
      in >> json;
    } catch (const nlohmann::json::exception& e) {
      throw Error("invalid_counts", path.string() + ": " + e.what());
    }
    total = merge_stats(total, counts_from_json(json));
  }
  if (skipped > 0) err << "stats: skipped " << skipped << " pairs that are not exactly one edit apart\n";

  std::vector<Path> inputs = o.pairs;
  inputs.insert(inputs.end(), o.counts.begin(), o.counts.end());
  ArtifactSet artifacts({"stats", std::nullopt, inputs, {{"format", o.format}, {"skipped_pairs", skipped}}});
  if (!o.out.empty()) artifacts.open(o.out) << to_json(normalize(total)).dump(2) << '\n';
  if (!o.counts_out.empty()) artifacts.open(o.counts_out) << to_json(total).dump(2) << '\n';
  artifacts.commit_all();
  return 0;
}

int do_gen(GenOptions o) {
  std::optional<TypoStats> stats;
  std::vector<Path> inputs{o.input};
  if (o.uniform) {
    if (!o.stats.empty()) throw Error("config", "--uniform and --stats are exclusive");
    o.config.mode = GenerationMode::Uniform;
    if (!o.alphabet.empty()) o.config.uniform_alphabet = to_u32(o.alphabet);
  } else {
    if (o.stats.empty()) throw Error("config", "realistic generation needs --stats (or pass --uniform)");
    stats = load_stats(o.stats);
    inputs.push_back(o.stats);
  }
  TypoGenerator generator(o.config, stats);
  const auto& c = generator.config();
  ArtifactSet artifacts({"gen", c.seed, inputs,
                         {{"mode", o.uniform ? "uniform" : "realistic"},
                          {"mean_typos_per_record", c.mean_typos_per_record},
                          {"max_typos_per_record", c.max_typos_per_record},
                          {"min_length", c.min_length},
                          {"uniform_alphabet", o.uniform ? to_utf8(c.uniform_alphabet) : ""}}});
  auto& out = artifacts.open(o.out);
  auto in = open_input(o.input);
  std::size_t too_short = 0;
  corrupt_corpus(in, generator, [&](const GeneratedPair& p) {
    if (char_count(p.correct) < c.min_length) ++too_short;
    out << p.typo << '\t' << p.correct << '\n';
  });
  artifacts.meta().parameters["records_below_min_length"] = too_short;
  artifacts.commit_all();
  return 0;
}

int do_transfer(const TransferOptions& o, std::ostream& out) {
  const auto result = transfer_stats(load_stats(o.stats), load_layout(o.from), load_layout(o.to));
  ArtifactSet artifacts({"transfer", std::nullopt, {o.stats, o.from, o.to}, nlohmann::json::object()});
  artifacts.open(o.out) << to_json(result.stats).dump(2) << '\n';
  const std::string report = result.report.to_json().dump(2) + "\n";
  if (!o.report.empty()) artifacts.open(o.report) << report;
  artifacts.commit_all();
  if (o.report.empty()) out << report;
  return 0;
}

// Every tab-separated field is a corpus line, so both sides of a pair file
// contribute to the vocabulary.
std::vector<std::string> corpus_fields(const std::vector<Path>& paths) {
  std::vector<std::string> corpus;
  for (const auto& path : paths) {
    for (const auto& line : read_lines(path)) {
      std::size_t start = 0;
      while (true) {
        const auto tab = line.find('\t', start);
        std::string field = line.substr(start, tab == std::string::npos ? std::string::npos : tab - start);
        if (!field.empty()) corpus.push_back(std::move(field));
        if (tab == std::string::npos) break;
        start = tab + 1;
      }
    }
  }
  return corpus;
}

int do_bpe_fit(const BpeFitOptions& o) {
  const BpeVocab vocab = fit_bpe(corpus_fields(o.corpus), o.target_size);
  ArtifactSet artifacts({"bpe-fit", std::nullopt, o.corpus, {{"target_size", o.target_size}}});
  save_vocab(vocab, artifacts.open(o.out));
  artifacts.commit_all();
  return 0;
}

int do_bpe_encode(const BpeEncodeOptions& o) {
  const BpeVocab vocab = load_vocab(o.vocab);
  const auto pairs = load_pairs(o.input, PairFormat::Tsv);
  ArtifactSet artifacts({"bpe-encode", std::nullopt, {o.vocab, o.input}, nlohmann::json::object()});
  auto& ids = artifacts.open(o.ids_out);
  auto write_ids = [&](const std::string& text) {
    const auto encoded = encode_ids(text, vocab);
    for (std::size_t i = 0; i < encoded.size(); ++i) ids << (i ? " " : "") << encoded[i];
  };
  for (const auto& pair : pairs) {
    write_ids(pair.typo);
    ids << '\t';
    write_ids(pair.correct);
    ids << '\n';
  }
  if (!o.raw_out.empty()) {
    auto& raw = artifacts.open(o.raw_out);
    for (const auto& pair : pairs) raw << pair.typo << '\t' << pair.correct << '\n';
  }
  artifacts.commit_all();
  return 0;
}

int do_split(const SplitOptions& o) {
  std::vector<std::string> lines;
  for (auto& line : read_lines(o.input))
    if (!line.empty()) lines.push_back(std::move(line));
  const DatasetSplit split = split_dataset(std::move(lines), o.seed);
  std::filesystem::create_directories(o.out_dir);
  ArtifactSet artifacts({"split", o.seed, {o.input}, {{"ratio", "100:1:1"}}});
  auto emit = [&](const char* name, const std::vector<std::string>& part) {
    auto& out = artifacts.open(o.out_dir / name);
    for (const auto& line : part) out << line << '\n';
  };
  emit("train.tsv", split.train);
  emit("valid.tsv", split.validation);
  emit("test.tsv", split.test);
  artifacts.commit_all();
  return 0;
}

int do_train(const TrainOptions& o) {
  const auto pairs = load_pairs(o.train, PairFormat::Tsv);
  std::vector<std::string> corrects;
  corrects.reserve(pairs.size());
  for (const auto& p : pairs) corrects.push_back(p.correct);
  LanguageModel lm = train(corrects, o.smoothing);

  std::vector<Path> inputs{o.train};
  std::string channel;
  TypoStats stats;
  if (o.uniform) {
    if (!o.stats.empty()) throw Error("config", "--uniform and --stats are exclusive");
    stats = uniform_stats(o.alphabet.empty() ? lm.alphabet : to_u32(o.alphabet));
    channel = "uniform";
  } else if (!o.stats.empty()) {
    stats = load_stats(o.stats);
    inputs.push_back(o.stats);
    channel = "stats";
  } else {
    // Fit the channel on the single-edit pairs of the training set itself.
    StatsCounts counts;
    for (const auto& p : pairs) {
      if (p.typo == p.correct) continue;
      try {
        counts.add(p);
      } catch (const Error& e) {
        if (e.code() != "distance") throw;
      }
    }
    stats = normalize(counts);
    channel = "fit";
  }
  NoisyChannelCorrector corrector(std::move(lm), std::move(stats), o.config);
  ArtifactSet artifacts({"train-baseline", std::nullopt, inputs,
                         {{"channel", channel}, {"max_edits", o.config.max_edits}, {"smoothing", o.smoothing}}});
  artifacts.open(o.out) << to_json(corrector).dump() << '\n';
  artifacts.commit_all();
  return 0;
}

int do_correct(const CorrectOptions& o, std::istream& in, std::ostream& out) {
  const auto corrector = load_model(o.model);
  std::optional<std::ifstream> file;
  if (!o.input.empty()) file.emplace(open_input(o.input));
  std::istream& source = file ? static_cast<std::istream&>(*file) : in;

  std::optional<ArtifactSet> artifacts;
  std::ostream* sink = &out;
  if (!o.out.empty()) {
    std::vector<Path> inputs{o.model};
    if (!o.input.empty()) inputs.push_back(o.input);
    artifacts.emplace(ArtifactMeta{"correct", std::nullopt, inputs,
                                   {{"threshold", o.threshold}, {"max_length", o.max_length}}});
    sink = &artifacts->open(o.out);
  }
  std::string line;
  while (std::getline(source, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    write_correction(*sink, correct_capped(corrector, line, o.threshold, o.max_length));
  }
  if (artifacts) artifacts->commit_all();
  return 0;
}

int do_eval(const EvalOptions& o, std::ostream& out) {
  if (o.models.empty() && o.predictions.empty() && !o.identity)
    throw Error("config", "give at least one of --model, --predictions or --identity");
  const auto pairs = load_pairs(o.pairs, parse_pair_format(o.format));
  std::vector<std::pair<std::string, EvalReport>> reports;
  std::vector<Path> inputs{o.pairs};

  std::vector<std::string> typos;
  for (const auto& p : pairs) typos.push_back(p.typo);

  for (const auto& path : o.models) {
    const auto corrector = load_model(path);
    EvalReport report = evaluate([&](std::string_view s) { return corrector.correct(s, o.threshold).output; }, pairs);
    report.curve = correction_rate_curve(corrector, typos, default_thresholds());
    reports.emplace_back(path.stem().string(), std::move(report));
    inputs.push_back(path);
  }
  for (const auto& path : o.predictions) {
    const auto table = load_predictions(path);
    auto lookup = [&](std::string_view s) -> std::string {
      auto it = table.find(std::string(s));
      if (it == table.end()) throw Error("predictions", "no prediction for '" + std::string(s) + "' in " + path.string());
      return it->second;
    };
    reports.emplace_back(path.stem().string(), evaluate(lookup, pairs));
    inputs.push_back(path);
  }
  if (o.identity) reports.emplace_back("identity", evaluate([](std::string_view s) { return std::string(s); }, pairs));

  const std::string table = format_table(reports);
  nlohmann::json json = nlohmann::json::object();
  for (const auto& [name, report] : reports) json[name] = to_json(report);

  ArtifactSet artifacts({"eval", std::nullopt, inputs, {{"threshold", o.threshold}, {"format", o.format}}});
  if (!o.json_out.empty()) artifacts.open(o.json_out) << json.dump(2) << '\n';
  if (!o.curve_csv.empty()) {
    if (o.models.empty()) throw Error("config", "--curve-csv needs a --model");
    artifacts.open(o.curve_csv) << curve_csv(reports.front().second.curve);
  }
  artifacts.commit_all();
  out << table;
  return 0;
}

int do_curve(const CurveOptions& o, std::ostream& out) {
  const auto corrector = load_model(o.model);
  std::vector<std::string> queries;
  for (auto& q : read_lines(o.queries))
    if (!q.empty()) queries.push_back(q.substr(0, q.find('\t')));
  const auto curve = correction_rate_curve(corrector, queries, o.thresholds);
  const std::string csv = curve_csv(curve);
  if (o.out.empty()) {
    out << csv;
    return 0;
  }
  ArtifactSet artifacts({"curve", std::nullopt, {o.model, o.queries}, {{"thresholds", o.thresholds}}});
  artifacts.open(o.out) << csv;
  artifacts.commit_all();
  return 0;
}

int do_serve(const ServeOptions& o, std::istream& in, std::ostream& out) {
  const auto corrector = load_model(o.model);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    write_correction(out, correct_capped(corrector, line, o.threshold, o.max_length));
    out.flush();
  }
  return 0;
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Typo mining, statistics, synthetic typo generation and baseline correction", "typogen"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  auto existing = CLI::ExistingFile;

  MineOptions mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine typo pairs from a query log");
  mine_cmd->add_option("--log", mine.log, "user_id<TAB>timestamp_ms<TAB>query lines")->required()->check(existing);
  mine_cmd->add_option("--vocab", mine.vocab, "Word list, one per line")->required()->check(existing);
  mine_cmd->add_option("--out", mine.out, "typo<TAB>correct output")->required();
  mine_cmd->add_option("--report", mine.report, "Mining report JSON (default: stdout)");
  mine_cmd->add_option("--window", mine.config.window_size, "Subsequent queries considered")->capture_default_str();
  mine_cmd->add_option("--max-distance", mine.config.max_edit_distance)->capture_default_str();
  mine_cmd->add_option("--popularity-ratio", mine.config.popularity_ratio)->capture_default_str();
  mine_cmd->add_option("--top-tokens", mine.config.top_token_count)->capture_default_str();
  mine_cmd->add_option("--forbidden", mine.forbidden, "Characters that disqualify a pair")->capture_default_str();

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Extract or merge typo statistics");
  stats_cmd->add_option("--pairs", stats.pairs, "Pair files (repeatable)")->check(existing);
  stats_cmd->add_option("--format", stats.format, "tsv, birkbeck or wikipedia")->capture_default_str();
  stats_cmd->add_option("--counts", stats.counts, "Partial count files to merge (repeatable)")->check(existing);
  stats_cmd->add_option("--out", stats.out, "Normalized stats JSON");
  stats_cmd->add_option("--counts-out", stats.counts_out, "Raw counts JSON for later merging");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Corrupt a corpus into typo<TAB>correct pairs");
  gen_cmd->add_option("--input", gen.input, "One record per line")->required()->check(existing);
  gen_cmd->add_option("--out", gen.out)->required();
  gen_cmd->add_option("--stats", gen.stats, "Stats JSON for realistic generation")->check(existing);
  gen_cmd->add_flag("--uniform", gen.uniform, "Uniform types, positions and characters");
  gen_cmd->add_option("--alphabet", gen.alphabet, "Characters for --uniform (default: English letters)");
  gen_cmd->add_option("--seed", gen.config.seed)->capture_default_str();
  gen_cmd->add_option("--mean", gen.config.mean_typos_per_record, "Mean edits per record")->capture_default_str();
  gen_cmd->add_option("--max-edits", gen.config.max_typos_per_record, "Edits per record cap")->capture_default_str();
  gen_cmd->add_option("--min-length", gen.config.min_length, "Shorter records stay unchanged")->capture_default_str();

  TransferOptions transfer;
  auto* transfer_cmd = app.add_subcommand("transfer", "Map stats onto another keyboard layout");
  transfer_cmd->add_option("--stats", transfer.stats)->required()->check(existing);
  transfer_cmd->add_option("--from", transfer.from, "Source layout JSON")->required()->check(existing);
  transfer_cmd->add_option("--to", transfer.to, "Target layout JSON")->required()->check(existing);
  transfer_cmd->add_option("--out", transfer.out)->required();
  transfer_cmd->add_option("--report", transfer.report, "Transfer report JSON (default: stdout)");

  BpeFitOptions bpe_fit;
  auto* bpe_fit_cmd = app.add_subcommand("bpe-fit", "Learn BPE merges");
  bpe_fit_cmd->add_option("--corpus", bpe_fit.corpus, "Text or pair files (repeatable)")->required()->check(existing);
  bpe_fit_cmd->add_option("--target-size", bpe_fit.target_size, "Alphabet plus merges")->capture_default_str();
  bpe_fit_cmd->add_option("--out", bpe_fit.out)->required();

  BpeEncodeOptions bpe_encode;
  auto* bpe_encode_cmd = app.add_subcommand("bpe-encode", "Encode a pair file into token ids");
  bpe_encode_cmd->add_option("--vocab", bpe_encode.vocab)->required()->check(existing);
  bpe_encode_cmd->add_option("--input", bpe_encode.input, "typo<TAB>correct pairs")->required()->check(existing);
  bpe_encode_cmd->add_option("--ids-out", bpe_encode.ids_out)->required();
  bpe_encode_cmd->add_option("--raw-out", bpe_encode.raw_out);

  SplitOptions split;
  auto* split_cmd = app.add_subcommand("split", "Shuffle and split 100:1:1");
  split_cmd->add_option("--input", split.input)->required()->check(existing);
  split_cmd->add_option("--out-dir", split.out_dir, "Receives train.tsv, valid.tsv and test.tsv")->required();
  split_cmd->add_option("--seed", split.seed)->capture_default_str();

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train-baseline", "Build a noisy-channel corrector from a pair file");
  train_cmd->add_option("--train", train_opts.train, "typo<TAB>correct pairs")->required()->check(existing);
  train_cmd->add_option("--out", train_opts.out, "Model JSON")->required();
  train_cmd->add_option("--stats", train_opts.stats, "Channel stats (default: fit on the training pairs)")
      ->check(existing);
  train_cmd->add_flag("--uniform", train_opts.uniform, "Uniform channel");
  train_cmd->add_option("--alphabet", train_opts.alphabet, "Characters of the uniform channel");
  train_cmd->add_option("--smoothing", train_opts.smoothing, "Probability of an unseen token")->capture_default_str();
  train_cmd->add_option("--max-edits", train_opts.config.max_edits)->capture_default_str();
  train_cmd->add_option("--candidate-cap", train_opts.config.candidate_cap)->capture_default_str();
  train_cmd->add_option("--mean", train_opts.config.mean_typos_per_record)->capture_default_str();
  train_cmd->add_option("--max-typos", train_opts.config.max_typos_per_record)->capture_default_str();
  train_cmd->add_option("--min-length", train_opts.config.min_length)->capture_default_str();

  CorrectOptions correct_opts;
  auto* correct_cmd = app.add_subcommand("correct", "Correct queries from a file or standard input");
  correct_cmd->add_option("--model", correct_opts.model)->required()->check(existing);
  correct_cmd->add_option("--input", correct_opts.input)->check(existing);
  correct_cmd->add_option("--out", correct_opts.out, "output<TAB>confidence<TAB>corrected lines");
  correct_cmd->add_option("--threshold", correct_opts.threshold)->capture_default_str();
  correct_cmd->add_option("--max-length", correct_opts.max_length, "Longer inputs pass through; 0 disables")
      ->capture_default_str();

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Typo and identity accuracy");
  eval_cmd->add_option("--pairs", eval.pairs)->required()->check(existing);
  eval_cmd->add_option("--format", eval.format, "tsv, birkbeck or wikipedia")->capture_default_str();
  eval_cmd->add_option("--model", eval.models, "Model JSON (repeatable)")->check(existing);
  eval_cmd->add_option("--predictions", eval.predictions, "input<TAB>prediction files (repeatable)")->check(existing);
  eval_cmd->add_flag("--identity", eval.identity, "Also score the identity corrector");
  eval_cmd->add_option("--threshold", eval.threshold)->capture_default_str();
  eval_cmd->add_option("--json-out", eval.json_out);
  eval_cmd->add_option("--curve-csv", eval.curve_csv, "Curve of the first model on the typo side");

  CurveOptions curve;
  auto* curve_cmd = app.add_subcommand("curve", "Correction rate against confidence threshold");
  curve_cmd->add_option("--model", curve.model)->required()->check(existing);
  curve_cmd->add_option("--queries", curve.queries, "One query per line (first column)")->required()->check(existing);
  curve_cmd->add_option("--thresholds", curve.thresholds)->delimiter(',');
  curve_cmd->add_option("--out", curve.out, "CSV (default: stdout)");

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Correct standard input line by line");
  serve_cmd->add_option("--model", serve.model)->required()->check(existing);
  serve_cmd->add_option("--threshold", serve.threshold)->capture_default_str();
  serve_cmd->add_option("--max-length", serve.max_length, "Longer inputs pass through; 0 disables")
      ->capture_default_str();

  std::string name = "typogen";
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    name = app.get_subcommands().front()->get_name();

    if (mine_cmd->parsed()) return do_mine(mine, out);
    if (stats_cmd->parsed()) return do_stats(stats, err);
    if (gen_cmd->parsed()) return do_gen(gen);
    if (transfer_cmd->parsed()) return do_transfer(transfer, out);
    if (bpe_fit_cmd->parsed()) return do_bpe_fit(bpe_fit);
    if (bpe_encode_cmd->parsed()) return do_bpe_encode(bpe_encode);
    if (split_cmd->parsed()) return do_split(split);
    if (train_cmd->parsed()) return do_train(train_opts);
    if (correct_cmd->parsed()) return do_correct(correct_opts, in, out);
    if (eval_cmd->parsed()) return do_eval(eval, out);
    if (curve_cmd->parsed()) return do_curve(curve, out);
    if (serve_cmd->parsed()) return do_serve(serve, in, out);
    return 1;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    for (auto* sub : app.get_subcommands()) name = sub->get_name();
    err << "error: " << name << ": usage: " << one_line(e.what()) << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << name << ": " << e.code() << ": " << one_line(e.what()) << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << name << ": invalid_json: " << one_line(e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << name << ": internal: " << one_line(e.what()) << '\n';
    return 1;
  }
}

}  // namespace typogen
