// comet: reproducible ensemble classification and analysis runs over
// comment corpora. Every command writes its outputs plus a manifest.json
// into --out.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "comet/baseline.hpp"
#include "comet/correlate.hpp"
#include "comet/corpus.hpp"
#include "comet/csv.hpp"
#include "comet/ensemble.hpp"
#include "comet/error.hpp"
#include "comet/evaluate.hpp"
#include "comet/format.hpp"
#include "comet/lexicon.hpp"
#include "comet/manifest.hpp"
#include "comet/report.hpp"
#include "comet/semfeat.hpp"
#include "comet/version.hpp"
#include "comet/wordnet.hpp"

#include <json.hpp>

namespace fs = std::filesystem;
using namespace comet;

namespace {

struct OutputDir {
  fs::path dir;
  std::vector<std::string> written;

  void write(const std::string& name, std::string_view contents) {
    fs::create_directories(dir);
    write_file((dir / name).string(), contents);
    written.push_back(name);
  }
};

void finish_manifest(OutputDir& out, RunManifest manifest) {
  manifest.version = kVersion;
  manifest.outputs = out.written;
  fs::create_directories(out.dir);
  write_file((out.dir / "manifest.json").string(), manifest.to_json());
}

CorpusSchema schema_from_flags(const std::vector<std::string>& mappings) {
  CorpusSchema schema;
  for (const std::string& mapping : mappings) {
    std::size_t eq = mapping.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == mapping.size())
      throw UsageError("--schema expects canonical=actual, got '" + mapping + "'");
    schema.columns[mapping.substr(0, eq)] = mapping.substr(eq + 1);
  }
  return schema;
}

std::vector<CommentRecord> load_corpus(const std::string& path,
                                       const CorpusSchema& schema) {
  return parse_corpus(read_file(path), schema, path);
}

PredictionMatrix load_predictions(const std::vector<std::string>& paths) {
  if (paths.empty()) throw UsageError("at least one --predictions file is required");
  PredictionMatrix matrix;
  bool first = true;
  for (const std::string& path : paths) {
    PredictionMatrix part = PredictionMatrix::from_jsonl(read_file(path), path);
    if (first && paths.size() == 1) {
      matrix = std::move(part);
      break;
    }
    first = false;
    for (std::size_t m = 0; m < part.models().size(); ++m)
      for (std::size_t c = 0; c < part.comments().size(); ++c)
        if (part.has(m, c))
          matrix.add(part.models()[m], part.comments()[c], part.probs(m, c));
  }
  matrix.validate();
  return matrix;
}

std::pair<std::string, std::string> resolve_roles(const PredictionMatrix& matrix,
                                                  std::string model_a,
                                                  std::string model_b) {
  if (model_a.empty() != model_b.empty())
    throw UsageError("--model-a and --model-b must be given together");
  if (model_a.empty()) {
    if (matrix.models().size() != 2)
      throw UsageError("prediction matrix holds " +
                       std::to_string(matrix.models().size()) +
                       " models; pass --model-a and --model-b");
    model_a = matrix.models()[0];
    model_b = matrix.models()[1];
  } else {
    matrix.model_index(model_a);
    matrix.model_index(model_b);
  }
  if (model_a == model_b) throw UsageError("model roles must differ");
  return {model_a, model_b};
}

std::array<WeightPair, kLabelCount> parse_weights_flag(const std::string& text) {
  std::array<WeightPair, kLabelCount> weights;
  std::size_t pos = 0, index = 0;
  while (index < kLabelCount) {
    std::size_t comma = text.find(',', pos);
    std::string pair_text =
        comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
    std::size_t colon = pair_text.find(':');
    if (colon == std::string::npos)
      throw UsageError("--weights expects six w_a:w_b pairs in label order");
    auto w_a = try_parse_double(pair_text.substr(0, colon));
    auto w_b = try_parse_double(pair_text.substr(colon + 1));
    if (!w_a || !w_b)
      throw UsageError("bad weight pair '" + pair_text + "'");
    weights[index++] = make_weight_pair(*w_a, *w_b);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (index != kLabelCount)
    throw UsageError("--weights expects exactly six pairs, got " + std::to_string(index));
  return weights;
}

std::string sanitize_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))
      out.push_back(c);
    else if (c >= 'A' && c <= 'Z')
      out.push_back(static_cast<char>(c - 'A' + 'a'));
    else if (!out.empty() && out.back() != '_')
      out.push_back('_');
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "config" : out;
}

struct ConfigFlags {
  std::vector<std::string> presets;
  std::string weights;
  std::vector<std::string> weight_files;
  bool all_presets = false;
  bool include_base = false;
  double tau = 0.5;

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", presets, "Preset configuration (Model 1 .. Model 5)");
    cmd->add_option("--weights", weights,
                    "Six w_a:w_b pairs in label order, e.g. 0.5:0.5,0.1:0.9,...");
    cmd->add_option("--weights-file", weight_files, "Saved ensemble config JSON");
    cmd->add_flag("--all-presets", all_presets, "Evaluate all five presets");
    cmd->add_flag("--include-base", include_base,
                  "Also evaluate each base model on its own");
    cmd->add_option("--tau", tau, "Decision threshold")->check(CLI::Range(0.0, 1.0));
  }

  std::vector<EnsembleConfig> collect(bool required) const {
    if (!(tau > 0.0 && tau < 1.0))
      throw UsageError("--tau must lie strictly inside (0,1)");
    std::vector<EnsembleConfig> configs;
    if (all_presets)
      for (EnsembleConfig& config : preset_configs()) configs.push_back(std::move(config));
    for (const std::string& name : presets) configs.push_back(preset_config(name));
    if (!weights.empty()) {
      EnsembleConfig config;
      config.name = "custom";
      config.weights = parse_weights_flag(weights);
      configs.push_back(std::move(config));
    }
    for (const std::string& path : weight_files)
      configs.push_back(ensemble_config_from_json(read_file(path), path));
    if (include_base) {
      EnsembleConfig a, b;
      a.name = "base_model_a";
      b.name = "base_model_b";
      for (std::size_t l = 0; l < kLabelCount; ++l) {
        a.weights[l] = make_weight_pair(1.0, 0.0);
        b.weights[l] = make_weight_pair(0.0, 1.0);
      }
      configs.push_back(std::move(a));
      configs.push_back(std::move(b));
    }
    for (EnsembleConfig& config : configs) config.threshold = tau;
    if (required && configs.empty())
      throw UsageError("no configuration given; pass --preset, --weights, "
                       "--weights-file or --all-presets");
    return configs;
  }
};

void warn_if_empty(const WordSet& words, const std::string& path) {
  if (words.empty())
    std::cerr << "warning: lexicon '" << path << "' is empty\n";
}

// ---------------------------------------------------------------- stats ----

struct StatsArgs {
  std::string corpus;
  std::vector<std::string> schema;
  std::string format = "csv";
  std::string out = ".";
};

void run_stats(const StatsArgs& args) {
  const ReportFormat format = report_format_from_name(args.format);
  const std::string ext(report_format_extension(format));
  const CorpusSchema schema = schema_from_flags(args.schema);
  const std::vector<CommentRecord> records = load_corpus(args.corpus, schema);

  OutputDir out{args.out, {}};
  const DatasetSummary summary = summarize(records);
  out.write("summary." + ext, render_summary(summary, format));

  if (summary.label_positive_rate) {
    out.write("label_distribution." + ext,
              render_label_distribution(label_distribution(records), format));
    out.write("weekday." + ext, render_weekday_table(weekday_breakdown(records), format));
  } else {
    std::cerr << "note: corpus is unlabeled; label reports skipped\n";
  }

  RunManifest manifest;
  manifest.command = "stats";
  manifest.parameters = {{"format", args.format}};
  for (const std::string& mapping : args.schema)
    manifest.parameters.emplace_back("schema", mapping);
  manifest.add_input(args.corpus);
  finish_manifest(out, std::move(manifest));
}

// ---------------------------------------------------------------- train ----

struct TrainArgs {
  std::string corpus;
  std::vector<std::string> schema;
  std::string model_id = "baseline";
  std::uint64_t seed = 1;
  int epochs = 5;
  double lr = 0.1;
  double l2 = 1e-6;
  int ngram = 2;
  std::string out = ".";
};

void run_train(const TrainArgs& args) {
  const CorpusSchema schema = schema_from_flags(args.schema);
  const std::vector<CommentRecord> records = load_corpus(args.corpus, schema);

  TrainConfig config;
  config.learning_rate = args.lr;
  config.epochs = args.epochs;
  config.l2 = args.l2;
  config.seed = args.seed;
  config.ngram_order = args.ngram;

  const LabelModels models = train_all_labels(records, config);

  OutputDir out{args.out, {}};
  for (std::size_t l = 0; l < kLabelCount; ++l)
    out.write(args.model_id + "." + std::string(kLabelNames[l]) + ".model.json",
              serialize_model(models.models[l]));

  PredictionMatrix matrix;
  predict_into_matrix(models, records, args.model_id, matrix);
  out.write(args.model_id + ".predictions.jsonl", matrix.to_jsonl());

  RunManifest manifest;
  manifest.command = "train";
  manifest.parameters = {{"model_id", args.model_id},
                         {"seed", std::to_string(args.seed)},
                         {"epochs", std::to_string(args.epochs)},
                         {"learning_rate", format_double(args.lr)},
                         {"l2", format_double(args.l2)},
                         {"ngram", std::to_string(args.ngram)}};
  manifest.seed = args.seed;
  manifest.add_input(args.corpus);
  finish_manifest(out, std::move(manifest));
}

// ------------------------------------------------------------- ensemble ----

struct EnsembleArgs {
  std::vector<std::string> predictions;
  std::string model_a, model_b;
  ConfigFlags config;
  std::string gold;
  std::vector<std::string> schema;
  bool system_runs = false;
  std::string format = "csv";
  std::string out = ".";
};

void run_ensemble(const EnsembleArgs& args) {
  const ReportFormat format = report_format_from_name(args.format);
  const std::string ext(report_format_extension(format));
  PredictionMatrix matrix = load_predictions(args.predictions);
  auto [model_a, model_b] = resolve_roles(matrix, args.model_a, args.model_b);

  GoldLabels gold;
  if (!args.gold.empty())
    gold = gold_from_records(load_corpus(args.gold, schema_from_flags(args.schema)));

  struct Run {
    std::string file;
    EnsembleConfig config;
  };
  std::vector<Run> runs;
  if (args.system_runs) {
    // Runs 1..5 are the presets; 6 and 7 threshold the base models directly.
    std::vector<EnsembleConfig> presets = preset_configs();
    for (std::size_t i = 0; i < presets.size(); ++i) {
      presets[i].threshold = args.config.tau;
      runs.push_back({"system_run_" + std::to_string(i + 1) + ".csv", presets[i]});
    }
    EnsembleConfig base_a, base_b;
    base_a.name = model_a;
    base_b.name = model_b;
    base_a.threshold = base_b.threshold = args.config.tau;
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      base_a.weights[l] = make_weight_pair(1.0, 0.0);
      base_b.weights[l] = make_weight_pair(0.0, 1.0);
    }
    runs.push_back({"system_run_6.csv", std::move(base_a)});
    runs.push_back({"system_run_7.csv", std::move(base_b)});
  } else {
    for (EnsembleConfig& config : args.config.collect(true))
      runs.push_back({"run_" + sanitize_name(config.name) + ".csv", std::move(config)});
  }

  OutputDir out{args.out, {}};
  for (const Run& run : runs) {
    std::vector<LabelSet> predictions =
        ensemble_predict(matrix, run.config, model_a, model_b);
    out.write(run.file, run_to_csv(matrix.comments(), predictions));

    if (!gold.empty()) {
      ComparisonTable table =
          compare_models(matrix, gold, std::span(&run.config, 1), model_a, model_b);
      out.write("metrics_" + sanitize_name(run.config.name) + "." + ext,
                render_per_label(table.rows[0], format));
    }
  }

  RunManifest manifest;
  manifest.command = "ensemble";
  manifest.parameters = {{"model_a", model_a},
                         {"model_b", model_b},
                         {"tau", format_double(args.config.tau)},
                         {"system_runs", args.system_runs ? "true" : "false"},
                         {"format", args.format}};
  for (const std::string& path : args.predictions) manifest.add_input(path);
  if (!args.gold.empty()) manifest.add_input(args.gold);
  finish_manifest(out, std::move(manifest));
}

// ------------------------------------------------------------- evaluate ----

struct EvaluateArgs {
  std::string corpus;
  std::vector<std::string> predictions;
  std::string gold;
  std::vector<std::string> schema;
  ConfigFlags config;
  std::size_t k = 10;
  std::uint64_t seed = 0;
  std::string stratify_label;
  std::string model_a, model_b;
  std::uint64_t seed_a = 1, seed_b = 2;
  int ngram_a = 2, ngram_b = 1;
  int epochs = 5;
  double lr = 0.1;
  double l2 = 1e-6;
  std::string format = "csv";
  std::string out = ".";
};

void run_evaluate(const EvaluateArgs& args) {
  const ReportFormat format = report_format_from_name(args.format);
  const std::string ext(report_format_extension(format));
  const bool corpus_mode = !args.corpus.empty();
  if (corpus_mode == !args.predictions.empty())
    throw UsageError("pass either --corpus (cross-validation) or --predictions "
                     "(direct comparison), not both");

  std::vector<EnsembleConfig> configs = args.config.collect(true);
  OutputDir out{args.out, {}};
  RunManifest manifest;
  manifest.command = "evaluate";

  if (corpus_mode) {
    const std::vector<CommentRecord> records =
        load_corpus(args.corpus, schema_from_flags(args.schema));
    if (args.k < 2 || args.k > records.size())
      throw UsageError("k=" + std::to_string(args.k) + " needs 2 <= k <= " +
                       std::to_string(records.size()) + " records");

    std::vector<std::string> ids;
    ids.reserve(records.size());
    for (const CommentRecord& rec : records) ids.push_back(rec.id);

    FoldAssignment folds;
    if (args.stratify_label.empty()) {
      folds = kfold_split(ids, args.k, args.seed);
    } else {
      auto label = label_from_name(args.stratify_label);
      if (!label) throw UsageError("unknown label '" + args.stratify_label + "'");
      std::vector<std::uint8_t> strata;
      strata.reserve(records.size());
      for (const CommentRecord& rec : records) {
        if (!rec.labels) throw DataError("record '" + rec.id + "' is missing labels");
        strata.push_back((*rec.labels)[*label]);
      }
      folds = kfold_split_stratified(ids, strata, args.k, args.seed);
    }

    TrainConfig config_a{args.lr, args.epochs, args.l2, args.seed_a, args.ngram_a};
    TrainConfig config_b{args.lr, args.epochs, args.l2, args.seed_b, args.ngram_b};
    const Trainer trainer = make_baseline_trainer(config_a, config_b);

    ComparisonTable table;
    for (const EnsembleConfig& config : configs) {
      CrossValidationReport report = cross_validate(records, trainer, config, folds);
      out.write("cv_report_" + sanitize_name(config.name) + ".json",
                render_cv_report(report, config, args.k, args.seed));
      ComparisonRow row;
      row.name = config.name;
      row.label_averaged = report.mean;
      // Per-label cells averaged over folds, matching the fold aggregation.
      for (std::size_t l = 0; l < kLabelCount; ++l) {
        MetricReport sum;
        for (const FoldReport& fold : report.folds) {
          sum.accuracy += fold.per_label[l].accuracy;
          sum.precision1 += fold.per_label[l].precision1;
          sum.recall1 += fold.per_label[l].recall1;
          sum.f1 += fold.per_label[l].f1;
          sum.acc_and_f1 += fold.per_label[l].acc_and_f1;
        }
        const double k = static_cast<double>(report.folds.size());
        row.per_label[l] = {sum.accuracy / k, sum.precision1 / k, sum.recall1 / k,
                            sum.f1 / k, sum.acc_and_f1 / k};
      }
      table.rows.push_back(std::move(row));
    }
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const ComparisonRow& a, const ComparisonRow& b) {
                       return a.label_averaged.acc_and_f1 > b.label_averaged.acc_and_f1;
                     });
    out.write("comparison." + ext, render_comparison(table, format));

    manifest.parameters = {{"mode", "cross-validation"},
                           {"k", std::to_string(args.k)},
                           {"seed", std::to_string(args.seed)},
                           {"stratify_label", args.stratify_label},
                           {"seed_a", std::to_string(args.seed_a)},
                           {"seed_b", std::to_string(args.seed_b)},
                           {"ngram_a", std::to_string(args.ngram_a)},
                           {"ngram_b", std::to_string(args.ngram_b)},
                           {"epochs", std::to_string(args.epochs)},
                           {"learning_rate", format_double(args.lr)},
                           {"l2", format_double(args.l2)},
                           {"tau", format_double(args.config.tau)},
                           {"format", args.format}};
    manifest.seed = args.seed;
    manifest.add_input(args.corpus);
  } else {
    if (args.gold.empty()) throw UsageError("--predictions mode needs --gold");
    PredictionMatrix matrix = load_predictions(args.predictions);
    auto [model_a, model_b] = resolve_roles(matrix, args.model_a, args.model_b);
    GoldLabels gold = gold_from_records(load_corpus(args.gold, schema_from_flags(args.schema)));

    ComparisonTable table = compare_models(matrix, gold, configs, model_a, model_b);
    out.write("comparison." + ext, render_comparison(table, format));
    for (const ComparisonRow& row : table.rows)
      out.write("per_label_" + sanitize_name(row.name) + "." + ext,
                render_per_label(row, format));

    manifest.parameters = {{"mode", "direct"},
                           {"model_a", model_a},
                           {"model_b", model_b},
                           {"tau", format_double(args.config.tau)},
                           {"format", args.format}};
    for (const std::string& path : args.predictions) manifest.add_input(path);
    manifest.add_input(args.gold);
  }
  finish_manifest(out, std::move(manifest));
}

// ----------------------------------------------------------- gridsearch ----

struct GridSearchArgs {
  std::vector<std::string> predictions;
  std::string gold;
  std::vector<std::string> schema;
  std::string model_a, model_b;
  double step = 0.1;
  std::string objective = "acc_and_f1";
  double tau = 0.5;
  std::string format = "csv";
  std::string out = ".";
};

std::string render_grid_result(const GridSearchResult& result, Objective objective,
                               ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json obj;
    obj["objective"] = std::string(objective_name(objective));
    obj["candidates_per_label"] = result.candidates;
    nlohmann::ordered_json labels;
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      nlohmann::ordered_json row;
      row["w_a"] = result.config.weights[l].w_a;
      row["w_b"] = result.config.weights[l].w_b;
      row["objective"] = result.objective[l];
      row["accuracy"] = result.report[l].accuracy;
      row["precision1"] = result.report[l].precision1;
      row["recall1"] = result.report[l].recall1;
      row["f1"] = result.report[l].f1;
      row["acc_and_f1"] = result.report[l].acc_and_f1;
      labels[std::string(kLabelNames[l])] = std::move(row);
    }
    obj["labels"] = std::move(labels);
    return obj.dump(2) + "\n";
  }

  const bool md = format == ReportFormat::Markdown;
  csv::Row header{md ? "Label" : "label", "w_a", "w_b", "objective", "f1"};
  std::vector<csv::Row> rows;
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    auto value = [&](double v) { return md ? format_fixed(v, 3) : format_double(v); };
    rows.push_back({std::string(md ? kLabelTitles[l] : kLabelNames[l]),
                    format_double(result.config.weights[l].w_a),
                    format_double(result.config.weights[l].w_b),
                    value(result.objective[l]), value(result.report[l].f1)});
  }
  if (md) {
    std::string out = "objective: " + std::string(objective_name(objective)) + "\n\n";
    std::string table = out;
    table += "|";
    for (const std::string& h : header) table += " " + h + " |";
    table += "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) table += " --- |";
    table += "\n";
    for (const csv::Row& row : rows) {
      table += "|";
      for (const std::string& cell : row) table += " " + cell + " |";
      table += "\n";
    }
    return table;
  }
  std::string out = csv::format_row(header);
  for (const csv::Row& row : rows) out += csv::format_row(row);
  return out;
}

void run_gridsearch(const GridSearchArgs& args) {
  const ReportFormat format = report_format_from_name(args.format);
  const std::string ext(report_format_extension(format));
  PredictionMatrix matrix = load_predictions(args.predictions);
  auto [model_a, model_b] = resolve_roles(matrix, args.model_a, args.model_b);
  if (args.gold.empty()) throw UsageError("--gold is required");
  GoldLabels gold = gold_from_records(load_corpus(args.gold, schema_from_flags(args.schema)));
  const Objective objective = objective_from_name(args.objective);

  GridSearchResult result =
      grid_search(matrix, gold, model_a, model_b, args.step, objective, args.tau);

  OutputDir out{args.out, {}};
  out.write("best_config.json", ensemble_config_to_json(result.config));
  out.write("gridsearch." + ext, render_grid_result(result, objective, format));

  RunManifest manifest;
  manifest.command = "gridsearch";
  manifest.parameters = {{"model_a", model_a},
                         {"model_b", model_b},
                         {"step", format_double(args.step)},
                         {"objective", args.objective},
                         {"tau", format_double(args.tau)},
                         {"format", args.format}};
  for (const std::string& path : args.predictions) manifest.add_input(path);
  manifest.add_input(args.gold);
  finish_manifest(out, std::move(manifest));
}

// ------------------------------------------------------------- features ----

struct FeaturesArgs {
  std::string corpus;
  std::vector<std::string> schema;
  std::string config_path;
  std::string wordnet_dir;
  std::string positive_path;
  std::string negative_path;
  std::string subjectivity_path;
  std::string polarity_path;
  std::string out = ".";
};

// Externally computed polarity confidences, id -> value in [0,1]. They
// replace the lexicon-ratio score for the listed comments.
std::unordered_map<std::string, double> load_polarity_overrides(const std::string& path) {
  const csv::Table table = csv::parse(read_file(path), path);
  if (table.header != csv::Row{"id", "positive_polarity_confidence"})
    throw ParseError(path, 1, "expected header id,positive_polarity_confidence");
  std::unordered_map<std::string, double> overrides;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t line = table.row_lines[r];
    if (table.rows[r].size() != 2) throw ParseError(path, line, "wrong field count");
    const auto value = try_parse_double(table.rows[r][1]);
    if (!value || !(*value >= 0.0 && *value <= 1.0))
      throw ParseError(path, line, "confidence '" + table.rows[r][1] + "' outside [0,1]");
    if (!overrides.emplace(table.rows[r][0], *value).second)
      throw DataError("duplicate polarity override for '" + table.rows[r][0] + "'");
  }
  return overrides;
}

// Plain key=value lines; '#' starts a comment. Flags take precedence.
void apply_resource_config(FeaturesArgs& args) {
  if (args.config_path.empty()) return;
  const std::string text = read_file(args.config_path);
  std::map<std::string, std::string> values;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError(args.config_path, line_no, "expected key=value");
    values[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto fill = [&](std::string& target, const char* key) {
    if (target.empty() && values.count(key)) target = values.at(key);
  };
  fill(args.wordnet_dir, "wordnet");
  fill(args.positive_path, "positive");
  fill(args.negative_path, "negative");
  fill(args.subjectivity_path, "subjectivity");
}

void run_features(FeaturesArgs args) {
  apply_resource_config(args);
  auto demand = [](const std::string& value, const char* name) {
    if (value.empty())
      throw UsageError(std::string(name) + " is required (flag or config file)");
  };
  demand(args.wordnet_dir, "--wordnet");
  demand(args.positive_path, "--positive");
  demand(args.negative_path, "--negative");
  demand(args.subjectivity_path, "--subjectivity");

  const std::vector<CommentRecord> records =
      load_corpus(args.corpus, schema_from_flags(args.schema));

  const SenseTaxonomy taxonomy = load_wordnet_dir(args.wordnet_dir);
  Lexicons lexicons;
  lexicons.positive = parse_opinion_lexicon(read_file(args.positive_path));
  lexicons.negative = parse_opinion_lexicon(read_file(args.negative_path));
  lexicons.subjective =
      parse_subjectivity_clues(read_file(args.subjectivity_path), args.subjectivity_path);
  warn_if_empty(lexicons.positive, args.positive_path);
  warn_if_empty(lexicons.negative, args.negative_path);
  warn_if_empty(lexicons.subjective, args.subjectivity_path);

  std::unordered_map<std::string, double> polarity_overrides;
  if (!args.polarity_path.empty())
    polarity_overrides = load_polarity_overrides(args.polarity_path);

  std::vector<std::string> ids;
  std::vector<FeatureVector> features;
  ids.reserve(records.size());
  features.reserve(records.size());
  std::size_t overrides_used = 0;
  for (const CommentRecord& rec : records) {
    ids.push_back(rec.id);
    FeatureVector f = extract_features(rec.text, taxonomy, lexicons);
    if (auto it = polarity_overrides.find(rec.id); it != polarity_overrides.end()) {
      f.positive_polarity_confidence = it->second;
      ++overrides_used;
    }
    features.push_back(f);
  }
  if (overrides_used != polarity_overrides.size())
    throw DataError("polarity file names " +
                    std::to_string(polarity_overrides.size() - overrides_used) +
                    " comments absent from the corpus");

  OutputDir out{args.out, {}};
  out.write("features.csv", features_to_csv(ids, features));

  RunManifest manifest;
  manifest.command = "features";
  manifest.parameters = {{"wordnet", args.wordnet_dir}};
  manifest.add_input(args.corpus);
  for (const char* part : {"noun", "verb", "adj", "adv"}) {
    const std::string index_path = args.wordnet_dir + "/index." + part;
    const std::string data_path = args.wordnet_dir + "/data." + part;
    if (fs::exists(index_path)) manifest.add_input(index_path);
    if (fs::exists(data_path)) manifest.add_input(data_path);
  }
  manifest.add_input(args.positive_path);
  manifest.add_input(args.negative_path);
  manifest.add_input(args.subjectivity_path);
  if (!args.polarity_path.empty()) manifest.add_input(args.polarity_path);
  finish_manifest(out, std::move(manifest));
}

// ------------------------------------------------------------ correlate ----

struct CorrelateArgs {
  std::string corpus;
  std::vector<std::string> schema;
  std::string features_path;
  std::string format = "csv";
  std::string out = ".";
};

void run_correlate(const CorrelateArgs& args) {
  const ReportFormat format = report_format_from_name(args.format);
  const std::string ext(report_format_extension(format));
  const std::vector<CommentRecord> records =
      load_corpus(args.corpus, schema_from_flags(args.schema));

  OutputDir out{args.out, {}};
  const bool labeled = !records.empty() && records.front().labels.has_value();
  if (labeled) {
    const auto label_results = correlate_labels(records);
    out.write("label_correlations." + ext,
              render_correlations(std::span(label_results.data(), label_results.size()),
                                  format));
  } else if (args.features_path.empty()) {
    throw DataError("corpus is unlabeled; pass --features for feature correlations");
  } else {
    std::cerr << "note: corpus is unlabeled; label correlation report skipped\n";
  }

  if (!args.features_path.empty()) {
    const FeatureFile file =
        features_from_csv(read_file(args.features_path), args.features_path);
    std::unordered_map<std::string_view, const FeatureVector*> by_id;
    for (std::size_t i = 0; i < file.ids.size(); ++i)
      by_id[file.ids[i]] = &file.features[i];
    std::vector<FeatureVector> aligned;
    aligned.reserve(records.size());
    for (const CommentRecord& rec : records) {
      auto it = by_id.find(rec.id);
      if (it == by_id.end())
        throw DataError("features file has no row for comment '" + rec.id + "'");
      aligned.push_back(*it->second);
    }
    const auto feature_results = correlate_features(records, aligned);
    out.write(
        "feature_correlations." + ext,
        render_correlations(std::span(feature_results.data(), feature_results.size()),
                            format));
  }

  RunManifest manifest;
  manifest.command = "correlate";
  manifest.parameters = {{"format", args.format}};
  manifest.add_input(args.corpus);
  if (!args.features_path.empty()) manifest.add_input(args.features_path);
  finish_manifest(out, std::move(manifest));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"comet: ensemble classification and analysis over comment corpora"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.footer("Exit codes: 0 success, 2 usage error, 3 parse error, 4 data error.");

  StatsArgs stats_args;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Corpus statistics reports");
  stats_cmd->add_option("--corpus", stats_args.corpus, "Corpus CSV")->required();
  stats_cmd->add_option("--schema", stats_args.schema, "Column mapping canonical=actual");
  stats_cmd->add_option("--format", stats_args.format, "csv|json|markdown");
  stats_cmd->add_option("--out", stats_args.out, "Output directory");

  TrainArgs train_args;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Train per-label baseline models and export predictions");
  train_cmd->add_option("--corpus", train_args.corpus, "Labeled corpus CSV")->required();
  train_cmd->add_option("--schema", train_args.schema, "Column mapping canonical=actual");
  train_cmd->add_option("--model-id", train_args.model_id, "Model id for the output files");
  train_cmd->add_option("--seed", train_args.seed, "Training seed");
  train_cmd->add_option("--epochs", train_args.epochs, "SGD epochs")->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", train_args.lr, "Learning rate");
  train_cmd->add_option("--l2", train_args.l2, "L2 strength");
  train_cmd->add_option("--ngram", train_args.ngram, "Max n-gram order (1 or 2)");
  train_cmd->add_option("--out", train_args.out, "Output directory");

  EnsembleArgs ensemble_args;
  CLI::App* ensemble_cmd =
      app.add_subcommand("ensemble", "Combine two models' probabilities into run files");
  ensemble_cmd->add_option("--predictions", ensemble_args.predictions, "Prediction JSONL")
      ->required();
  ensemble_cmd->add_option("--model-a", ensemble_args.model_a, "Model id for role A");
  ensemble_cmd->add_option("--model-b", ensemble_args.model_b, "Model id for role B");
  ensemble_args.config.attach(ensemble_cmd);
  ensemble_cmd->add_option("--gold", ensemble_args.gold, "Labeled corpus for metrics");
  ensemble_cmd->add_option("--schema", ensemble_args.schema, "Gold column mapping");
  ensemble_cmd->add_flag("--system-runs", ensemble_args.system_runs,
                         "Emit system_run_1..7 (presets plus both base models)");
  ensemble_cmd->add_option("--format", ensemble_args.format, "csv|json|markdown");
  ensemble_cmd->add_option("--out", ensemble_args.out, "Output directory");

  EvaluateArgs evaluate_args;
  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "Cross-validate baselines on a corpus or compare prediction files");
  evaluate_cmd->add_option("--corpus", evaluate_args.corpus, "Labeled corpus CSV (CV mode)");
  evaluate_cmd->add_option("--predictions", evaluate_args.predictions,
                           "Prediction JSONL (direct mode)");
  evaluate_cmd->add_option("--gold", evaluate_args.gold, "Labeled corpus (direct mode)");
  evaluate_cmd->add_option("--schema", evaluate_args.schema, "Column mapping");
  evaluate_args.config.attach(evaluate_cmd);
  evaluate_cmd->add_option("--k", evaluate_args.k, "Number of folds");
  evaluate_cmd->add_option("--seed", evaluate_args.seed, "Fold split seed");
  evaluate_cmd->add_option("--stratify-label", evaluate_args.stratify_label,
                           "Stratify folds on this label");
  evaluate_cmd->add_option("--model-a", evaluate_args.model_a, "Model id for role A");
  evaluate_cmd->add_option("--model-b", evaluate_args.model_b, "Model id for role B");
  evaluate_cmd->add_option("--seed-a", evaluate_args.seed_a, "Baseline A training seed");
  evaluate_cmd->add_option("--seed-b", evaluate_args.seed_b, "Baseline B training seed");
  evaluate_cmd->add_option("--ngram-a", evaluate_args.ngram_a, "Baseline A n-gram order");
  evaluate_cmd->add_option("--ngram-b", evaluate_args.ngram_b, "Baseline B n-gram order");
  evaluate_cmd->add_option("--epochs", evaluate_args.epochs, "SGD epochs");
  evaluate_cmd->add_option("--lr", evaluate_args.lr, "Learning rate");
  evaluate_cmd->add_option("--l2", evaluate_args.l2, "L2 strength");
  evaluate_cmd->add_option("--format", evaluate_args.format, "csv|json|markdown");
  evaluate_cmd->add_option("--out", evaluate_args.out, "Output directory");

  GridSearchArgs grid_args;
  CLI::App* grid_cmd =
      app.add_subcommand("gridsearch", "Search per-label weights against gold labels");
  grid_cmd->add_option("--predictions", grid_args.predictions, "Prediction JSONL")
      ->required();
  grid_cmd->add_option("--gold", grid_args.gold, "Labeled corpus CSV")->required();
  grid_cmd->add_option("--schema", grid_args.schema, "Gold column mapping");
  grid_cmd->add_option("--model-a", grid_args.model_a, "Model id for role A");
  grid_cmd->add_option("--model-b", grid_args.model_b, "Model id for role B");
  grid_cmd->add_option("--step", grid_args.step, "Weight increment (must divide 1)");
  grid_cmd->add_option("--objective", grid_args.objective,
                       "accuracy|precision1|recall1|f1|acc_and_f1");
  grid_cmd->add_option("--tau", grid_args.tau, "Decision threshold");
  grid_cmd->add_option("--format", grid_args.format, "csv|json|markdown");
  grid_cmd->add_option("--out", grid_args.out, "Output directory");

  FeaturesArgs features_args;
  CLI::App* features_cmd =
      app.add_subcommand("features", "Extract the seven semantic features per comment");
  features_cmd->add_option("--config", features_args.config_path,
                           "key=value file with resource paths (flags override)");
  features_cmd->add_option("--corpus", features_args.corpus, "Corpus CSV")->required();
  features_cmd->add_option("--schema", features_args.schema, "Column mapping");
  features_cmd->add_option("--wordnet", features_args.wordnet_dir,
                           "Directory with WordNet index.*/data.* files");
  features_cmd->add_option("--positive", features_args.positive_path,
                           "Positive opinion lexicon");
  features_cmd->add_option("--negative", features_args.negative_path,
                           "Negative opinion lexicon");
  features_cmd->add_option("--subjectivity", features_args.subjectivity_path,
                           "Subjectivity clues file");
  features_cmd->add_option("--polarity", features_args.polarity_path,
                           "CSV of externally computed polarity confidences "
                           "(id,positive_polarity_confidence)");
  features_cmd->add_option("--out", features_args.out, "Output directory");

  CorrelateArgs correlate_args;
  CLI::App* correlate_cmd =
      app.add_subcommand("correlate", "Impact correlation reports (labels and features)");
  correlate_cmd->add_option("--corpus", correlate_args.corpus, "Labeled corpus CSV")
      ->required();
  correlate_cmd->add_option("--schema", correlate_args.schema, "Column mapping");
  correlate_cmd->add_option("--features", correlate_args.features_path,
                            "features.csv from the features command");
  correlate_cmd->add_option("--format", correlate_args.format, "csv|json|markdown");
  correlate_cmd->add_option("--out", correlate_args.out, "Output directory");

  stats_cmd->callback([&] { run_stats(stats_args); });
  train_cmd->callback([&] { run_train(train_args); });
  ensemble_cmd->callback([&] { run_ensemble(ensemble_args); });
  evaluate_cmd->callback([&] { run_evaluate(evaluate_args); });
  grid_cmd->callback([&] { run_gridsearch(grid_args); });
  features_cmd->callback([&] { run_features(features_args); });
  correlate_cmd->callback([&] { run_correlate(correlate_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
