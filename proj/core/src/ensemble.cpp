#include "comet/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "comet/csv.hpp"
#include "comet/error.hpp"
#include "comet/format.hpp"

namespace comet {

namespace {

using ordered_json = nlohmann::ordered_json;

void check_probs(const LabelProbs& probs, const std::string& context) {
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0))
      throw DataError("probability " + format_double(p) + " outside [0,1] " + context);
}

}  // namespace

void PredictionMatrix::add(std::string_view model, std::string_view comment,
                           const LabelProbs& probs) {
  check_probs(probs, "for (" + std::string(model) + ", " + std::string(comment) + ")");

  auto [mit, m_new] = model_index_.try_emplace(std::string(model), model_ids_.size());
  if (m_new) {
    model_ids_.emplace_back(model);
    cells_.emplace_back(comment_ids_.size());
    filled_.emplace_back(comment_ids_.size(), 0);
  }
  const std::size_t mi = mit->second;

  auto [cit, c_new] = comment_index_.try_emplace(std::string(comment), comment_ids_.size());
  if (c_new) {
    comment_ids_.emplace_back(comment);
    for (std::size_t m = 0; m < model_ids_.size(); ++m) {
      cells_[m].emplace_back();
      filled_[m].push_back(0);
    }
  }
  const std::size_t ci = cit->second;

  if (filled_[mi][ci])
    throw DataError("duplicate prediction for (" + std::string(model) + ", " +
                    std::string(comment) + ")");
  cells_[mi][ci] = probs;
  filled_[mi][ci] = 1;
}

void PredictionMatrix::validate() const {
  if (model_ids_.empty()) throw DataError("prediction matrix has no models");
  for (std::size_t m = 0; m < model_ids_.size(); ++m)
    for (std::size_t c = 0; c < comment_ids_.size(); ++c)
      if (!filled_[m][c])
        throw DataError("model '" + model_ids_[m] + "' has no prediction for comment '" +
                        comment_ids_[c] + "'");
}

std::size_t PredictionMatrix::model_index(std::string_view model) const {
  auto it = model_index_.find(std::string(model));
  if (it == model_index_.end())
    throw UsageError("unknown model id '" + std::string(model) + "'");
  return it->second;
}

std::optional<std::size_t> PredictionMatrix::comment_index(std::string_view comment) const {
  auto it = comment_index_.find(std::string(comment));
  if (it == comment_index_.end()) return std::nullopt;
  return it->second;
}

bool PredictionMatrix::has(std::size_t model, std::size_t comment) const {
  return filled_[model][comment] != 0;
}

const LabelProbs& PredictionMatrix::probs(std::size_t model, std::size_t comment) const {
  return cells_[model][comment];
}

double PredictionMatrix::prob(std::size_t model, std::size_t comment,
                              std::size_t label) const {
  return cells_[model][comment][label];
}

PredictionMatrix PredictionMatrix::from_jsonl(std::string_view text,
                                              std::string_view filename) {
  PredictionMatrix matrix;
  const std::string file(filename);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty() || line == "\r") {
      if (pos > text.size()) break;
      continue;
    }

    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(file, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object() || !obj.contains("model") || !obj["model"].is_string() ||
        !obj.contains("id") || !obj["id"].is_string() || !obj.contains("probs") ||
        !obj["probs"].is_object())
      throw ParseError(file, line_no,
                       "expected {\"model\": str, \"id\": str, \"probs\": {...}}");

    const auto& probs_obj = obj["probs"];
    if (probs_obj.size() != kLabelCount)
      throw ParseError(file, line_no, "probs must hold exactly the six labels");
    LabelProbs probs{};
    for (std::size_t i = 0; i < kLabelCount; ++i) {
      const std::string key(kLabelNames[i]);
      if (!probs_obj.contains(key) || !probs_obj[key].is_number())
        throw ParseError(file, line_no, "probs missing numeric '" + key + "'");
      probs[i] = probs_obj[key].get<double>();
    }
    try {
      matrix.add(obj["model"].get<std::string>(), obj["id"].get<std::string>(), probs);
    } catch (const DataError& e) {
      throw DataError(std::string(e.what()) + " (" + file + ":" +
                      std::to_string(line_no) + ")");
    }
    if (pos > text.size()) break;
  }
  return matrix;
}

std::string PredictionMatrix::to_jsonl() const {
  std::string out;
  for (std::size_t m = 0; m < model_ids_.size(); ++m) {
    for (std::size_t c = 0; c < comment_ids_.size(); ++c) {
      if (!filled_[m][c]) continue;
      ordered_json obj;
      obj["model"] = model_ids_[m];
      obj["id"] = comment_ids_[c];
      ordered_json probs;
      for (std::size_t i = 0; i < kLabelCount; ++i)
        probs[std::string(kLabelNames[i])] = cells_[m][c][i];
      obj["probs"] = std::move(probs);
      out += obj.dump();
      out.push_back('\n');
    }
  }
  return out;
}

WeightPair make_weight_pair(double w_a, double w_b) {
  if (!(w_a >= 0.0 && w_a <= 1.0) || !(w_b >= 0.0 && w_b <= 1.0))
    throw UsageError("weights must lie in [0,1], got (" + format_double(w_a) + ", " +
                     format_double(w_b) + ")");
  if (std::fabs(w_a + w_b - 1.0) > 1e-12)
    throw UsageError("weights must sum to 1, got (" + format_double(w_a) + ", " +
                     format_double(w_b) + ")");
  return WeightPair{w_a, w_b};
}

double combine(double p_a, double p_b, const WeightPair& w) {
  double combined = w.w_a * p_a + w.w_b * p_b;
  return std::clamp(combined, std::min(p_a, p_b), std::max(p_a, p_b));
}

std::uint8_t decide(double p, double threshold) {
  return p >= threshold ? 1 : 0;
}

namespace {

EnsembleConfig make_config(std::string name,
                           std::array<std::pair<double, double>, kLabelCount> pairs) {
  EnsembleConfig config;
  config.name = std::move(name);
  for (std::size_t i = 0; i < kLabelCount; ++i)
    config.weights[i] = make_weight_pair(pairs[i].first, pairs[i].second);
  return config;
}

}  // namespace

std::vector<EnsembleConfig> preset_configs() {
  // Pairs in label order (emotional disclosure first); (w_a, w_b) with
  // model A in the RoBERTa role.
  std::vector<EnsembleConfig> configs;
  configs.push_back(make_config(
      "Model 1", {{{0.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 0.0}}}));
  configs.push_back(make_config(
      "Model 2", {{{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}}));
  configs.push_back(make_config(
      "Model 3", {{{0.5, 0.5}, {0.0, 1.0}, {1.0, 0.0}, {0.5, 0.5}, {1.0, 0.0}, {0.5, 0.5}}}));
  configs.push_back(make_config(
      "Model 4", {{{0.5, 0.5}, {0.0, 1.0}, {1.0, 0.0}, {0.6, 0.4}, {1.0, 0.0}, {0.5, 0.5}}}));
  configs.push_back(make_config(
      "Model 5", {{{0.5, 0.5}, {0.1, 0.9}, {1.0, 0.0}, {0.6, 0.4}, {1.0, 0.0}, {0.5, 0.5}}}));
  return configs;
}

EnsembleConfig preset_config(std::string_view name) {
  std::string normalized;
  for (char c : name)
    if (c != ' ' && c != '_' && c != '-')
      normalized.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  for (EnsembleConfig& config : preset_configs()) {
    std::string candidate;
    for (char c : config.name)
      if (c != ' ')
        candidate.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    if (candidate == normalized) return std::move(config);
  }
  throw UsageError("unknown preset '" + std::string(name) +
                   "' (expected Model 1 .. Model 5)");
}

std::vector<LabelSet> ensemble_predict(const PredictionMatrix& matrix,
                                       const EnsembleConfig& config,
                                       std::string_view model_a,
                                       std::string_view model_b) {
  const std::size_t a = matrix.model_index(model_a);
  const std::size_t b = matrix.model_index(model_b);
  const std::size_t n = matrix.comments().size();

  std::vector<LabelSet> out(n);
  for (std::size_t c = 0; c < n; ++c) {
    if (!matrix.has(a, c) || !matrix.has(b, c))
      throw DataError("missing prediction for comment '" + matrix.comments()[c] + "'");
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      double p = combine(matrix.prob(a, c, l), matrix.prob(b, c, l), config.weights[l]);
      out[c][l] = decide(p, config.threshold);
    }
  }
  return out;
}

Objective objective_from_name(std::string_view name) {
  if (name == "accuracy") return Objective::Accuracy;
  if (name == "precision1") return Objective::Precision1;
  if (name == "recall1") return Objective::Recall1;
  if (name == "f1") return Objective::F1;
  if (name == "acc_and_f1") return Objective::AccAndF1;
  throw UsageError("unknown objective '" + std::string(name) + "'");
}

std::string_view objective_name(Objective objective) {
  switch (objective) {
    case Objective::Accuracy: return "accuracy";
    case Objective::Precision1: return "precision1";
    case Objective::Recall1: return "recall1";
    case Objective::F1: return "f1";
    case Objective::AccAndF1: return "acc_and_f1";
  }
  throw UsageError("bad objective value");
}

double objective_value(const MetricReport& report, Objective objective) {
  switch (objective) {
    case Objective::Accuracy: return report.accuracy;
    case Objective::Precision1: return report.precision1;
    case Objective::Recall1: return report.recall1;
    case Objective::F1: return report.f1;
    case Objective::AccAndF1: return report.acc_and_f1;
  }
  throw UsageError("bad objective value");
}

GridSearchResult grid_search(const PredictionMatrix& matrix, const GoldLabels& gold,
                             std::string_view model_a, std::string_view model_b,
                             double step, Objective objective, double threshold) {
  if (!(step > 0.0 && step <= 1.0)) throw UsageError("step must lie in (0,1]");
  const auto divisions = static_cast<std::size_t>(std::llround(1.0 / step));
  if (divisions < 1 || std::fabs(static_cast<double>(divisions) * step - 1.0) > 1e-9)
    throw UsageError("step must divide 1 evenly, got " + format_double(step));

  const std::size_t a = matrix.model_index(model_a);
  const std::size_t b = matrix.model_index(model_b);
  const std::size_t n = matrix.comments().size();
  if (n == 0) throw UsageError("prediction matrix has no comments");

  std::vector<const LabelSet*> gold_rows(n);
  for (std::size_t c = 0; c < n; ++c) {
    auto it = gold.find(matrix.comments()[c]);
    if (it == gold.end())
      throw DataError("missing gold labels for comment '" + matrix.comments()[c] + "'");
    if (!matrix.has(a, c) || !matrix.has(b, c))
      throw DataError("missing prediction for comment '" + matrix.comments()[c] + "'");
    gold_rows[c] = &it->second;
  }

  GridSearchResult result;
  result.config.name = "grid-search";
  result.config.threshold = threshold;
  result.candidates = divisions + 1;

  for (std::size_t l = 0; l < kLabelCount; ++l) {
    bool have_best = false;
    double best_objective = 0, best_f1 = 0;
    for (std::size_t i = divisions + 1; i-- > 0;) {
      // Walk w_a downward so ties keep the smaller weight on model B.
      const double w_a = static_cast<double>(i) / static_cast<double>(divisions);
      const WeightPair pair = make_weight_pair(w_a, 1.0 - w_a);
      ConfusionCounts counts;
      for (std::size_t c = 0; c < n; ++c) {
        std::uint8_t pred =
            decide(combine(matrix.prob(a, c, l), matrix.prob(b, c, l), pair), threshold);
        std::uint8_t truth = (*gold_rows[c])[l];
        if (pred) {
          truth ? ++counts.tp : ++counts.fp;
        } else {
          truth ? ++counts.fn : ++counts.tn;
        }
      }
      const MetricReport report = compute_metrics(counts);
      const double value = objective_value(report, objective);
      if (!have_best || value > best_objective ||
          (value == best_objective && report.f1 > best_f1)) {
        have_best = true;
        best_objective = value;
        best_f1 = report.f1;
        result.config.weights[l] = pair;
        result.objective[l] = value;
        result.report[l] = report;
      }
    }
  }
  return result;
}

std::string run_to_csv(std::span<const std::string> comment_ids,
                       std::span<const LabelSet> predictions) {
  if (comment_ids.size() != predictions.size())
    throw UsageError("id/prediction length mismatch");
  csv::Row header{"id"};
  for (std::string_view name : kLabelNames) header.emplace_back(name);
  std::string out = csv::format_row(header);
  for (std::size_t i = 0; i < comment_ids.size(); ++i) {
    csv::Row row{comment_ids[i]};
    for (std::size_t l = 0; l < kLabelCount; ++l)
      row.emplace_back(predictions[i][l] ? "1" : "0");
    out += csv::format_row(row);
  }
  return out;
}

std::string ensemble_config_to_json(const EnsembleConfig& config) {
  ordered_json obj;
  obj["format"] = "comet-ensemble-config";
  obj["version"] = 1;
  obj["name"] = config.name;
  obj["threshold"] = config.threshold;
  ordered_json weights;
  for (std::size_t i = 0; i < kLabelCount; ++i)
    weights[std::string(kLabelNames[i])] =
        ordered_json::array({config.weights[i].w_a, config.weights[i].w_b});
  obj["weights"] = std::move(weights);
  return obj.dump(2) + "\n";
}

EnsembleConfig ensemble_config_from_json(std::string_view text,
                                         std::string_view filename) {
  const std::string file(filename);
  ordered_json obj;
  try {
    obj = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file, 1, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object() || obj.value("format", "") != "comet-ensemble-config")
    throw ParseError(file, 1, "not a comet-ensemble-config document");
  if (obj.value("version", 0) != 1)
    throw ParseError(file, 1, "unsupported config version");

  EnsembleConfig config;
  config.name = obj.value("name", "");
  config.threshold = obj.value("threshold", 0.5);
  if (!(config.threshold > 0.0 && config.threshold < 1.0))
    throw ParseError(file, 1, "threshold must lie in (0,1)");
  if (!obj.contains("weights") || !obj["weights"].is_object())
    throw ParseError(file, 1, "missing weights object");
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    const std::string key(kLabelNames[i]);
    const auto& w = obj["weights"];
    if (!w.contains(key) || !w[key].is_array() || w[key].size() != 2)
      throw ParseError(file, 1, "weights." + key + " must be a [w_a, w_b] pair");
    try {
      config.weights[i] = make_weight_pair(w[key][0].get<double>(), w[key][1].get<double>());
    } catch (const UsageError& e) {
      throw ParseError(file, 1, "weights." + key + ": " + e.what());
    }
  }
  return config;
}

}  // namespace comet
