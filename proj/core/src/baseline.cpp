#include "comet/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include <json.hpp>

#include "comet/error.hpp"
#include "comet/format.hpp"

namespace comet {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kModelFormatVersion = 1;

std::uint32_t bucket(std::string_view key) {
  return static_cast<std::uint32_t>(fnv1a64(key) & (kFeatureDim - 1));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    bool alnum = (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'z') ||
                 (ch >= 'A' && ch <= 'Z');
    if (alnum) {
      current.push_back(ch >= 'A' && ch <= 'Z' ? static_cast<char>(ch - 'A' + 'a') : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

SparseVector featurize(std::span<const std::string> tokens, int ngram_order) {
  if (ngram_order < 1 || ngram_order > 2)
    throw UsageError("ngram_order must be 1 or 2");

  std::map<std::uint32_t, double> counts;
  for (const std::string& token : tokens) ++counts[bucket(token)];
  if (ngram_order >= 2) {
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i)
      ++counts[bucket(tokens[i] + "_" + tokens[i + 1])];
  }

  double norm_sq = 0;
  for (const auto& [_, v] : counts) norm_sq += v * v;
  const double norm = std::sqrt(norm_sq);

  SparseVector vec;
  vec.entries.reserve(counts.size());
  for (const auto& [index, value] : counts) vec.entries.emplace_back(index, value / norm);
  return vec;
}

double LinearModel::margin(const SparseVector& x) const {
  double z = bias;
  for (const auto& [index, value] : x.entries) z += weights[index] * value;
  return z;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double predict_proba(const LinearModel& model, const SparseVector& x) {
  double p = sigmoid(model.margin(x));
  const double lo = std::numeric_limits<double>::min();
  const double hi = std::nextafter(1.0, 0.0);
  return std::clamp(p, lo, hi);
}

double logistic_loss(const LinearModel& model, const SparseVector& x, std::uint8_t y) {
  const double z = model.margin(x);
  // log(1 + e^-z) + (1-y) z, rearranged to stay finite for any z.
  if (z >= 0) return std::log1p(std::exp(-z)) + (y ? 0.0 : z);
  return std::log1p(std::exp(z)) - (y ? z : 0.0);
}

LossGradient logistic_loss_gradient(const LinearModel& model, const SparseVector& x,
                                    std::uint8_t y) {
  const double g = sigmoid(model.margin(x)) - static_cast<double>(y);
  LossGradient grad;
  grad.bias_grad = g;
  grad.weight_grad.reserve(x.entries.size());
  for (const auto& [index, value] : x.entries)
    grad.weight_grad.emplace_back(index, g * value);
  return grad;
}

TrainResult train(std::span<const TrainExample> examples, const TrainConfig& config,
                  std::string_view label_name) {
  if (examples.empty()) throw UsageError("empty training set");
  if (config.epochs < 1) throw UsageError("epochs must be positive");
  if (!(config.learning_rate > 0)) throw UsageError("learning_rate must be positive");
  if (config.l2 < 0) throw UsageError("l2 must be non-negative");

  TrainResult result;
  LinearModel& model = result.model;
  model.weights.assign(kFeatureDim, 0.0);
  model.bias = 0.0;
  model.label = std::string(label_name);
  model.seed = config.seed;
  model.ngram_order = config.ngram_order;

  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 gen(config.seed);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[gen() % i]);

    for (std::size_t idx : order) {
      const TrainExample& ex = examples[idx];
      const double g = sigmoid(model.margin(ex.features)) - static_cast<double>(ex.target);
      for (const auto& [index, value] : ex.features.entries)
        model.weights[index] -=
            config.learning_rate * (g * value + config.l2 * model.weights[index]);
      model.bias -= config.learning_rate * g;
    }

    double loss_sum = 0;
    for (const TrainExample& ex : examples)
      loss_sum += logistic_loss(model, ex.features, ex.target);
    result.epoch_avg_loss.push_back(loss_sum / static_cast<double>(examples.size()));
  }
  return result;
}

LabelModels train_all_labels(const std::vector<CommentRecord>& records,
                             const TrainConfig& config) {
  if (records.empty()) throw UsageError("no training records");

  std::vector<SparseVector> features;
  features.reserve(records.size());
  for (const CommentRecord& rec : records) {
    if (!rec.labels) throw DataError("record '" + rec.id + "' is missing labels");
    features.push_back(featurize(tokenize(rec.text), config.ngram_order));
  }

  LabelModels out;
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    std::vector<TrainExample> examples(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      examples[i].features = features[i];
      examples[i].target = (*records[i].labels)[l];
    }
    TrainConfig label_config = config;
    label_config.seed = config.seed + l;
    out.models[l] = train(examples, label_config, kLabelNames[l]).model;
  }
  return out;
}

void predict_into_matrix(const LabelModels& models,
                         const std::vector<CommentRecord>& records,
                         std::string_view model_id, PredictionMatrix& matrix) {
  const int ngram_order = models.models[0].ngram_order;
  for (const CommentRecord& rec : records) {
    const SparseVector vec = featurize(tokenize(rec.text), ngram_order);
    LabelProbs probs{};
    for (std::size_t l = 0; l < kLabelCount; ++l)
      probs[l] = predict_proba(models.models[l], vec);
    matrix.add(model_id, rec.id, probs);
  }
}

std::string serialize_model(const LinearModel& model) {
  if (model.weights.size() != kFeatureDim)
    throw UsageError("model has wrong dimension");
  ordered_json obj;
  obj["format"] = "comet-linear-model";
  obj["version"] = kModelFormatVersion;
  obj["hash"] = kHashName;
  obj["dim"] = kFeatureDim;
  obj["label"] = model.label;
  obj["seed"] = model.seed;
  obj["ngram_order"] = model.ngram_order;
  obj["bias"] = model.bias;
  ordered_json weights = ordered_json::array();
  for (std::size_t i = 0; i < model.weights.size(); ++i)
    if (model.weights[i] != 0.0)
      weights.push_back(ordered_json::array({i, model.weights[i]}));
  obj["weights"] = std::move(weights);
  return obj.dump() + "\n";
}

LinearModel deserialize_model(std::string_view text, std::string_view filename) {
  const std::string file(filename);
  ordered_json obj;
  try {
    obj = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file, 1, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object() || obj.value("format", "") != "comet-linear-model")
    throw ParseError(file, 1, "not a comet-linear-model document");
  if (obj.value("version", 0) != kModelFormatVersion)
    throw ParseError(file, 1, "unsupported model version");
  if (obj.value("hash", "") != kHashName)
    throw ParseError(file, 1, "hash function mismatch: expected " +
                                  std::string(kHashName));
  if (obj.value("dim", std::size_t{0}) != kFeatureDim)
    throw ParseError(file, 1, "dimension mismatch: expected " +
                                  std::to_string(kFeatureDim));

  LinearModel model;
  model.weights.assign(kFeatureDim, 0.0);
  model.label = obj.value("label", "");
  model.seed = obj.value("seed", std::uint64_t{0});
  model.ngram_order = obj.value("ngram_order", 2);
  model.bias = obj.value("bias", 0.0);
  if (!obj.contains("weights") || !obj["weights"].is_array())
    throw ParseError(file, 1, "missing weights array");
  for (const auto& entry : obj["weights"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_unsigned() ||
        !entry[1].is_number())
      throw ParseError(file, 1, "weights entries must be [index, value] pairs");
    const auto index = entry[0].get<std::uint64_t>();
    const double value = entry[1].get<double>();
    if (index >= kFeatureDim)
      throw ParseError(file, 1, "weight index " + std::to_string(index) + " out of range");
    if (!std::isfinite(value))
      throw ParseError(file, 1, "non-finite weight value");
    model.weights[index] = value;
  }
  return model;
}

}  // namespace comet
