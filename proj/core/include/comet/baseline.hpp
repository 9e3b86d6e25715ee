#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "comet/corpus.hpp"
#include "comet/ensemble.hpp"

namespace comet {

inline constexpr std::size_t kFeatureBits = 20;
inline constexpr std::size_t kFeatureDim = std::size_t{1} << kFeatureBits;
inline constexpr const char* kHashName = "fnv1a64";

// Lowercases and splits on non-alphanumeric bytes; empty tokens dropped,
// duplicates kept.
std::vector<std::string> tokenize(std::string_view text);

struct SparseVector {
  // (feature index, value) pairs, strictly increasing by index.
  std::vector<std::pair<std::uint32_t, double>> entries;
};

// Unigram and adjacent-bigram counts hashed into 2^20 buckets (FNV-1a 64),
// L2-normalized. ngram_order 1 keeps unigrams only.
SparseVector featurize(std::span<const std::string> tokens, int ngram_order = 2);

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 5;
  double l2 = 1e-6;
  std::uint64_t seed = 0;
  int ngram_order = 2;
};

struct LinearModel {
  std::vector<double> weights;  // kFeatureDim slots
  double bias = 0;
  std::string label;
  std::uint64_t seed = 0;
  int ngram_order = 2;

  double margin(const SparseVector& x) const;
};

double sigmoid(double z);

// sigmoid(w.x + b), clamped into the open interval (0, 1).
double predict_proba(const LinearModel& model, const SparseVector& x);

// Plain logistic loss (no regularization term), evaluated stably.
double logistic_loss(const LinearModel& model, const SparseVector& x, std::uint8_t y);

struct LossGradient {
  std::vector<std::pair<std::uint32_t, double>> weight_grad;  // support of x only
  double bias_grad = 0;
};

// d/dw_i = (p - y) x_i over the support of x, d/db = (p - y).
LossGradient logistic_loss_gradient(const LinearModel& model, const SparseVector& x,
                                    std::uint8_t y);

struct TrainExample {
  SparseVector features;
  std::uint8_t target = 0;
};

struct TrainResult {
  LinearModel model;
  std::vector<double> epoch_avg_loss;  // full-pass average after each epoch
};

// SGD on logistic loss with L2 applied over each example's support; the
// per-epoch shuffle is seeded, so identical inputs give identical models.
TrainResult train(std::span<const TrainExample> examples, const TrainConfig& config,
                  std::string_view label_name = "");

struct LabelModels {
  std::array<LinearModel, kLabelCount> models;
};

// One independent binary model per label. The per-label seed is
// config.seed + label index.
LabelModels train_all_labels(const std::vector<CommentRecord>& records,
                             const TrainConfig& config);

// Adds one matrix row per record under `model_id`.
void predict_into_matrix(const LabelModels& models,
                         const std::vector<CommentRecord>& records,
                         std::string_view model_id, PredictionMatrix& matrix);

// Versioned JSON blob; deserialize refuses on format, version, hash or
// dimension mismatch.
std::string serialize_model(const LinearModel& model);
LinearModel deserialize_model(std::string_view text, std::string_view filename = "<model>");

}  // namespace comet
