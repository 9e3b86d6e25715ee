// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Criterion 9 needs the original labeled corpus and is skipped when the
// file is absent (point it via COMET_OFFMYCHEST_CSV).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>
#include <sys/wait.h>

#include "comet/baseline.hpp"
#include "comet/correlate.hpp"
#include "comet/corpus.hpp"
#include "comet/ensemble.hpp"
#include "comet/error.hpp"
#include "comet/evaluate.hpp"
#include "comet/format.hpp"
#include "comet/metrics.hpp"
#include "comet/semfeat.hpp"
#include "comet/wordnet.hpp"

using namespace comet;
namespace fs = std::filesystem;

namespace {

const std::string kCli = COMET_CLI_PATH;
const std::string kData = COMET_DATA_DIR;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Skip : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure(message);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::mt19937_64& rng() {
  static std::mt19937_64 gen(20200405);
  return gen;
}

double uniform01() {
  return static_cast<double>(rng()()) / static_cast<double>(UINT64_MAX);
}

// ---------------------------------------------------------------------------
// 1. Metric oracle equivalence.

MetricReport brute_force_metrics(const std::vector<std::uint8_t>& pred,
                                 const std::vector<std::uint8_t>& gold) {
  std::uint64_t matches = 0, pred_pos = 0, gold_pos = 0, both = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == gold[i]) ++matches;
    if (pred[i]) ++pred_pos;
    if (gold[i]) ++gold_pos;
    if (pred[i] && gold[i]) ++both;
  }
  MetricReport r;
  r.accuracy = static_cast<double>(matches) / static_cast<double>(pred.size());
  r.precision1 = pred_pos ? static_cast<double>(both) / static_cast<double>(pred_pos) : 0.0;
  r.recall1 = gold_pos ? static_cast<double>(both) / static_cast<double>(gold_pos) : 0.0;
  r.f1 = (r.precision1 + r.recall1) == 0.0
             ? 0.0
             : 2.0 * r.precision1 * r.recall1 / (r.precision1 + r.recall1);
  r.acc_and_f1 = (r.accuracy + r.f1) / 2.0;
  return r;
}

void criterion_metric_oracle() {
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint8_t> pred(200), gold(200);
    for (int i = 0; i < 200; ++i) {
      pred[i] = rng()() % 2;
      gold[i] = rng()() % 2;
    }
    const MetricReport computed = compute_metrics(confusion(pred, gold));
    const MetricReport expected = brute_force_metrics(pred, gold);
    require(computed.accuracy == expected.accuracy, "accuracy mismatch");
    require(computed.precision1 == expected.precision1, "precision1 mismatch");
    require(computed.recall1 == expected.recall1, "recall1 mismatch");
    require(computed.f1 == expected.f1, "f1 mismatch");
    require(computed.acc_and_f1 == expected.acc_and_f1, "acc_and_f1 mismatch");
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 5.0, "metric oracle took " + format_double(elapsed) + "s");
}

// ---------------------------------------------------------------------------
// 2. Ensemble identities.

EnsembleConfig pure_config(double w_a) {
  EnsembleConfig config;
  config.name = "pure";
  for (std::size_t l = 0; l < kLabelCount; ++l)
    config.weights[l] = make_weight_pair(w_a, 1.0 - w_a);
  return config;
}

void criterion_ensemble_identities() {
  PredictionMatrix matrix;
  std::vector<LabelProbs> probs_a(40), probs_b(40);
  for (int c = 0; c < 40; ++c) {
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      probs_a[c][l] = uniform01();
      probs_b[c][l] = uniform01();
    }
    matrix.add("a", "c" + std::to_string(c), probs_a[c]);
    matrix.add("b", "c" + std::to_string(c), probs_b[c]);
  }

  const auto only_a = ensemble_predict(matrix, pure_config(1.0), "a", "b");
  const auto only_b = ensemble_predict(matrix, pure_config(0.0), "a", "b");
  for (int c = 0; c < 40; ++c) {
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      require(only_a[c][l] == decide(probs_a[c][l], 0.5), "(1,0) identity broken");
      require(only_b[c][l] == decide(probs_b[c][l], 0.5), "(0,1) identity broken");
    }
  }

  for (int trial = 0; trial < 1000; ++trial) {
    const double p_a = uniform01(), p_b = uniform01(), w = uniform01();
    const double combined = combine(p_a, p_b, make_weight_pair(w, 1.0 - w));
    require(combined >= std::min(p_a, p_b) && combined <= std::max(p_a, p_b),
            "combine left the convex hull");
  }

  // Hand fixture under preset Model 5; labels worked out on paper.
  PredictionMatrix fixture;
  fixture.add("a", "c1", {0.70, 0.20, 0.90, 0.40, 0.55, 0.10});
  fixture.add("b", "c1", {0.20, 0.60, 0.10, 0.70, 0.00, 0.95});
  fixture.add("a", "c2", {0.50, 0.95, 0.30, 0.10, 0.45, 0.60});
  fixture.add("b", "c2", {0.50, 0.05, 0.60, 0.90, 0.55, 0.40});
  const auto predictions = ensemble_predict(fixture, preset_config("Model 5"), "a", "b");
  LabelSet first, second;
  first.values = {0, 1, 1, 1, 1, 1};
  second.values = {1, 0, 0, 0, 0, 1};
  require(predictions.size() == 2, "fixture size");
  require(predictions[0] == first, "Model 5 fixture comment 1 mismatch");
  require(predictions[1] == second, "Model 5 fixture comment 2 mismatch");
}

// ---------------------------------------------------------------------------
// 3. Grid-search dominance.

void criterion_grid_dominance() {
  const auto start = std::chrono::steady_clock::now();
  PredictionMatrix matrix;
  GoldLabels gold;
  for (int c = 0; c < 120; ++c) {
    LabelSet truth;
    LabelProbs pa{}, pb{};
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      truth[l] = rng()() % 2;
      pa[l] = truth[l] ? 0.9 : 0.1;  // perfect predictor
      pb[l] = uniform01();           // noise
    }
    const std::string id = "c" + std::to_string(c);
    matrix.add("a", id, pa);
    matrix.add("b", id, pb);
    gold.emplace(id, truth);
  }

  const GridSearchResult result =
      grid_search(matrix, gold, "a", "b", 0.1, Objective::AccAndF1, 0.5);
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    require(result.config.weights[l].w_a == 1.0 && result.config.weights[l].w_b == 0.0,
            "label " + std::string(kLabelNames[l]) + " did not select (1.0, 0.0)");
    require(result.objective[l] == 1.0,
            "label " + std::string(kLabelNames[l]) + " objective below 1.0");
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 10.0, "grid search took " + format_double(elapsed) + "s");
}

// ---------------------------------------------------------------------------
// 4. Baseline numerics.

std::vector<TrainExample> separable_toy_set() {
  std::vector<TrainExample> examples(4);
  examples[0].features.entries = {{0, 1.0}};
  examples[0].target = 1;
  examples[1].features.entries = {{0, 1.0}, {2, 0.5}};
  examples[1].target = 1;
  examples[2].features.entries = {{1, 1.0}};
  examples[2].target = 0;
  examples[3].features.entries = {{1, 1.0}, {2, 0.5}};
  examples[3].target = 0;
  return examples;
}

void criterion_baseline_numerics() {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    SparseVector x;
    std::set<std::uint32_t> indices;
    while (indices.size() < 6) indices.insert(static_cast<std::uint32_t>(rng()() % 5000));
    for (std::uint32_t index : indices) x.entries.emplace_back(index, normal(rng()));

    LinearModel model;
    model.weights.assign(kFeatureDim, 0.0);
    for (const auto& [index, _] : x.entries) model.weights[index] = 0.5 * normal(rng());
    model.bias = 0.5 * normal(rng());
    const std::uint8_t y = rng()() % 2;

    const LossGradient grad = logistic_loss_gradient(model, x, y);
    for (std::size_t k = 0; k < x.entries.size(); ++k) {
      LinearModel plus = model, minus = model;
      plus.weights[x.entries[k].first] += h;
      minus.weights[x.entries[k].first] -= h;
      const double fd =
          (logistic_loss(plus, x, y) - logistic_loss(minus, x, y)) / (2.0 * h);
      const double analytic = grad.weight_grad[k].second;
      const double rel = std::fabs(analytic - fd) /
                         std::max({std::fabs(analytic), std::fabs(fd), 1e-6});
      require(rel < 1e-4, "gradient relative error " + format_double(rel));
    }
    LinearModel plus = model, minus = model;
    plus.bias += h;
    minus.bias -= h;
    const double fd = (logistic_loss(plus, x, y) - logistic_loss(minus, x, y)) / (2.0 * h);
    const double rel = std::fabs(grad.bias_grad - fd) /
                       std::max({std::fabs(grad.bias_grad), std::fabs(fd), 1e-6});
    require(rel < 1e-4, "bias gradient relative error " + format_double(rel));
  }

  const auto examples = separable_toy_set();
  TrainConfig config;
  config.seed = 17;
  const TrainResult result = train(examples, config, "toy");
  for (std::size_t e = 1; e < result.epoch_avg_loss.size(); ++e)
    require(result.epoch_avg_loss[e] <= result.epoch_avg_loss[e - 1] + 1e-12,
            "epoch loss increased at epoch " + std::to_string(e));
  for (const TrainExample& ex : examples)
    require((predict_proba(result.model, ex.features) >= 0.5 ? 1 : 0) == ex.target,
            "toy set not separated");

  const TrainResult again = train(examples, config, "toy");
  require(serialize_model(result.model) == serialize_model(again.model),
          "retrain with the same seed is not byte-identical");
}

// ---------------------------------------------------------------------------
// 5. k-fold invariants and the hand-run two-fold protocol.

CommentRecord fixture_record(std::string id, std::uint8_t ed, std::uint8_t id_bit) {
  CommentRecord rec;
  rec.id = std::move(id);
  rec.parent_id = "p";
  rec.author = "u";
  rec.text = "text";
  LabelSet labels;
  labels.values = {ed, id_bit, 0, 0, 0, 0};
  rec.labels = labels;
  return rec;
}

void criterion_kfold_and_cv() {
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng()() % 9;
    const std::size_t n = k + rng()() % 150;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("id" + std::to_string(i));
    const FoldAssignment assignment = kfold_split(ids, k, rng()());

    require(assignment.fold_of.size() == n, "fold assignment does not cover all ids");
    std::vector<std::size_t> sizes(k, 0);
    for (const std::string& id : ids) {
      auto it = assignment.fold_of.find(id);
      require(it != assignment.fold_of.end(), "id missing from assignment");
      require(it->second < k, "fold index out of range");
      sizes[it->second] += 1;
    }
    std::size_t lo = n, hi = 0;
    for (std::size_t size : sizes) {
      lo = std::min(lo, size);
      hi = std::max(hi, size);
    }
    require(hi - lo <= 1, "fold sizes differ by more than one");
  }

  // Hand-run protocol: 12 records, two explicit folds, a trainer that
  // memorizes the training labels and predicts the majority class.
  std::vector<CommentRecord> records;
  const std::uint8_t ed[12] = {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1};
  const std::uint8_t id_bits[12] = {0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  FoldAssignment folds;
  folds.k = 2;
  for (int i = 0; i < 12; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "r%02d", i + 1);
    records.push_back(fixture_record(buf, ed[i], id_bits[i]));
    folds.fold_of.emplace(buf, i < 6 ? 0 : 1);
  }
  const Trainer majority = [](std::span<const CommentRecord> train,
                              std::span<const CommentRecord> test) {
    LabelProbs probs{};
    for (std::size_t l = 0; l < kLabelCount; ++l) {
      std::size_t positives = 0;
      for (const CommentRecord& rec : train) positives += (*rec.labels)[l];
      probs[l] = 2 * positives > train.size() ? 1.0 : 0.0;
    }
    std::vector<LabelProbs> out(test.size(), probs);
    return std::make_pair(out, out);
  };

  const CrossValidationReport report =
      cross_validate(records, majority, preset_config("Model 2"), folds);

  // Fold 0: ED predicted all 0 against gold 1,1,1,1,0,0; ID predicted all 1
  // against gold 0,1,1,1,1,1; the four constant labels are all-correct.
  const double id0_p = 5.0 / 6.0;
  const double id0_f1 = 2.0 * id0_p * 1.0 / (id0_p + 1.0);
  require(report.folds[0].per_label[0].accuracy == 2.0 / 6.0, "fold0 ED accuracy");
  require(report.folds[0].per_label[0].f1 == 0.0, "fold0 ED f1");
  require(report.folds[0].per_label[1].accuracy == 5.0 / 6.0, "fold0 ID accuracy");
  require(report.folds[0].per_label[1].f1 == id0_f1, "fold0 ID f1");
  // Fold 1: ED predicted all 1 against gold 0,0,0,0,1,1; ID all correct.
  const double ed1_p = 2.0 / 6.0;
  const double ed1_f1 = 2.0 * ed1_p * 1.0 / (ed1_p + 1.0);
  require(report.folds[1].per_label[0].accuracy == 2.0 / 6.0, "fold1 ED accuracy");
  require(report.folds[1].per_label[0].f1 == ed1_f1, "fold1 ED f1");
  require(report.folds[1].per_label[1].accuracy == 1.0, "fold1 ID accuracy");

  const double acc0 = (2.0 / 6.0 + 5.0 / 6.0 + 1.0 + 1.0 + 1.0 + 1.0) / 6.0;
  const double acc1 = (2.0 / 6.0 + 1.0 + 1.0 + 1.0 + 1.0 + 1.0) / 6.0;
  require(report.mean.accuracy == (acc0 + acc1) / 2.0, "mean accuracy mismatch");
  // Fold 1 scores f1 = 1 on the all-positive informational-disclosure column.
  const double f1_0 = (0.0 + id0_f1 + 0.0 + 0.0 + 0.0 + 0.0) / 6.0;
  const double f1_1 = (ed1_f1 + 1.0 + 0.0 + 0.0 + 0.0 + 0.0) / 6.0;
  require(report.mean.f1 == (f1_0 + f1_1) / 2.0, "mean f1 mismatch");
}

// ---------------------------------------------------------------------------
// 6. Pearson properties.

double textbook_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

void criterion_pearson() {
  require(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}) == 1.0,
          "perfect linear correlation is not 1.0");
  require(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) == -1.0,
          "perfect inverse correlation is not -1.0");
  require(pearson(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 3, 2, 4}) == 0.8,
          "hand-derived 0.8 case mismatch");

  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + rng()() % 80;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = normal(rng());
      y[i] = 0.4 * x[i] + normal(rng());
    }
    const double rho = pearson(x, y);
    require(std::fabs(rho - textbook_pearson(x, y)) < 1e-12, "oracle disagreement");

    const double a = 0.5 + static_cast<double>(rng()() % 50) / 7.0;
    const double b = normal(rng());
    std::vector<double> mapped(n);
    for (std::size_t i = 0; i < n; ++i) mapped[i] = a * x[i] + b;
    require(std::fabs(pearson(mapped, y) - rho) < 1e-12, "affine invariance broken");
    for (std::size_t i = 0; i < n; ++i) mapped[i] = -a * x[i] + b;
    require(std::fabs(pearson(mapped, y) + rho) < 1e-12, "sign flip broken");
  }
}

// ---------------------------------------------------------------------------
// 7. Semantic-feature oracles.

void criterion_semfeat() {
  const SenseTaxonomy tax = load_wordnet_dir(kData + "/wordnet_mini");

  // Round-trip: exact synset and hypernym edge sets.
  require(tax.size() == 12, "expected exactly 12 synsets");
  std::set<std::string> ids;
  for (const Synset& synset : tax.synsets()) ids.insert(synset.id.str());
  const std::set<std::string> expected_ids = {
      "n:00001740", "n:00002137", "n:00002500", "n:00003000", "n:00004000",
      "n:00005000", "n:00007000", "n:00008000", "n:00009000", "v:00100000",
      "v:00200000", "v:00300000"};
  require(ids == expected_ids, "synset set mismatch");

  std::set<std::pair<std::string, std::string>> edges;
  for (const Synset& synset : tax.synsets())
    for (SynsetId up : tax.hypernyms(synset.id))
      edges.insert({synset.id.str(), up.str()});
  const std::set<std::pair<std::string, std::string>> expected_edges = {
      {"n:00002137", "n:00001740"}, {"n:00002500", "n:00001740"},
      {"n:00003000", "n:00002137"}, {"n:00004000", "n:00002137"},
      {"n:00005000", "n:00003000"}, {"n:00007000", "n:00004000"},
      {"n:00008000", "n:00007000"}, {"n:00009000", "n:00002500"},
      {"v:00200000", "v:00100000"}, {"v:00300000", "v:00100000"}};
  require(edges == expected_edges, "hypernym edge set mismatch");

  // Symmetry and bounds on every fixture pair.
  for (const Synset& a : tax.synsets()) {
    for (const Synset& b : tax.synsets()) {
      const auto forward = path_similarity(a.id, b.id, tax);
      const auto backward = path_similarity(b.id, a.id, tax);
      require(forward == backward, "path similarity asymmetric");
      if (forward) {
        require(*forward > 0.0 && *forward <= 1.0, "path similarity out of bounds");
        require((*forward == 1.0) == (a.id == b.id), "similarity 1 off the diagonal");
      }
    }
  }

  // sense_combination over counts {2, 3}.
  std::vector<WordnetFile> index{{"index.noun",
                                  "x n 2 0 2 0 00000001 00000002\n"
                                  "y n 3 0 3 0 00000003 00000004 00000005\n"}};
  std::vector<WordnetFile> data{{"data.noun",
                                 "00000001 03 n 01 x 0 000 | s1\n"
                                 "00000002 03 n 01 x 0 000 | s2\n"
                                 "00000003 03 n 01 y 0 000 | s3\n"
                                 "00000004 03 n 01 y 0 000 | s4\n"
                                 "00000005 03 n 01 y 0 000 | s5\n"}};
  const SenseTaxonomy small = parse_wordnet(index, data);
  const std::vector<std::string> xy = {"x", "y"};
  const auto combo = sense_combination(xy, small);
  require(combo.has_value(), "sense_combination absent");
  require(std::fabs(*combo - std::log(6.0)) <= 1e-12, "sense_combination != ln 6");

  // sense_extremes equals exhaustive sense-pair enumeration.
  const std::vector<std::vector<std::string>> token_sets = {
      {"dog", "bark", "tree"},
      {"dog", "domestic_dog"},
      {"run", "bark", "move", "plant"},
      {"entity", "organism", "sound", "yelp"},
      {"dog", "unknown", "tree", "bark", "yelp", "animal"}};
  for (const auto& tokens : token_sets) {
    std::vector<std::string> types;
    std::unordered_set<std::string> seen;
    for (const auto& t : tokens)
      if (seen.insert(t).second) types.push_back(t);
    SenseExtremes oracle;
    for (std::size_t i = 0; i < types.size(); ++i)
      for (std::size_t j = i + 1; j < types.size(); ++j)
        for (SynsetId a : tax.all_senses(types[i]))
          for (SynsetId b : tax.all_senses(types[j])) {
            const auto sim = path_similarity(a, b, tax);
            if (!sim) continue;
            if (!oracle.farmost || *sim > *oracle.farmost) oracle.farmost = sim;
            if (!oracle.closest || *sim < *oracle.closest) oracle.closest = sim;
          }
    const SenseExtremes actual = sense_extremes(tokens, tax);
    require(actual.farmost == oracle.farmost, "farmost differs from enumeration");
    require(actual.closest == oracle.closest, "closest differs from enumeration");
    if (actual.farmost && actual.closest)
      require(*actual.closest <= *actual.farmost, "closest exceeds farmost");
  }
}

// ---------------------------------------------------------------------------
// 8. End-to-end pipeline, byte-identical across two runs.

int run_cli(const std::string& cwd, const std::string& args) {
  const std::string command = "cd " + cwd + " && " + kCli + " " + args + " >/dev/null 2>&1";
  return WEXITSTATUS(std::system(command.c_str()));
}

void run_pipeline(const fs::path& dir) {
  fs::create_directories(dir);
  const std::string corpus = kData + "/synthetic200.csv";
  const std::string cwd = dir.string();

  require(run_cli(cwd, "train --corpus " + corpus +
                           " --model-id alpha --seed 1 --ngram 2 --out .") == 0,
          "train alpha failed");
  require(run_cli(cwd, "train --corpus " + corpus +
                           " --model-id beta --seed 2 --ngram 1 --out .") == 0,
          "train beta failed");
  require(run_cli(cwd,
                  "gridsearch --predictions alpha.predictions.jsonl "
                  "--predictions beta.predictions.jsonl --gold " + corpus +
                      " --step 0.1 --objective acc_and_f1 --out grid") == 0,
          "gridsearch failed");
  require(run_cli(cwd,
                  "ensemble --predictions alpha.predictions.jsonl "
                  "--predictions beta.predictions.jsonl --weights-file "
                  "grid/best_config.json --gold " + corpus + " --out ensemble") == 0,
          "ensemble failed");
  require(run_cli(cwd, "evaluate --corpus " + corpus +
                           " --k 10 --seed 7 --weights-file grid/best_config.json "
                           "--all-presets --out cv") == 0,
          "evaluate failed");
  require(run_cli(cwd, "features --corpus " + corpus + " --wordnet " + kData +
                           "/wordnet_mini --positive " + kData +
                           "/lexicons/positive.txt --negative " + kData +
                           "/lexicons/negative.txt --subjectivity " + kData +
                           "/lexicons/subjclues.txt --out feat") == 0,
          "features failed");
  require(run_cli(cwd, "correlate --corpus " + corpus +
                           " --features feat/features.csv --out corr") == 0,
          "correlate failed");
}

void criterion_end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path base = fs::temp_directory_path() / "comet_acceptance_e2e";
  fs::remove_all(base);
  const fs::path run1 = base / "run1";
  const fs::path run2 = base / "run2";
  run_pipeline(run1);
  run_pipeline(run2);

  std::size_t compared = 0;
  for (const auto& entry : fs::recursive_directory_iterator(run1)) {
    if (!entry.is_regular_file()) continue;
    const fs::path relative = fs::relative(entry.path(), run1);
    const fs::path other = run2 / relative;
    require(fs::exists(other), "second run is missing " + relative.string());
    require(read_file(entry.path().string()) == read_file(other.string()),
            "outputs differ: " + relative.string());
    ++compared;
  }
  for (const auto& entry : fs::recursive_directory_iterator(run2)) {
    if (!entry.is_regular_file()) continue;
    const fs::path relative = fs::relative(entry.path(), run2);
    require(fs::exists(run1 / relative), "first run is missing " + relative.string());
  }
  require(compared >= 20, "pipeline produced suspiciously few outputs");

  const double elapsed = seconds_since(start);
  require(elapsed < 120.0, "pipeline took " + format_double(elapsed) + "s");
}

// ---------------------------------------------------------------------------
// 9. Conditional reproduction on the original labeled corpus.

CorpusSchema schema_from_file(const std::string& path) {
  CorpusSchema schema;
  const std::string text = read_file(path);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    schema.columns[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return schema;
}

void criterion_original_corpus() {
  std::string path;
  if (const char* env = std::getenv("COMET_OFFMYCHEST_CSV")) path = env;
  if (path.empty() && fs::exists(kData + "/offmychest.csv"))
    path = kData + "/offmychest.csv";
  if (path.empty())
    throw Skip("original corpus not supplied (set COMET_OFFMYCHEST_CSV)");

  CorpusSchema schema;
  if (const char* env = std::getenv("COMET_OFFMYCHEST_SCHEMA"))
    schema = schema_from_file(env);

  const auto records = parse_corpus(read_file(path), schema, path);
  const DatasetSummary summary = summarize(records);

  require(summary.n_comments == 11573,
          "n_comments = " + std::to_string(summary.n_comments));
  require(summary.n_parents == 3511, "n_parents = " + std::to_string(summary.n_parents));
  require(std::fabs(summary.comments_per_parent.mean - 3.29) <= 0.01,
          "comments per parent mean = " + format_double(summary.comments_per_parent.mean));
  require(std::fabs(summary.words_per_comment.mean - 14.7) <= 0.5,
          "words mean = " + format_double(summary.words_per_comment.mean));
  require(std::fabs(summary.impact.mean - 10.938) <= 0.001,
          "impact mean = " + format_double(summary.impact.mean));
  require(summary.impact.min == -49.0, "impact min = " + format_double(summary.impact.min));
  require(summary.impact.max == 2637.0, "impact max = " + format_double(summary.impact.max));

  const WeekdayTable table = weekday_breakdown(records);
  const double expected_overall[6] = {30.44, 37.99, 25.02, 5.37, 9.66, 7.79};
  for (std::size_t l = 0; l < kLabelCount; ++l)
    require(std::fabs(table.overall[l] - expected_overall[l]) <= 0.1,
            std::string(kLabelNames[l]) + " overall = " + format_double(table.overall[l]));

  const auto correlations = correlate_labels(records);
  const double expected_rho[6] = {0.046, 0.024, 0.021, 0.028, 0.005, 0.019};
  for (std::size_t l = 0; l < kLabelCount; ++l) {
    require(correlations[l].rho.has_value(),
            std::string(kLabelNames[l]) + " correlation undefined");
    require(std::fabs(*correlations[l].rho - expected_rho[l]) <= 0.005,
            std::string(kLabelNames[l]) + " rho = " + format_double(*correlations[l].rho));
  }
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<void()> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "metric oracle equivalence", criterion_metric_oracle},
      {2, "ensemble identities", criterion_ensemble_identities},
      {3, "grid-search dominance", criterion_grid_dominance},
      {4, "baseline numerics", criterion_baseline_numerics},
      {5, "k-fold invariants and hand-run cross-validation", criterion_kfold_and_cv},
      {6, "pearson properties", criterion_pearson},
      {7, "semantic-feature oracles", criterion_semfeat},
      {8, "end-to-end pipeline determinism", criterion_end_to_end},
      {9, "original corpus reproduction (conditional)", criterion_original_corpus},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    try {
      criterion.body();
      std::printf("[PASS] criterion %d: %s\n", criterion.number, criterion.name);
    } catch (const Skip& skip) {
      std::printf("[SKIP] criterion %d: %s — %s\n", criterion.number, criterion.name,
                  skip.what());
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion %d: %s — %s\n", criterion.number, criterion.name,
                  e.what());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
