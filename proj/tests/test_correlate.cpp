#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "comet/correlate.hpp"
#include "comet/error.hpp"

using namespace comet;

namespace {

// Textbook two-pass product-moment formula.
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

CommentRecord scored_record(std::string id, long long score,
                            const std::array<std::uint8_t, 6>& labels) {
  CommentRecord rec;
  rec.id = std::move(id);
  rec.parent_id = "p";
  rec.author = "u";
  rec.score = score;
  rec.text = "t";
  LabelSet set;
  set.values = labels;
  rec.labels = set;
  return rec;
}

}  // namespace

TEST_CASE("pearson on perfect linear and inverse data") {
  std::vector<double> x{1, 2, 3};
  std::vector<double> linear{2, 4, 6};
  std::vector<double> inverse{3, 2, 1};
  CHECK(pearson(x, linear) == 1.0);
  CHECK(pearson(x, inverse) == -1.0);
}

TEST_CASE("pearson hand-derived value is exact") {
  std::vector<double> x{1, 2, 3, 4};
  std::vector<double> y{1, 3, 2, 4};
  CHECK(pearson(x, y) == 0.8);
}

TEST_CASE("pearson error cases") {
  std::vector<double> constant{2, 2, 2};
  std::vector<double> varying{1, 2, 3};
  CHECK_THROWS_AS(pearson(constant, varying), UndefinedCorrelationError);
  CHECK_THROWS_AS(pearson(varying, constant), UndefinedCorrelationError);
  std::vector<double> shorter{1, 2};
  CHECK_THROWS_AS(pearson(varying, shorter), UsageError);
  std::vector<double> one{1};
  CHECK_THROWS_AS(pearson(one, one), UsageError);
}

TEST_CASE("pearson is invariant under positive affine maps") {
  std::mt19937_64 gen(59);
  std::normal_distribution<double> normal(0.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + gen() % 60;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = normal(gen);
      y[i] = normal(gen) + 0.3 * x[i];
    }
    const double rho = pearson(x, y);

    const double a = 0.25 + static_cast<double>(gen() % 100) / 10.0;
    const double b = normal(gen);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = a * x[i] + b;
    CHECK(std::fabs(pearson(scaled, y) - rho) < 1e-12);

    for (std::size_t i = 0; i < n; ++i) scaled[i] = -a * x[i] + b;
    CHECK(std::fabs(pearson(scaled, y) + rho) < 1e-12);
  }
}

TEST_CASE("pearson is symmetric bit for bit") {
  std::mt19937_64 gen(61);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + gen() % 40;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = normal(gen);
      y[i] = normal(gen);
    }
    CHECK(pearson(x, y) == pearson(y, x));
  }
}

TEST_CASE("pearson agrees with the textbook oracle") {
  std::mt19937_64 gen(67);
  std::normal_distribution<double> normal(10.0, 57.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + gen() % 100;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = normal(gen);
      y[i] = 0.5 * x[i] + normal(gen);
    }
    CHECK(std::fabs(pearson(x, y) - textbook_pearson(x, y)) < 1e-12);
  }
}

TEST_CASE("correlate_labels reports undefined columns instead of failing") {
  std::vector<CommentRecord> records;
  for (int i = 0; i < 6; ++i)
    records.push_back(scored_record("r" + std::to_string(i), 5, {1, 0, 0, 0, 0, 0}));
  // Constant score: every correlation is undefined.
  auto results = correlate_labels(records);
  for (const auto& result : results) {
    CHECK_FALSE(result.rho.has_value());
    CHECK(result.n == 6);
  }
}

TEST_CASE("correlate_labels finds a constructed signal") {
  std::vector<CommentRecord> records;
  for (int i = 0; i < 100; ++i) {
    const long long score = i;
    const std::uint8_t above_median = i >= 50 ? 1 : 0;
    records.push_back(
        scored_record("r" + std::to_string(i), score, {above_median, 0, 0, 0, 0, 0}));
  }
  auto results = correlate_labels(records);
  REQUIRE(results[0].rho.has_value());
  CHECK(*results[0].rho > 0.7);
  CHECK(results[0].variable == "emotional_disclosure");
  CHECK_FALSE(results[1].rho.has_value());  // constant zero label
}

TEST_CASE("correlate_features with exact linear relations") {
  std::vector<CommentRecord> records;
  std::vector<FeatureVector> features;
  for (int i = 0; i < 20; ++i) {
    records.push_back(scored_record("r" + std::to_string(i), i * 3 - 10, {0, 0, 0, 0, 0, 0}));
    FeatureVector f;
    f.positive_words = static_cast<std::size_t>(i);  // not equal to score, still linear in it
    f.positive_polarity_confidence = -2.0 * static_cast<double>(i * 3 - 10) + 7.0;
    f.sense_combination = static_cast<double>(i * 3 - 10);  // identical to score
    features.push_back(f);
  }
  auto results = correlate_features(records, features);

  CHECK(results[0].variable == "positive_words");
  CHECK(*results[0].rho == 1.0);
  CHECK(results[3].variable == "sense_combination");
  CHECK(*results[3].rho == 1.0);
  CHECK(results[6].variable == "positive_polarity_confidence");
  CHECK(*results[6].rho == -1.0);
}

TEST_CASE("correlate_features drops absent values pairwise") {
  std::vector<CommentRecord> records;
  std::vector<FeatureVector> features;
  for (int i = 0; i < 10; ++i) {
    records.push_back(scored_record("r" + std::to_string(i), i, {0, 0, 0, 0, 0, 0}));
    FeatureVector f;
    f.positive_words = static_cast<std::size_t>(i % 3);
    if (i % 2 == 0) f.sense_farmost = 0.1 * i;
    features.push_back(f);
  }
  auto results = correlate_features(records, features);

  CHECK(results[4].variable == "sense_farmost");
  CHECK(results[4].n == 5);
  CHECK(results[4].n_dropped == 5);
  REQUIRE(results[4].rho.has_value());

  CHECK(results[0].n == 10);
  CHECK(results[0].n_dropped == 0);

  // Fully absent feature: nothing to correlate, reported as undefined.
  CHECK(results[5].variable == "sense_closest");
  CHECK(results[5].n == 0);
  CHECK(results[5].n_dropped == 10);
  CHECK_FALSE(results[5].rho.has_value());
}

TEST_CASE("correlate_features validates alignment") {
  std::vector<CommentRecord> records{scored_record("a", 1, {0, 0, 0, 0, 0, 0})};
  std::vector<FeatureVector> features;
  CHECK_THROWS_AS(correlate_features(records, features), UsageError);
}
