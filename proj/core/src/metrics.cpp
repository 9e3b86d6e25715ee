#include "comet/metrics.hpp"

#include "comet/error.hpp"

namespace comet {

ConfusionCounts confusion(std::span<const std::uint8_t> pred,
                          std::span<const std::uint8_t> gold) {
  if (pred.size() != gold.size())
    throw UsageError("prediction/gold length mismatch: " +
                     std::to_string(pred.size()) + " vs " +
                     std::to_string(gold.size()));
  if (pred.empty()) throw UsageError("empty prediction sequence");

  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i]) {
      gold[i] ? ++c.tp : ++c.fp;
    } else {
      gold[i] ? ++c.fn : ++c.tn;
    }
  }
  return c;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricReport compute_metrics(const ConfusionCounts& counts) {
  const std::uint64_t total = counts.total();
  if (total == 0) throw UsageError("no evaluated pairs");

  MetricReport r;
  r.accuracy = ratio(counts.tp + counts.tn, total);
  r.precision1 = ratio(counts.tp, counts.tp + counts.fp);
  r.recall1 = ratio(counts.tp, counts.tp + counts.fn);
  r.f1 = (r.precision1 + r.recall1) == 0.0
             ? 0.0
             : 2.0 * r.precision1 * r.recall1 / (r.precision1 + r.recall1);
  r.acc_and_f1 = (r.accuracy + r.f1) / 2.0;
  return r;
}

MetricReport label_average(std::span<const MetricReport> reports) {
  if (reports.size() != kLabelCount)
    throw UsageError("expected " + std::to_string(kLabelCount) +
                     " per-label reports, got " + std::to_string(reports.size()));
  MetricReport avg;
  for (const MetricReport& r : reports) {
    avg.accuracy += r.accuracy;
    avg.precision1 += r.precision1;
    avg.recall1 += r.recall1;
    avg.f1 += r.f1;
    avg.acc_and_f1 += r.acc_and_f1;
  }
  const double n = static_cast<double>(reports.size());
  avg.accuracy /= n;
  avg.precision1 /= n;
  avg.recall1 /= n;
  avg.f1 /= n;
  avg.acc_and_f1 /= n;
  return avg;
}

}  // namespace comet
