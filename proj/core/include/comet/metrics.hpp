#pragma once

#include <cstdint>
#include <span>

#include "comet/labels.hpp"

namespace comet {

struct ConfusionCounts {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
};

// Positive-class counting with positive = 1. Sequences must be non-empty
// and of equal length.
ConfusionCounts confusion(std::span<const std::uint8_t> pred,
                          std::span<const std::uint8_t> gold);

// All fields are fractions in [0, 1]. Ratios with a zero denominator are
// defined as 0. acc_and_f1 is always (accuracy + f1) / 2.
struct MetricReport {
  double accuracy = 0;
  double precision1 = 0;
  double recall1 = 0;
  double f1 = 0;
  double acc_and_f1 = 0;
};

MetricReport compute_metrics(const ConfusionCounts& counts);

// Unweighted (macro) mean over exactly six per-label reports.
MetricReport label_average(std::span<const MetricReport> reports);

}  // namespace comet
