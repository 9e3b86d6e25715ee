#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "comet/correlate.hpp"
#include "comet/corpus.hpp"
#include "comet/evaluate.hpp"

namespace comet {

enum class ReportFormat { Csv, Json, Markdown };

ReportFormat report_format_from_name(std::string_view name);  // throws UsageError
std::string_view report_format_extension(ReportFormat format);

// Rendering conventions: JSON and CSV carry fractions (shortest round-trip
// representation); markdown renders percentages with two decimals and the
// other metrics with three, like the published tables. Correlations are
// rendered with four decimals in CSV and markdown.
std::string render_summary(const DatasetSummary& summary, ReportFormat format);
std::string render_weekday_table(const WeekdayTable& table, ReportFormat format);
std::string render_label_distribution(const std::array<double, kLabelCount>& dist,
                                      ReportFormat format);
std::string render_comparison(const ComparisonTable& table, ReportFormat format);
std::string render_per_label(const ComparisonRow& row, ReportFormat format);
std::string render_correlations(std::span<const CorrelationResult> results,
                                ReportFormat format);

// The evaluation report interface: per-fold, per-label and label-averaged
// metrics plus config provenance. Always JSON.
std::string render_cv_report(const CrossValidationReport& report,
                             const EnsembleConfig& config, std::size_t k,
                             std::uint64_t seed);

}  // namespace comet
