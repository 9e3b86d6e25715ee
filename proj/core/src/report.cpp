#include "comet/report.hpp"

#include <json.hpp>

#include "comet/csv.hpp"
#include "comet/error.hpp"
#include "comet/format.hpp"

namespace comet {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 5> kMetricColumns = {
    "Accuracy", "Precision-1", "Recall-1", "F1", "Acc&F1"};

// Markdown metric cells follow the published style: accuracy as a
// two-decimal percentage, the rest as three-decimal fractions.
csv::Row metric_cells_markdown(const MetricReport& r) {
  return {format_fixed(100.0 * r.accuracy, 2) + "%", format_fixed(r.precision1, 3),
          format_fixed(r.recall1, 3), format_fixed(r.f1, 3),
          format_fixed(r.acc_and_f1, 3)};
}

csv::Row metric_cells_csv(const MetricReport& r) {
  return {format_double(r.accuracy), format_double(r.precision1),
          format_double(r.recall1), format_double(r.f1), format_double(r.acc_and_f1)};
}

ordered_json metric_json(const MetricReport& r) {
  ordered_json obj;
  obj["accuracy"] = r.accuracy;
  obj["precision1"] = r.precision1;
  obj["recall1"] = r.recall1;
  obj["f1"] = r.f1;
  obj["acc_and_f1"] = r.acc_and_f1;
  return obj;
}

ordered_json stat_json(const StatSummary& s) {
  ordered_json obj;
  obj["mean"] = s.mean;
  obj["min"] = s.min;
  obj["max"] = s.max;
  obj["std"] = s.std_dev;
  return obj;
}

std::string markdown_table(const csv::Row& header, const std::vector<csv::Row>& rows) {
  std::string out = "|";
  for (const std::string& h : header) out += " " + h + " |";
  out += "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
  out += "\n";
  for (const csv::Row& row : rows) {
    out += "|";
    for (const std::string& cell : row) out += " " + cell + " |";
    out += "\n";
  }
  return out;
}

ordered_json weights_json(const EnsembleConfig& config) {
  ordered_json weights;
  for (std::size_t i = 0; i < kLabelCount; ++i)
    weights[std::string(kLabelNames[i])] =
        ordered_json::array({config.weights[i].w_a, config.weights[i].w_b});
  return weights;
}

}  // namespace

ReportFormat report_format_from_name(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw UsageError("unknown format '" + std::string(name) +
                   "' (expected csv, json or markdown)");
}

std::string_view report_format_extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Json: return "json";
    case ReportFormat::Markdown: return "md";
  }
  throw UsageError("bad format value");
}

std::string render_summary(const DatasetSummary& summary, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json obj;
    obj["n_comments"] = summary.n_comments;
    obj["n_parents"] = summary.n_parents;
    obj["n_users"] = summary.n_users;
    obj["comments_per_parent"] = stat_json(summary.comments_per_parent);
    obj["comments_per_user"] = stat_json(summary.comments_per_user);
    obj["words_per_comment"] = stat_json(summary.words_per_comment);
    obj["impact"] = stat_json(summary.impact);
    if (summary.label_positive_rate) {
      ordered_json rates;
      for (std::size_t i = 0; i < kLabelCount; ++i)
        rates[std::string(kLabelNames[i])] = (*summary.label_positive_rate)[i];
      obj["label_positive_rate"] = std::move(rates);
    } else {
      obj["label_positive_rate"] = nullptr;
    }
    return obj.dump(2) + "\n";
  }

  auto stat_cells = [&](const StatSummary& s) -> csv::Row {
    if (format == ReportFormat::Markdown)
      return {format_fixed(s.mean, 3), format_fixed(s.min, 0), format_fixed(s.max, 0),
              format_fixed(s.std_dev, 3)};
    return {format_double(s.mean), format_double(s.min), format_double(s.max),
            format_double(s.std_dev)};
  };

  csv::Row header{"statistic", "mean", "min", "max", "std"};
  std::vector<csv::Row> rows;
  auto add = [&](std::string_view name, const StatSummary& s) {
    csv::Row row{std::string(name)};
    for (std::string& cell : stat_cells(s)) row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  };
  add("comments_per_parent", summary.comments_per_parent);
  add("comments_per_user", summary.comments_per_user);
  add("words_per_comment", summary.words_per_comment);
  add("impact", summary.impact);

  std::string counts;
  if (format == ReportFormat::Markdown) {
    counts = "comments: " + std::to_string(summary.n_comments) +
             ", parents: " + std::to_string(summary.n_parents) +
             ", users: " + std::to_string(summary.n_users) + "\n\n";
    return counts + markdown_table(header, rows);
  }

  std::string out = csv::format_row({"n_comments", std::to_string(summary.n_comments)});
  out += csv::format_row({"n_parents", std::to_string(summary.n_parents)});
  out += csv::format_row({"n_users", std::to_string(summary.n_users)});
  out += csv::format_row(header);
  for (const csv::Row& row : rows) out += csv::format_row(row);
  return out;
}

std::string render_weekday_table(const WeekdayTable& table, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json obj;
    for (int d = 0; d < 7; ++d) {
      const std::string day(kWeekdayNames[d]);
      if (!table.rows[d]) {
        obj[day] = nullptr;
        continue;
      }
      ordered_json row;
      row["n"] = table.counts[d];
      ordered_json cells;
      for (std::size_t i = 0; i < kLabelCount; ++i)
        cells[std::string(kLabelNames[i])] = (*table.rows[d])[i] / 100.0;
      row["positive_rate"] = std::move(cells);
      obj[day] = std::move(row);
    }
    ordered_json overall;
    for (std::size_t i = 0; i < kLabelCount; ++i)
      overall[std::string(kLabelNames[i])] = table.overall[i] / 100.0;
    obj["Overall"] = {{"positive_rate", std::move(overall)}};
    return obj.dump(2) + "\n";
  }

  const bool md = format == ReportFormat::Markdown;
  auto cell = [&](double percent) {
    return md ? format_fixed(percent, 2) + "%" : format_double(percent / 100.0);
  };

  csv::Row header{md ? "Weekday/Label" : "weekday"};
  for (std::size_t i = 0; i < kLabelCount; ++i)
    header.emplace_back(md ? kLabelTitles[i] : kLabelNames[i]);

  std::vector<csv::Row> rows;
  for (int d = 0; d < 7; ++d) {
    if (!table.rows[d]) continue;  // absent weekday, not zero
    csv::Row row{std::string(kWeekdayNames[d])};
    for (std::size_t i = 0; i < kLabelCount; ++i) row.push_back(cell((*table.rows[d])[i]));
    rows.push_back(std::move(row));
  }
  csv::Row overall{"Overall"};
  for (std::size_t i = 0; i < kLabelCount; ++i) overall.push_back(cell(table.overall[i]));
  rows.push_back(std::move(overall));

  if (md) return markdown_table(header, rows);
  std::string out = csv::format_row(header);
  for (const csv::Row& row : rows) out += csv::format_row(row);
  return out;
}

std::string render_label_distribution(const std::array<double, kLabelCount>& dist,
                                      ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json obj;
    for (std::size_t i = 0; i < kLabelCount; ++i)
      obj[std::string(kLabelNames[i])] = dist[i];
    return obj.dump(2) + "\n";
  }
  const bool md = format == ReportFormat::Markdown;
  csv::Row header{md ? "Label" : "label", md ? "Positive" : "positive_rate"};
  std::vector<csv::Row> rows;
  for (std::size_t i = 0; i < kLabelCount; ++i)
    rows.push_back({std::string(md ? kLabelTitles[i] : kLabelNames[i]),
                    md ? format_fixed(100.0 * dist[i], 2) + "%" : format_double(dist[i])});
  if (md) return markdown_table(header, rows);
  std::string out = csv::format_row(header);
  for (const csv::Row& row : rows) out += csv::format_row(row);
  return out;
}

std::string render_comparison(const ComparisonTable& table, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (const ComparisonRow& row : table.rows) {
      ordered_json obj;
      obj["name"] = row.name;
      obj["label_averaged"] = metric_json(row.label_averaged);
      ordered_json per_label;
      for (std::size_t i = 0; i < kLabelCount; ++i)
        per_label[std::string(kLabelNames[i])] = metric_json(row.per_label[i]);
      obj["per_label"] = std::move(per_label);
      rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
  }

  const bool md = format == ReportFormat::Markdown;
  csv::Row header{md ? "Model/Metrics" : "name"};
  for (std::string_view col : kMetricColumns)
    header.emplace_back(md ? std::string(col) : to_lower_ascii(col));

  std::vector<csv::Row> rows;
  for (const ComparisonRow& row : table.rows) {
    csv::Row cells{row.name};
    for (std::string& cell :
         md ? metric_cells_markdown(row.label_averaged) : metric_cells_csv(row.label_averaged))
      cells.push_back(std::move(cell));
    rows.push_back(std::move(cells));
  }
  if (md) return markdown_table(header, rows);
  std::string out = csv::format_row(header);
  for (const csv::Row& row : rows) out += csv::format_row(row);
  return out;
}

std::string render_per_label(const ComparisonRow& row, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json obj;
    obj["name"] = row.name;
    ordered_json per_label;
    for (std::size_t i = 0; i < kLabelCount; ++i)
      per_label[std::string(kLabelNames[i])] = metric_json(row.per_label[i]);
    obj["per_label"] = std::move(per_label);
    obj["label_averaged"] = metric_json(row.label_averaged);
    return obj.dump(2) + "\n";
  }

  const bool md = format == ReportFormat::Markdown;
  csv::Row header{md ? "Label/Metrics" : "label"};
  for (std::string_view col : kMetricColumns)
    header.emplace_back(md ? std::string(col) : to_lower_ascii(col));

  std::vector<csv::Row> rows;
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    csv::Row cells{std::string(md ? kLabelTitles[i] : kLabelNames[i])};
    for (std::string& cell :
         md ? metric_cells_markdown(row.per_label[i]) : metric_cells_csv(row.per_label[i]))
      cells.push_back(std::move(cell));
    rows.push_back(std::move(cells));
  }
  if (md) return markdown_table(header, rows);
  std::string out = csv::format_row(header);
  for (const csv::Row& r : rows) out += csv::format_row(r);
  return out;
}

std::string render_correlations(std::span<const CorrelationResult> results,
                                ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json rows = ordered_json::array();
    for (const CorrelationResult& r : results) {
      ordered_json obj;
      obj["variable"] = r.variable;
      if (r.rho)
        obj["rho"] = *r.rho;
      else
        obj["rho"] = nullptr;
      obj["n"] = r.n;
      obj["n_dropped"] = r.n_dropped;
      rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
  }

  const bool md = format == ReportFormat::Markdown;
  csv::Row header = md ? csv::Row{"Variable", "rho with Impact", "n", "dropped"}
                       : csv::Row{"variable", "rho", "n", "n_dropped"};
  std::vector<csv::Row> rows;
  for (const CorrelationResult& r : results) {
    rows.push_back({r.variable, r.rho ? format_fixed(*r.rho, 4) : "undefined",
                    std::to_string(r.n), std::to_string(r.n_dropped)});
  }
  if (md) return markdown_table(header, rows);
  std::string out = csv::format_row(header);
  for (const csv::Row& row : rows) out += csv::format_row(row);
  return out;
}

std::string render_cv_report(const CrossValidationReport& report,
                             const EnsembleConfig& config, std::size_t k,
                             std::uint64_t seed) {
  ordered_json obj;
  obj["format"] = "comet-cv-report";
  obj["version"] = 1;
  ordered_json provenance;
  provenance["config"] = config.name;
  provenance["weights"] = weights_json(config);
  provenance["threshold"] = config.threshold;
  provenance["k"] = k;
  provenance["seed"] = seed;
  obj["provenance"] = std::move(provenance);

  ordered_json folds = ordered_json::array();
  for (const FoldReport& fold : report.folds) {
    ordered_json f;
    f["fold"] = fold.fold;
    ordered_json per_label;
    for (std::size_t i = 0; i < kLabelCount; ++i)
      per_label[std::string(kLabelNames[i])] = metric_json(fold.per_label[i]);
    f["per_label"] = std::move(per_label);
    f["label_averaged"] = metric_json(fold.label_averaged);
    folds.push_back(std::move(f));
  }
  obj["folds"] = std::move(folds);
  obj["mean"] = metric_json(report.mean);
  return obj.dump(2) + "\n";
}

}  // namespace comet
