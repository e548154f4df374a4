#include "termcut/report.hpp"

#include <charconv>
#include <ostream>

namespace termcut {

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_cell(const std::optional<double>& x) { return x ? format_number(*x) : "undefined"; }

namespace {

void csv_header(std::ostream& out) {
  out << "row,n_S,m_S,c_S";
  for (Metric m : kAllMetrics) out << ',' << metric_name(m);
  out << '\n';
}

void csv_rows(std::ostream& out, const std::string& prefix, std::span<const CommunityRow> rows,
              const SummaryTable& summary) {
  for (const CommunityRow& row : rows) {
    out << prefix << row.community << ',' << row.stats.nodes << ',' << format_number(row.stats.internal_weight) << ','
        << format_number(row.stats.boundary_weight);
    for (Metric m : kAllMetrics) out << ',' << format_cell(row.scores[m]);
    out << '\n';
  }
  out << prefix << "mean,,,";
  for (const MetricSummary& s : summary) out << ',' << format_cell(s.mean);
  out << '\n' << prefix << "max,,,";
  for (const MetricSummary& s : summary) out << ',' << format_cell(s.max);
  out << '\n';
}

nlohmann::ordered_json cell_json(const std::optional<double>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json("undefined");
}

nlohmann::ordered_json rows_json(std::span<const CommunityRow> rows, const SummaryTable& summary) {
  nlohmann::ordered_json out;
  out["communities"] = nlohmann::ordered_json::array();
  for (const CommunityRow& row : rows) {
    nlohmann::ordered_json r;
    r["community"] = row.community;
    r["n_S"] = row.stats.nodes;
    r["m_S"] = row.stats.internal_weight;
    r["c_S"] = row.stats.boundary_weight;
    r["vol_S"] = row.stats.volume;
    for (Metric m : kAllMetrics) r[std::string(metric_name(m))] = cell_json(row.scores[m]);
    out["communities"].push_back(std::move(r));
  }
  nlohmann::ordered_json agg;
  for (Metric m : kAllMetrics) {
    const MetricSummary& s = summary[static_cast<std::size_t>(m)];
    agg[std::string(metric_name(m))] = {
        {"mean", cell_json(s.mean)}, {"max", cell_json(s.max)}, {"defined", s.defined}, {"undefined", s.undefined}};
  }
  out["summary"] = std::move(agg);
  return out;
}

}  // namespace

void write_report_csv(std::ostream& out, const QualityReport& report) {
  csv_header(out);
  csv_rows(out, "", report.rows, report.summary);
  if (report.truth) csv_rows(out, "truth:", report.truth->rows, report.truth->summary);
}

nlohmann::ordered_json report_json(const QualityReport& report) {
  nlohmann::ordered_json out = rows_json(report.rows, report.summary);
  if (report.truth) {
    nlohmann::ordered_json t = rows_json(report.truth->rows, report.truth->summary);
    t["misclassified"] = report.truth->misclassified;
    out["truth"] = std::move(t);
  }
  return out;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "setting,p,l,metric,mean,max,misclassified,status\n";
  for (const SweepRow& row : rows) {
    const std::string p = row.config ? std::to_string(row.config->pool_size) : "";
    const std::string l = row.config ? std::to_string(row.config->radius) : "";
    const std::string mis = row.misclassified ? std::to_string(*row.misclassified) : "";
    for (Metric m : kAllMetrics) {
      out << row.label << ',' << p << ',' << l << ',' << metric_name(m) << ',';
      if (row.report) {
        const MetricSummary& s = (*row.report)[m];
        out << format_cell(s.mean) << ',' << format_cell(s.max);
      } else {
        out << ',';
      }
      out << ',' << mis << ',' << (row.failure.empty() ? "ok" : "no-feasible-candidate") << '\n';
    }
  }
}

nlohmann::ordered_json sweep_json(std::span<const SweepRow> rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const SweepRow& row : rows) {
    nlohmann::ordered_json r;
    r["setting"] = row.label;
    if (row.config) {
      r["p"] = row.config->pool_size;
      r["l"] = row.config->radius;
    }
    if (row.misclassified) r["misclassified"] = *row.misclassified;
    if (row.report) r["report"] = rows_json(row.report->rows, row.report->summary);
    if (!row.failure.empty()) r["failure"] = row.failure;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace termcut
