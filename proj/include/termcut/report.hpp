#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "termcut/metrics.hpp"
#include "termcut/tsecd.hpp"

namespace termcut {

/// Shortest round-trip decimal form.
std::string format_number(double x);
std::string format_cell(const std::optional<double>& x);  // "undefined" for nullopt

/**
 * One row per community, then `mean` and `max` rows; with a truth block the
 * truth communities follow as `truth:<i>`, `truth:mean`, `truth:max`.
 * Columns: row, n_S, m_S, c_S, then the seven metrics.
 */
void write_report_csv(std::ostream& out, const QualityReport& report);

nlohmann::ordered_json report_json(const QualityReport& report);

/// Long format: one line per (row, metric) with mean, max and misclassification.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
nlohmann::ordered_json sweep_json(std::span<const SweepRow> rows);

}  // namespace termcut
