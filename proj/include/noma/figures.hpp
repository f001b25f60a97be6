#pragma once

#include <string>
#include <vector>

#include "noma/scenario.hpp"
#include "noma/sweep.hpp"

namespace noma {

// A reproduction preset: one published-style experiment with a fixed sweep
// axis and metric. `base` carries the full scenario including the channel
// hyperparameters shared by all presets.
struct FigureSpec {
  std::string id;
  std::string title;
  std::string x_key;    // "n_users" or "n_clusters"
  std::string metric;   // "served_users", "total_power_w", "energy_efficiency_bpj"
  std::string x_label;
  std::string y_label;
  ScenarioConfig base;
};

const std::vector<std::string>& figure_ids();

// Throws ConfigError for unknown ids. trials_override > 0 replaces the
// preset's trial count.
FigureSpec figure_preset(const std::string& id, int trials_override = 0);

// Scenario defaults shared by every preset (channel geometry, thresholds,
// optimizer settings). Exposed so tests can pin the published setup.
ScenarioConfig figure_base_config();

struct FigureOutput {
  std::vector<std::string> files;
  std::vector<ResultRow> rows;
  std::vector<SweepPointSummary> summaries;
};

// Runs the preset for all algorithms and writes <id>_raw.csv,
// <id>_summary.csv, <id>.svg and <id>_meta.json under out_dir.
FigureOutput run_figure(const FigureSpec& spec, const std::string& out_dir);

// Minimal multi-series line chart with 2-SE error bars.
struct ChartSeries {
  std::string label;
  std::vector<double> x, y, err;
};
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<ChartSeries>& series);

}  // namespace noma
