#include "noma/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "noma/clustering.hpp"

namespace noma {
namespace {

constexpr const char* kFigureIds[] = {"fig5", "fig6", "fig7", "fig8", "fig9", "fig10"};

const std::vector<int> kUserSweep = {30, 60, 90, 120, 150};
const std::vector<int> kUserSweepWide = {50, 100, 150, 200, 250, 300};
const std::vector<int> kChainSweep = {5, 10, 15, 20, 25};

std::string fmt_tick(double v) {
  char buf[32];
  snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ScenarioConfig figure_base_config() {
  ScenarioConfig cfg;
  cfg.trials = 50;
  cfg.seed = 42;
  cfg.gamma_th_db = {10.0};
  cfg.noise_power_w = 1e-2;
  cfg.p_max_w = 1.0;
  cfg.bandwidth_hz = 200e3;
  cfg.n_scatter_clusters = 1;
  cfg.rays_per_cluster = 10;
  cfg.angular_spread_deg = 0.002;
  cfg.carrier_normalization = 60.0;
  cfg.element_spacing_wl = 0.5;
  cfg.array_geometry = ArrayGeometry::kUniformLinear;
  cfg.antenna_gain_model = AntennaGainModel::kUnitGain;
  cfg.n_hotspots = 0;
  cfg.gwo_pop_size = 30;
  cfg.gwo_max_iters = 150;
  return cfg;
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids(std::begin(kFigureIds), std::end(kFigureIds));
  return ids;
}

FigureSpec figure_preset(const std::string& id, int trials_override) {
  FigureSpec spec;
  spec.id = id;
  spec.base = figure_base_config();
  if (id == "fig5") {
    spec.title = "Served users vs offered users";
    spec.x_key = "n_users";
    spec.metric = "served_users";
    spec.base.n_users = kUserSweep;
    spec.base.n_rf_chains = {5};
  } else if (id == "fig6") {
    spec.title = "Served users vs clusters";
    spec.x_key = "n_clusters";
    spec.metric = "served_users";
    spec.base.n_users = {100};
    spec.base.n_rf_chains = kChainSweep;
  } else if (id == "fig7") {
    spec.title = "Transmit power vs offered users";
    spec.x_key = "n_users";
    spec.metric = "total_power_w";
    spec.base.n_users = kUserSweep;
    spec.base.n_rf_chains = {5};
  } else if (id == "fig8") {
    spec.title = "Transmit power vs clusters";
    spec.x_key = "n_clusters";
    spec.metric = "total_power_w";
    spec.base.n_users = {100};
    spec.base.n_rf_chains = kChainSweep;
  } else if (id == "fig9") {
    spec.title = "Energy efficiency vs offered users";
    spec.x_key = "n_users";
    spec.metric = "energy_efficiency_bpj";
    spec.base.n_users = kUserSweepWide;
    spec.base.n_rf_chains = {5};
  } else if (id == "fig10") {
    spec.title = "Energy efficiency vs clusters";
    spec.x_key = "n_clusters";
    spec.metric = "energy_efficiency_bpj";
    spec.base.n_users = {100};
    spec.base.n_rf_chains = kChainSweep;
  } else {
    throw ConfigError("unknown figure id '" + id + "'");
  }
  spec.x_label = spec.x_key == "n_users" ? "offered users" : "clusters (RF chains)";
  spec.y_label = spec.metric == "served_users"
                     ? "served users (mean)"
                     : (spec.metric == "total_power_w" ? "total transmit power [W]"
                                                       : "energy efficiency [bit/J]");
  if (trials_override > 0) spec.base.trials = trials_override;
  return spec;
}

namespace {

double metric_mean(const SweepPointSummary& s, const std::string& metric) {
  if (metric == "served_users") return s.served_mean;
  if (metric == "total_power_w") return s.total_power_mean_w;
  return s.energy_efficiency_mean_bpj;
}

double metric_se(const SweepPointSummary& s, const std::string& metric) {
  if (metric == "served_users") return s.served_se;
  if (metric == "total_power_w") return s.total_power_se_w;
  return s.energy_efficiency_se_bpj;
}

}  // namespace

FigureOutput run_figure(const FigureSpec& spec, const std::string& out_dir) {
  static constexpr Algorithm kAll[] = {Algorithm::kNearFar, Algorithm::kCorrPair,
                                       Algorithm::kRandom,  Algorithm::kCia,
                                       Algorithm::kKuc,     Algorithm::kGwo};
  FigureOutput out;
  std::vector<ChartSeries> series;
  for (Algorithm alg : kAll) {
    ScenarioConfig cfg = spec.base;
    cfg.algorithm = alg;
    SweepResult res = run_sweep(cfg);
    ChartSeries cs;
    cs.label = algorithm_name(alg);
    for (const SweepPointSummary& s : res.summaries) {
      cs.x.push_back(spec.x_key == "n_users" ? s.n_users : s.n_clusters);
      cs.y.push_back(metric_mean(s, spec.metric));
      cs.err.push_back(2.0 * metric_se(s, spec.metric));
    }
    if (!cs.x.empty()) series.push_back(std::move(cs));
    out.rows.insert(out.rows.end(), res.rows.begin(), res.rows.end());
    out.summaries.insert(out.summaries.end(), res.summaries.begin(), res.summaries.end());
  }

  const std::string prefix = out_dir + "/" + spec.id;
  write_file(prefix + "_raw.csv", rows_to_csv(out.rows));
  write_file(prefix + "_summary.csv", summaries_to_csv(out.summaries));
  write_file(prefix + ".svg", render_line_chart(spec.title, spec.x_label, spec.y_label, series));

  nlohmann::json meta;
  meta["figure"] = spec.id;
  meta["title"] = spec.title;
  meta["x_key"] = spec.x_key;
  meta["metric"] = spec.metric;
  meta["trials"] = spec.base.trials;
  meta["seed"] = spec.base.seed;
  meta["gamma_th_db"] = spec.base.gamma_th_db;
  meta["noise_power_w"] = spec.base.noise_power_w;
  meta["p_max_w"] = spec.base.p_max_w;
  meta["bandwidth_hz"] = spec.base.bandwidth_hz;
  meta["channel"] = {{"n_scatter_clusters", spec.base.n_scatter_clusters},
                     {"rays_per_cluster", spec.base.rays_per_cluster},
                     {"angular_spread_deg", spec.base.angular_spread_deg},
                     {"carrier_normalization", spec.base.carrier_normalization},
                     {"element_spacing_wl", spec.base.element_spacing_wl},
                     {"n_hotspots", spec.base.n_hotspots}};
  std::vector<std::string> alg_names;
  for (Algorithm alg : kAll) alg_names.push_back(algorithm_name(alg));
  meta["algorithms"] = alg_names;
  write_file(prefix + "_meta.json", meta.dump(2) + "\n");

  out.files = {prefix + "_raw.csv", prefix + "_summary.csv", prefix + ".svg",
               prefix + "_meta.json"};
  return out;
}

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<ChartSeries>& series) {
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#9467bd", "#ff7f0e", "#8c564b"};
  const double width = 880, height = 540;
  const double ml = 90, mr = 210, mt = 50, mb = 70;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const ChartSeries& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double lo = s.y[i] - s.err[i], hi = s.y[i] + s.err[i];
      if (first) {
        xmin = xmax = s.x[i];
        ymin = lo;
        ymax = hi;
        first = false;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, lo);
        ymax = std::max(ymax, hi);
      }
    }
  }
  ymin = std::min(0.0, ymin);
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  ymax += 0.05 * (ymax - ymin);

  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };
  auto nice_step = [](double range) {
    double raw = range / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double norm = raw / mag;
    double step = norm < 1.5 ? 1.0 : (norm < 3.5 ? 2.0 : (norm < 7.5 ? 5.0 : 10.0));
    return step * mag;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"17\">" << title << "</text>\n";

  double ystep = nice_step(ymax - ymin);
  for (double ty = std::ceil(ymin / ystep) * ystep; ty <= ymax + 1e-9 * ystep; ty += ystep) {
    svg << "<line x1=\"" << ml << "\" y1=\"" << py(ty) << "\" x2=\"" << ml + pw << "\" y2=\""
        << py(ty) << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << py(ty) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt_tick(ty)
        << "</text>\n";
  }
  double xstep = nice_step(xmax - xmin);
  for (double tx = std::ceil(xmin / xstep) * xstep; tx <= xmax + 1e-9 * xstep; tx += xstep) {
    svg << "<line x1=\"" << px(tx) << "\" y1=\"" << mt + ph << "\" x2=\"" << px(tx) << "\" y2=\""
        << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << px(tx) << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fmt_tick(tx)
        << "</text>\n";
  }
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
      << mt + ph << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << x_label
      << "</text>\n";
  svg << "<text x=\"24\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
      << "transform=\"rotate(-90 24 " << mt + ph / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const ChartSeries& s = series[si];
    const char* color = kColors[si % 6];
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      pts << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
      if (s.err[i] > 0) {
        svg << "<line x1=\"" << px(s.x[i]) << "\" y1=\"" << py(s.y[i] - s.err[i]) << "\" x2=\""
            << px(s.x[i]) << "\" y2=\"" << py(s.y[i] + s.err[i]) << "\" stroke=\"" << color
            << "\" stroke-width=\"1\"/>\n";
      }
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
        << pts.str() << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      svg << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3.5\" fill=\""
          << color << "\"/>\n";
    double ly = mt + 16 + 22 * static_cast<double>(si);
    svg << "<line x1=\"" << ml + pw + 18 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw + 46
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw + 52 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace noma
