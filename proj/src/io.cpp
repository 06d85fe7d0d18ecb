#include "topolines/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace topolines {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buffer.str();
}

json fit_json(const std::optional<FitLine>& fit) {
  if (!fit) return nullptr;
  return json{{"slope", fit->slope},
              {"intercept", fit->intercept},
              {"entropy_min", fit->entropy_min},
              {"entropy_max", fit->entropy_max}};
}

const char* boundary_name(BoundaryRule rule) {
  return rule == BoundaryRule::Open ? "open" : "augmented";
}

constexpr std::array<const char*, 8> kPalette{"#000000", "#d62728", "#1f77b4", "#2ca02c",
                                              "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Maps data coordinates into a fixed plot rectangle.
struct Frame {
  static constexpr double width = 800, height = 420, left = 60, right = 160, top = 40,
                          bottom = 40;
  double x0, x1, y0, y1;

  Frame(double xlo, double xhi, double ylo, double yhi) : x0(xlo), x1(xhi), y0(ylo), y1(yhi) {
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) y1 = y0 + 1.0;
  }
  double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
  double py(double y) const { return top + (y1 - y) / (y1 - y0) * (height - top - bottom); }
};

std::string svg_open(const std::string& title, const Frame& f) {
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << Frame::width
    << "\" height=\"" << Frame::height << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << Frame::left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
    << escape_xml(title) << "</text>\n"
    << "<rect x=\"" << Frame::left << "\" y=\"" << Frame::top << "\" width=\""
    << Frame::width - Frame::left - Frame::right << "\" height=\""
    << Frame::height - Frame::top - Frame::bottom << "\" fill=\"none\" stroke=\"#888\"/>\n"
    << "<text x=\"" << Frame::left << "\" y=\"" << Frame::height - 12
    << "\" font-family=\"sans-serif\" font-size=\"11\">" << fixed(f.x0) << "</text>\n"
    << "<text x=\"" << Frame::width - Frame::right << "\" y=\"" << Frame::height - 12
    << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fixed(f.x1)
    << "</text>\n"
    << "<text x=\"" << Frame::left - 4 << "\" y=\"" << Frame::top + 10
    << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fixed(f.y1)
    << "</text>\n"
    << "<text x=\"" << Frame::left - 4 << "\" y=\"" << Frame::height - Frame::bottom
    << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << fixed(f.y0)
    << "</text>\n";
  return s.str();
}

std::string legend_entry(std::size_t slot, const std::string& label, const char* color) {
  const double y = Frame::top + 16.0 * static_cast<double>(slot) + 10;
  const double x = Frame::width - Frame::right + 12;
  std::ostringstream s;
  s << "<rect x=\"" << x << "\" y=\"" << y - 8 << "\" width=\"10\" height=\"10\" fill=\""
    << color << "\"/>\n"
    << "<text x=\"" << x + 14 << "\" y=\"" << y
    << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(label) << "</text>\n";
  return s.str();
}

std::vector<double> grid_parameters(const std::string& method, const TimeSeries& series,
                                    const EvaluationConfig& config) {
  if (auto it = config.grids.find(method); it != config.grids.end()) return it->second;
  std::vector<double> out;
  for (const auto& spec : default_grid(method, series)) out.push_back(parameter_of(spec));
  return out;
}

}  // namespace

TimeSeries parse_csv(std::string_view text, std::string label) {
  std::vector<double> xs, ys;
  std::size_t columns = 0;
  bool seen_row = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (fields.size() > 2)
      throw ValidationError(line_error(line_no, "expected 1 or 2 columns, got " +
                                                    std::to_string(fields.size())));
    std::vector<double> parsed;
    for (auto f : fields) {
      if (auto v = parse_number(f)) parsed.push_back(*v);
      else break;
    }
    if (parsed.size() != fields.size()) {
      if (!seen_row && columns == 0) {  // header
        columns = fields.size();
        continue;
      }
      throw ValidationError(line_error(line_no, "not a number: '" + std::string(line) + "'"));
    }
    if (columns == 0) columns = fields.size();
    if (fields.size() != columns)
      throw ValidationError(line_error(line_no, "expected " + std::to_string(columns) +
                                                    " columns, got " +
                                                    std::to_string(fields.size())));
    seen_row = true;
    if (columns == 2) {
      xs.push_back(parsed[0]);
      ys.push_back(parsed[1]);
    } else {
      ys.push_back(parsed[0]);
    }
  }
  return TimeSeries(std::move(ys), std::move(xs), std::move(label));
}

TimeSeries load_csv(const std::filesystem::path& path) {
  return parse_csv(read_file(path), path.stem().string());
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string to_csv(const TimeSeries& series) {
  std::string out = series.has_positions() ? "x,y\n" : "y\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.has_positions()) {
      out += format_double(series.position(i));
      out += ',';
    }
    out += format_double(series[i]);
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

void write_csv(const TimeSeries& series, const std::filesystem::path& path) {
  write_text(path, to_csv(series));
}

std::string report_json(const Evaluation& evaluation, const RunConfig& config) {
  const RankReport& report = evaluation.report;
  json doc;
  doc["dataset"] = report.dataset;
  doc["methods"] = report.methods;
  doc["entropy_range"] = {report.entropy_lo, report.entropy_hi};

  json metrics = json::object();
  for (Metric m : kMetrics) {
    json rows = json::array();
    if (auto it = report.per_metric.find(m); it != report.per_metric.end()) {
      for (const MethodScore& s : it->second) {
        rows.push_back({{"method", s.method},
                        {"rank", s.rank},
                        {"rankable", s.rankable()},
                        {"auc", s.auc ? json(*s.auc) : json(nullptr)},
                        {"fit", fit_json(s.fit)}});
      }
    }
    metrics[to_string(m)] = std::move(rows);
  }
  doc["metrics"] = std::move(metrics);
  doc["overall_rank"] = report.overall_rank;

  json points = json::array();
  for (const SweepPoint& p : evaluation.points) {
    json row{{"method", p.method}, {"parameter", p.parameter}, {"entropy", p.entropy}};
    for (Metric m : kMetrics) row[to_string(m)] = p.metrics[m];
    points.push_back(std::move(row));
  }
  doc["sweep_points"] = std::move(points);

  json failures = json::array();
  for (const SweepFailure& f : evaluation.failures)
    failures.push_back({{"method", f.method}, {"parameter", f.parameter}, {"message", f.message}});
  doc["failures"] = std::move(failures);

  const EvaluationConfig& ec = config.evaluation;
  json echo{{"methods", ec.methods},
            {"grids", ec.grids},
            {"apen_m", ec.apen_m},
            {"apen_r_factor", ec.apen_r_factor},
            {"apen_r", evaluation.entropy.r},
            {"boundary", boundary_name(ec.persistence.boundary)}};
  if (config.input) {
    echo["input"] = *config.input;
  } else if (config.synthetic) {
    echo["synthetic"] = {{"kind", to_string(*config.synthetic)},
                         {"n", config.synthetic_n},
                         {"seed", config.seed}};
  }
  doc["config"] = std::move(echo);
  return doc.dump(2) + "\n";
}

std::string canonicalize_json(std::string_view text) {
  return json::parse(text).dump(2) + "\n";
}

std::string line_chart_svg(const std::string& title, const std::vector<ChartSeries>& series) {
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& s : series) {
    for (double x : s.x) xlo = std::min(xlo, x), xhi = std::max(xhi, x);
    for (double y : s.y) ylo = std::min(ylo, y), yhi = std::max(yhi, y);
  }
  if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  const Frame frame(xlo, xhi, ylo, yhi);

  std::string out = svg_open(title, frame);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % kPalette.size()];
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1\" points=\"";
    const std::size_t count = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < count; ++i) {
      if (i) out += ' ';
      out += fixed(frame.px(s.x[i])) + "," + fixed(frame.py(s.y[i]));
    }
    out += "\"/>\n";
    out += legend_entry(k, s.label, color);
  }
  out += "</svg>\n";
  return out;
}

std::string entropy_scatter_svg(const Evaluation& evaluation, Metric metric) {
  const RankReport& report = evaluation.report;
  double xlo = INFINITY, xhi = -INFINITY, ylo = 0, yhi = -INFINITY;
  for (const SweepPoint& p : evaluation.points) {
    xlo = std::min(xlo, p.entropy), xhi = std::max(xhi, p.entropy);
    ylo = std::min(ylo, p.metrics[metric]), yhi = std::max(yhi, p.metrics[metric]);
  }
  if (!std::isfinite(xlo)) xlo = 0, xhi = 1, yhi = 1;
  const Frame frame(xlo, xhi, ylo, yhi);

  std::string out = svg_open(to_string(metric) + " vs approximate entropy (" + report.dataset +
                                 ")",
                             frame);
  const double band_x = frame.px(report.entropy_lo);
  out += "<rect x=\"" + fixed(band_x) + "\" y=\"" + fixed(Frame::top) + "\" width=\"" +
         fixed(frame.px(report.entropy_hi) - band_x) + "\" height=\"" +
         fixed(Frame::height - Frame::top - Frame::bottom) +
         "\" fill=\"#eeeeee\" fill-opacity=\"0.6\"/>\n";

  const auto& methods = report.methods;
  for (std::size_t k = 0; k < methods.size(); ++k) {
    const char* color = kPalette[(k + 1) % kPalette.size()];
    for (const SweepPoint& p : evaluation.points) {
      if (p.method != methods[k]) continue;
      out += "<circle cx=\"" + fixed(frame.px(p.entropy)) + "\" cy=\"" +
             fixed(frame.py(p.metrics[metric])) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    }
    if (auto it = report.per_metric.find(metric); it != report.per_metric.end()) {
      for (const MethodScore& s : it->second) {
        if (s.method != methods[k] || !s.fit) continue;
        const double a = report.entropy_lo, b = report.entropy_hi;
        out += "<line x1=\"" + fixed(frame.px(a)) + "\" y1=\"" + fixed(frame.py(s.fit->at(a))) +
               "\" x2=\"" + fixed(frame.px(b)) + "\" y2=\"" + fixed(frame.py(s.fit->at(b))) +
               "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
      }
    }
    out += legend_entry(k, methods[k], color);
  }
  out += "</svg>\n";
  return out;
}

WrittenFiles write_outputs(const TimeSeries& original, const Evaluation& evaluation,
                           const RunConfig& config) {
  WrittenFiles written;
  const auto emit = [&](const std::filesystem::path& name, std::string_view text) {
    write_text(config.output_dir / name, text);
    written.paths.push_back(name);
  };

  if (config.emit_json) emit("report.json", report_json(evaluation, config));

  if (config.emit_csv || config.emit_svg) {
    std::vector<ChartSeries> chart;
    const auto positions_of = [](const TimeSeries& s) {
      std::vector<double> x(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) x[i] = s.position(i);
      return x;
    };
    chart.push_back({"original", positions_of(original),
                     std::vector<double>(original.values().begin(), original.values().end())});
    for (const std::string& method : evaluation.report.methods) {
      const auto grid = grid_parameters(method, original, config.evaluation);
      if (grid.empty()) continue;
      const double parameter = grid[grid.size() / 2];
      TimeSeries smoothed = [&] {
        try {
          return smooth(original, make_spec(method, parameter), config.evaluation.persistence);
        } catch (const std::invalid_argument&) {
          return original;
        }
      }();
      if (config.emit_csv) emit("smoothed_" + method + ".csv", to_csv(smoothed));
      chart.push_back({method + " (" + format_double(parameter) + ")", positions_of(smoothed),
                       std::vector<double>(smoothed.values().begin(), smoothed.values().end())});
    }
    if (config.emit_svg) {
      emit("chart.svg", line_chart_svg(evaluation.report.dataset, chart));
      for (Metric m : kMetrics)
        emit("entropy_" + to_string(m) + ".svg", entropy_scatter_svg(evaluation, m));
    }
  }
  return written;
}

}  // namespace topolines
