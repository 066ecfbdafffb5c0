#include "dfosc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace dfosc::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

std::string csv_text(const std::string& header, const std::vector<std::vector<double>>& rows) {
  const size_t cols = static_cast<size_t>(std::count(header.begin(), header.end(), ',')) + 1;
  std::string out = header;
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw std::invalid_argument("csv: row width does not match the header");
    }
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const std::string& path, const std::string& header,
              const std::vector<std::vector<double>>& rows) {
  write_text_file(path, csv_text(header, rows));
}

namespace {

std::string fmt_coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf"};

}  // namespace

std::string svg_polyline_text(const std::vector<Series>& series, const std::string& x_label,
                              const std::string& y_label) {
  if (series.empty()) throw std::invalid_argument("svg: no series given");
  for (const auto& s : series) {
    if (s.points.empty()) throw std::invalid_argument("svg: empty series: " + s.label);
  }

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  const double x_pad = 0.05 * std::max(x_hi - x_lo, 1e-12);
  const double y_pad = 0.05 * std::max(y_hi - y_lo, 1e-12);
  x_lo -= x_pad;
  x_hi += x_pad;
  y_lo -= y_pad;
  y_hi += y_pad;

  const double width = 900, height = 560;
  const double ml = 72, mr = 24, mt = 24, mb = 56;
  const auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
  const auto py = [&](double y) {
    return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"560\" "
         "viewBox=\"0 0 900 560\">\n";
  svg += "<rect width=\"900\" height=\"560\" fill=\"white\"/>\n";
  // axes box
  svg += "<rect x=\"" + fmt_coord(ml) + "\" y=\"" + fmt_coord(mt) + "\" width=\"" +
         fmt_coord(width - ml - mr) + "\" height=\"" + fmt_coord(height - mt - mb) +
         "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";

  const int ticks = 6;
  for (int i = 0; i <= ticks; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / ticks;
    const double yv = y_lo + (y_hi - y_lo) * i / ticks;
    char label[40];
    svg += "<line x1=\"" + fmt_coord(px(xv)) + "\" y1=\"" + fmt_coord(height - mb) +
           "\" x2=\"" + fmt_coord(px(xv)) + "\" y2=\"" + fmt_coord(height - mb + 5) +
           "\" stroke=\"#444\"/>\n";
    std::snprintf(label, sizeof label, "%.4g", xv);
    svg += "<text x=\"" + fmt_coord(px(xv)) + "\" y=\"" + fmt_coord(height - mb + 18) +
           "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#222\">" + label + "</text>\n";
    svg += "<line x1=\"" + fmt_coord(ml - 5) + "\" y1=\"" + fmt_coord(py(yv)) + "\" x2=\"" +
           fmt_coord(ml) + "\" y2=\"" + fmt_coord(py(yv)) + "\" stroke=\"#444\"/>\n";
    std::snprintf(label, sizeof label, "%.4g", yv);
    svg += "<text x=\"" + fmt_coord(ml - 8) + "\" y=\"" + fmt_coord(py(yv) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\" fill=\"#222\">" + label + "</text>\n";
  }
  // zero lines when inside the range
  if (x_lo < 0.0 && x_hi > 0.0) {
    svg += "<line x1=\"" + fmt_coord(px(0)) + "\" y1=\"" + fmt_coord(mt) + "\" x2=\"" +
           fmt_coord(px(0)) + "\" y2=\"" + fmt_coord(height - mb) +
           "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  }
  if (y_lo < 0.0 && y_hi > 0.0) {
    svg += "<line x1=\"" + fmt_coord(ml) + "\" y1=\"" + fmt_coord(py(0)) + "\" x2=\"" +
           fmt_coord(width - mr) + "\" y2=\"" + fmt_coord(py(0)) +
           "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  }

  for (size_t s = 0; s < series.size(); ++s) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    svg += "\" stroke-width=\"1.4\" points=\"";
    for (const auto& [x, y] : series[s].points) {
      svg += fmt_coord(px(x));
      svg += ',';
      svg += fmt_coord(py(y));
      svg += ' ';
    }
    svg += "\"/>\n";
    if (!series[s].label.empty()) {
      svg += "<text x=\"" + fmt_coord(width - mr - 10) + "\" y=\"" +
             fmt_coord(mt + 18 + 16 * static_cast<double>(s)) +
             "\" font-size=\"12\" text-anchor=\"end\" fill=\"";
      svg += kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
      svg += "\">" + series[s].label + "</text>\n";
    }
  }

  svg += "<text x=\"" + fmt_coord(ml + (width - ml - mr) / 2) + "\" y=\"" +
         fmt_coord(height - 12) + "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#111\">" +
         x_label + "</text>\n";
  svg += "<text x=\"18\" y=\"" + fmt_coord(mt + (height - mt - mb) / 2) +
         "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#111\" transform=\"rotate(-90 18 " +
         fmt_coord(mt + (height - mt - mb) / 2) + ")\">" + y_label + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

void emit_svg_polyline(const std::string& path, const std::vector<Series>& series,
                       const std::string& x_label, const std::string& y_label) {
  write_text_file(path, svg_polyline_text(series, x_label, y_label));
}

void write_feedback_file(const std::string& path, const FeedbackFn& f) {
  write_text_file(path, f.to_text());
}

FeedbackFn read_feedback_file(const std::string& path) {
  return FeedbackFn::from_text(read_text_file(path));
}

void write_segment_file(const std::string& path, const Segment& s) {
  write_text_file(path, s.to_text());
}

Segment read_segment_file(const std::string& path) {
  return Segment::from_text(read_text_file(path));
}

std::string kv_text(const std::vector<std::pair<std::string, std::string>>& kvs) {
  std::string out;
  for (const auto& [k, v] : kvs) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

void write_kv_file(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kvs) {
  write_text_file(path, kv_text(kvs));
}

void write_trace_csv(const std::string& path, const SolutionTrace& trace) {
  std::vector<std::vector<double>> rows;
  rows.reserve(trace.samples().size());
  for (size_t k = 0; k < trace.samples().size(); ++k) {
    rows.push_back({trace.time_at(static_cast<int>(k)), trace.samples()[k]});
  }
  emit_csv(path, "t,x", rows);
}

void write_zeros_csv(const std::string& path, const SolutionTrace& trace) {
  std::vector<std::vector<double>> rows;
  for (size_t j = 0; j < trace.zeros().size(); ++j) {
    rows.push_back({static_cast<double>(j + 1), trace.zeros()[j].t,
                    static_cast<double>(trace.zeros()[j].direction)});
  }
  emit_csv(path, "j,z,direction", rows);
}

void write_phase_csv(const std::string& path, const SolutionTrace& trace) {
  std::vector<std::vector<double>> rows;
  for (const PhaseRow& r : phase_polyline(trace)) {
    rows.push_back({r.t, r.x, r.x_delayed});
  }
  emit_csv(path, "t,x,x_delayed", rows);
}

void write_planar_csv(const std::string& path, const PlanarTrace& trace, const FeedbackFn& f) {
  std::vector<std::vector<double>> rows;
  rows.reserve(trace.points().size());
  for (const PlanarPoint& p : trace.points()) {
    rows.push_back({p.t, p.u, p.v, hamiltonian(f, p.u, p.v)});
  }
  emit_csv(path, "t,u,v,H", rows);
}

void write_tau_curve_csv(const std::string& path,
                         const std::vector<std::pair<double, double>>& curve) {
  std::vector<std::vector<double>> rows;
  rows.reserve(curve.size());
  for (const auto& [u0, tau] : curve) rows.push_back({u0, tau});
  emit_csv(path, "u0,tau", rows);
}

std::string sop_record_text(const SOPResult& sop) {
  std::string out;
  out += "period: " + format_double(sop.period) + "\n";
  out += "amplitude: " + format_double(sop.amplitude) + "\n";
  out += "residual: " + format_double(sop.residual) + "\n";
  out += "iterations: " + std::to_string(sop.iterations) + "\n";
  return out;
}

}  // namespace dfosc::io
