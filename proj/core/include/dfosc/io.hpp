#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dfosc/dde.hpp"
#include "dfosc/feedback.hpp"
#include "dfosc/kaplan_yorke.hpp"
#include "dfosc/phase_plane.hpp"
#include "dfosc/return_map.hpp"
#include "dfosc/segment.hpp"

namespace dfosc::io {

/// Deterministic write: binary stream, LF endings come from the content.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Exactly the header line then one row per line, all values %.17g.
std::string csv_text(const std::string& header, const std::vector<std::vector<double>>& rows);
void emit_csv(const std::string& path, const std::string& header,
              const std::vector<std::vector<double>>& rows);

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Standalone vector-graphics document: one polyline per series, linear axes
/// auto-scaled with a 5% margin, tick labels, no external assets.  Rejects an
/// empty series list and empty series.
std::string svg_polyline_text(const std::vector<Series>& series, const std::string& x_label,
                              const std::string& y_label);
void emit_svg_polyline(const std::string& path, const std::vector<Series>& series,
                       const std::string& x_label, const std::string& y_label);

void write_feedback_file(const std::string& path, const FeedbackFn& f);
FeedbackFn read_feedback_file(const std::string& path);
void write_segment_file(const std::string& path, const Segment& s);
Segment read_segment_file(const std::string& path);

/// Flat `key = value` lines (config echoes, reports).
std::string kv_text(const std::vector<std::pair<std::string, std::string>>& kvs);
void write_kv_file(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kvs);

void write_trace_csv(const std::string& path, const SolutionTrace& trace);
void write_zeros_csv(const std::string& path, const SolutionTrace& trace);
void write_phase_csv(const std::string& path, const SolutionTrace& trace);
void write_planar_csv(const std::string& path, const PlanarTrace& trace, const FeedbackFn& f);
void write_tau_curve_csv(const std::string& path,
                         const std::vector<std::pair<double, double>>& curve);

/// Key: value record of a converged fixed point (period, amplitude, residual,
/// iterations).
std::string sop_record_text(const SOPResult& sop);

std::string format_double(double v);  // %.17g

}  // namespace dfosc::io
