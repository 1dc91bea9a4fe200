#pragma once

// Deterministic text output: numbers use 12 significant digits in the C
// locale, lines end in '\n'.

#include <filesystem>
#include <string>
#include <vector>

#include "distal_beam/geometry.hpp"

namespace distal_beam {

std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& add_row(std::vector<std::string> cells);
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Columns alpha,L1,L2,Lc,theta_tip,theta_bar,tip_ratio,status.
CsvTable invariant_table();
void add_report_row(CsvTable& table, const InvariantReport& r);
void add_failed_row(CsvTable& table, double alpha, const std::string& error);

/// Columns alpha,L2_polyline,Lc_polyline,Lc_approx,max_offset_curvature,tip_x,tip_y.
CsvTable diagnostics_table();
void add_diagnostics_row(CsvTable& table, const InvariantReport& r);

/// Columns rod,s,theta,x,y for the reference, parallel and convergent rods.
CsvTable rod_curves_table(const SampledCurve& ref, const SampledCurve& parallel,
                          const SampledCurve& convergent);

/// Minimal static SVG: polylines in data coordinates, y up.
class SvgPlot {
 public:
  void polyline(const std::vector<Point>& pts, const std::string& stroke, double width,
                bool dashed = false, double opacity = 1.0);
  void polyline(const SampledCurve& curve, const std::string& stroke, double width,
                bool dashed = false, double opacity = 1.0);
  void marker(Point p, const std::string& fill);
  void title(std::string text) { title_ = std::move(text); }

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  struct Line {
    std::vector<Point> pts;
    std::string stroke;
    double width;
    bool dashed;
    double opacity;
  };
  std::vector<Line> lines_;
  std::vector<std::pair<Point, std::string>> markers_;
  std::string title_;
};

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace distal_beam
