#include "distal_beam/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace distal_beam {
namespace {

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("error while writing " + path.string());
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("CSV row width mismatch");
  rows_.push_back(std::move(cells));
  return *this;
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

CsvTable invariant_table() {
  return CsvTable({"alpha", "L1", "L2", "Lc", "theta_tip", "theta_bar", "tip_ratio", "status"});
}

void add_report_row(CsvTable& table, const InvariantReport& r) {
  table.add_row({format_number(r.alpha), format_number(r.L1), format_number(r.L2),
                 format_number(r.Lc), format_number(r.theta_tip), format_number(r.theta_bar),
                 format_number(r.tip_ratio), "ok"});
}

void add_failed_row(CsvTable& table, double alpha, const std::string& error) {
  table.add_row({format_number(alpha), "", "", "", "", "", "", "error: " + error});
}

CsvTable diagnostics_table() {
  return CsvTable({"alpha", "L2_polyline", "Lc_polyline", "Lc_approx", "max_offset_curvature",
                   "tip_x", "tip_y"});
}

void add_diagnostics_row(CsvTable& table, const InvariantReport& r) {
  table.add_row({format_number(r.alpha), format_number(r.L2_polyline),
                 format_number(r.Lc_polyline), format_number(r.Lc_approx),
                 format_number(r.max_offset_curvature), format_number(r.tip.x),
                 format_number(r.tip.y)});
}

CsvTable rod_curves_table(const SampledCurve& ref, const SampledCurve& parallel,
                          const SampledCurve& convergent) {
  CsvTable t({"rod", "s", "theta", "x", "y"});
  const std::pair<const char*, const SampledCurve*> rods[] = {
      {"reference", &ref}, {"parallel", &parallel}, {"convergent", &convergent}};
  for (const auto& [name, c] : rods) {
    for (std::size_t i = 0; i < c->size(); ++i) {
      t.add_row({name, format_number(c->grid[i]), format_number(c->theta[i]),
                 format_number(c->x[i]), format_number(c->y[i])});
    }
  }
  return t;
}

void SvgPlot::polyline(const std::vector<Point>& pts, const std::string& stroke, double width,
                       bool dashed, double opacity) {
  lines_.push_back({pts, stroke, width, dashed, opacity});
}

void SvgPlot::polyline(const SampledCurve& curve, const std::string& stroke, double width,
                       bool dashed, double opacity) {
  // ~256 points per curve is enough for a static plot.
  const std::size_t stride = std::max<std::size_t>(1, curve.size() / 256);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < curve.size(); i += stride) pts.push_back(curve.point(i));
  if ((curve.size() - 1) % stride != 0) pts.push_back(curve.tip());
  polyline(pts, stroke, width, dashed, opacity);
}

void SvgPlot::marker(Point p, const std::string& fill) { markers_.emplace_back(p, fill); }

std::string SvgPlot::str() const {
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  auto grow = [&](Point p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const auto& l : lines_)
    for (Point p : l.pts) grow(p);
  for (const auto& m : markers_) grow(m.first);
  if (!std::isfinite(xmin)) xmin = ymin = 0.0, xmax = ymax = 1.0;

  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double pad = 0.05 * span;
  const double scale = 800.0 / (span + 2.0 * pad);
  const double width = (xmax - xmin + 2.0 * pad) * scale;
  const double height = (ymax - ymin + 2.0 * pad) * scale;
  auto px = [&](double x) { return (x - xmin + pad) * scale; };
  auto py = [&](double y) { return (ymax + pad - y) * scale; };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(width) +
                    "\" height=\"" + svg_num(height) + "\" viewBox=\"0 0 " + svg_num(width) + " " +
                    svg_num(height) + "\">\n";
  if (!title_.empty()) out += "<title>" + title_ + "</title>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& l : lines_) {
    out += "<polyline fill=\"none\" stroke=\"" + l.stroke + "\" stroke-width=\"" +
           svg_num(l.width) + "\"";
    if (l.dashed) out += " stroke-dasharray=\"8 6\"";
    if (l.opacity < 1.0) out += " stroke-opacity=\"" + svg_num(l.opacity) + "\"";
    out += " points=\"";
    for (std::size_t i = 0; i < l.pts.size(); ++i) {
      if (i) out += ' ';
      out += svg_num(px(l.pts[i].x)) + "," + svg_num(py(l.pts[i].y));
    }
    out += "\"/>\n";
  }
  for (const auto& [p, fill] : markers_)
    out += "<circle cx=\"" + svg_num(px(p.x)) + "\" cy=\"" + svg_num(py(p.y)) +
           "\" r=\"4\" fill=\"" + fill + "\"/>\n";
  out += "</svg>\n";
  return out;
}

void SvgPlot::write(const std::filesystem::path& path) const { write_text(path, str()); }

}  // namespace distal_beam
