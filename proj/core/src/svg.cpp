#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "eigdiag/diagram.hpp"

namespace eigdiag {

namespace {

constexpr double kMargin = 60.0;
constexpr int kCurvePoints = 256;
constexpr double kFallbackXMax = 120.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// comments may not contain "--"
std::string comment_safe(std::string s) {
  for (std::size_t p; (p = s.find("--")) != std::string::npos;) s.replace(p, 2, "- -");
  return s;
}

const char* curve_color(const std::string& tag) {
  if (tag == "theorem-lower" || tag == "theorem-upper") return "#c0392b";
  return "#2471a3";
}

double nice_step(double span) {
  const double raw = span / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

}  // namespace

double PlotMap::px(double x) const noexcept {
  return margin + (x - x_min) / (x_max - x_min) * (width - 2.0 * margin);
}

double PlotMap::py(double y) const noexcept {
  return height - margin - (y - y_min) / (y_max - y_min) * (height - 2.0 * margin);
}

PlotMap plot_map(const std::vector<DiagramRecord>& records, const SvgOptions& opts) {
  double x_max = kFallbackXMax;
  if (opts.x_max) {
    x_max = *opts.x_max;
  } else if (!records.empty()) {
    double m = 0.0;
    for (const auto& r : records)
      if (std::isfinite(r.x)) m = std::max(m, r.x);
    if (m * 1.05 > opts.x_min) x_max = m * 1.05;
  }
  if (!(x_max > opts.x_min) || !(opts.y_max > opts.y_min))
    throw Error(ErrorCode::InvalidParam, "empty plot range");
  return {opts.x_min, x_max, opts.y_min, opts.y_max, opts.width, opts.height, kMargin};
}

void write_svg(const std::vector<DiagramRecord>& records, const std::vector<ReferenceCurve>& curves,
               std::ostream& out, const SvgOptions& opts) {
  const PlotMap m = plot_map(records, opts);
  const double left = m.px(m.x_min), right = m.px(m.x_max);
  const double top = m.py(m.y_max), bottom = m.py(m.y_min);
  const double sx = (m.width - 2.0 * m.margin) / (m.x_max - m.x_min);
  const double sy = (m.height - 2.0 * m.margin) / (m.y_max - m.y_min);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(m.width) << ' ' << fmt(m.height)
      << "\" width=\"" << fmt(m.width) << "\" height=\"" << fmt(m.height) << "\">\n";
  char map_comment[512];
  std::snprintf(map_comment, sizeof map_comment,
                "<!-- coordinate map: px = %.17g + (x - %.17g) * %.17g ; py = %.17g - (y - %.17g) * %.17g ;"
                " data x in [%.17g, %.17g], y in [%.17g, %.17g] -->\n",
                m.margin, m.x_min, sx, m.height - m.margin, m.y_min, sy, m.x_min, m.x_max, m.y_min, m.y_max);
  out << map_comment;
  if (!opts.provenance.empty()) out << "<!-- " << comment_safe(opts.provenance) << " -->\n";
  out << "<defs><clipPath id=\"plot\"><rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\""
      << fmt(right - left) << "\" height=\"" << fmt(bottom - top) << "\"/></clipPath></defs>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << fmt(m.width / 2) << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << escape(opts.title) << "</text>\n";

  // axes frame and ticks
  out << "<g id=\"axes\" stroke=\"black\" fill=\"none\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(right - left)
      << "\" height=\"" << fmt(bottom - top) << "\"/>\n";
  std::string ticks;
  const double xs = nice_step(m.x_max - m.x_min);
  for (double t = std::ceil(m.x_min / xs) * xs; t <= m.x_max + 1e-9; t += xs) {
    const double p = m.px(t);
    ticks += "M" + fmt(p) + " " + fmt(bottom) + "v6";
    out << "<text x=\"" << fmt(p) << "\" y=\"" << fmt(bottom + 20) << "\" text-anchor=\"middle\" stroke=\"none\" "
        << "fill=\"black\">" << t << "</text>\n";
  }
  const double ys = nice_step(m.y_max - m.y_min);
  for (double t = std::ceil(m.y_min / ys) * ys; t <= m.y_max + 1e-9; t += ys) {
    const double p = m.py(t);
    ticks += "M" + fmt(left) + " " + fmt(p) + "h-6";
    out << "<text x=\"" << fmt(left - 10) << "\" y=\"" << fmt(p + 4) << "\" text-anchor=\"end\" stroke=\"none\" "
        << "fill=\"black\">" << t << "</text>\n";
  }
  out << "<path d=\"" << ticks << "\"/>\n";
  out << "<text x=\"" << fmt((left + right) / 2) << "\" y=\"" << fmt(m.height - 15)
      << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"black\" font-size=\"13\">x = |Omega| lambda1</text>\n";
  out << "<text x=\"18\" y=\"" << fmt((top + bottom) / 2) << "\" text-anchor=\"middle\" stroke=\"none\" "
      << "fill=\"black\" font-size=\"13\" transform=\"rotate(-90 18 " << fmt((top + bottom) / 2)
      << ")\">y = |Omega| mu1</text>\n";
  out << "</g>\n";

  out << "<g id=\"curves\" clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.2\">\n";
  std::optional<double> ax, ay;
  for (const auto& c : curves) {
    const char* color = curve_color(c.tag);
    switch (c.kind) {
      case CurveKind::hyperbola: {
        out << "<polyline class=\"curve\" data-tag=\"" << escape(c.tag) << "\" stroke=\"" << color
            << "\"" << (c.tag.rfind("conjecture", 0) == 0 ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        for (int i = 0; i < kCurvePoints; ++i) {
          const double x = m.x_min + (m.x_max - m.x_min) * i / (kCurvePoints - 1);
          out << (i ? " " : "") << fmt(m.px(x)) << ',' << fmt(m.py(c.constant / x));
        }
        out << "\"/>\n";
        break;
      }
      case CurveKind::vertical_line:
        ax = c.constant;
        out << "<line class=\"strip\" data-tag=\"" << escape(c.tag) << "\" stroke=\"#555\" x1=\""
            << fmt(m.px(c.constant)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(m.px(c.constant))
            << "\" y2=\"" << fmt(bottom) << "\"/>\n";
        break;
      case CurveKind::horizontal_line:
        ay = c.constant;
        out << "<line class=\"strip\" data-tag=\"" << escape(c.tag) << "\" stroke=\"#555\" x1=\"" << fmt(left)
            << "\" y1=\"" << fmt(m.py(c.constant)) << "\" x2=\"" << fmt(right) << "\" y2=\""
            << fmt(m.py(c.constant)) << "\"/>\n";
        break;
    }
  }
  out << "</g>\n";

  out << "<g id=\"dots\" fill=\"#1a1a1a\" fill-opacity=\"0.45\" clip-path=\"url(#plot)\">\n";
  for (const auto& r : records) {
    if (!std::isfinite(r.x) || !std::isfinite(r.y)) continue;
    out << "<circle class=\"dot\" cx=\"" << fmt(m.px(r.x)) << "\" cy=\"" << fmt(m.py(r.y)) << "\" r=\"1.5\"/>\n";
  }
  out << "</g>\n";

  if (ax && ay) {
    const double mx = m.px(*ax), my = m.py(*ay);
    out << "<g id=\"marker-A\" data-x=\"" << fmt(mx) << "\" data-y=\"" << fmt(my) << "\">"
        << "<rect x=\"" << fmt(mx - 4) << "\" y=\"" << fmt(my - 4)
        << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"#d35400\" stroke-width=\"2\"/>"
        << "<text x=\"" << fmt(mx + 7) << "\" y=\"" << fmt(my - 7)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#d35400\">A</text></g>\n";
  }

  // legend
  const double lx = right - 230, ly = top + 12;
  out << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly) << "\" width=\"220\" height=\""
      << fmt(20.0 + 16.0 * static_cast<double>(curves.size() + 1)) << "\" fill=\"white\" fill-opacity=\"0.85\" "
      << "stroke=\"#999\"/>\n";
  double row = ly + 18;
  for (const auto& c : curves) {
    const char* color = c.kind == CurveKind::hyperbola ? curve_color(c.tag) : "#555";
    out << "<rect x=\"" << fmt(lx + 8) << "\" y=\"" << fmt(row - 6) << "\" width=\"18\" height=\"3\" fill=\""
        << color << "\"/><text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(row) << "\">" << escape(c.name) << " ("
        << escape(c.tag) << ")</text>\n";
    row += 16;
  }
  out << "<rect x=\"" << fmt(lx + 14) << "\" y=\"" << fmt(row - 7) << "\" width=\"4\" height=\"4\" "
      << "fill=\"#1a1a1a\"/><text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(row) << "\">sampled shapes ("
      << records.size() << ")</text>\n";
  out << "</g>\n</svg>\n";
}

void write_svg(const std::vector<DiagramRecord>& records, const std::vector<ReferenceCurve>& curves,
               const std::filesystem::path& path, const SvgOptions& opts) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_svg(records, curves, f, opts);
  if (!f) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

}  // namespace eigdiag
