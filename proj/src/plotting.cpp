#include "vortex/plotting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vortex {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

// Maps [x0,x1] x [y0,y1] onto a pixel box with y pointing up.
struct Frame {
  double left, top, width, height, x0, x1, y0, y1;
  double px(double x) const { return left + (x - x0) / (x1 - x0) * width; }
  double py(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }
};

void polyline(std::ostream& os, const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
  if (pts.size() < 2) return;
  os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
  os << "\"/>\n";
}

void axes(std::ostream& os, const Frame& f, const std::vector<double>& xticks, const std::vector<double>& yticks,
          const std::string& xlabel, const std::string& ylabel) {
  os << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top) << "\" width=\"" << num(f.width) << "\" height=\""
     << num(f.height) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double x : xticks)
    os << "<line x1=\"" << num(f.px(x)) << "\" y1=\"" << num(f.top + f.height) << "\" x2=\"" << num(f.px(x))
       << "\" y2=\"" << num(f.top + f.height + 5) << "\" stroke=\"black\"/>\n<text x=\"" << num(f.px(x)) << "\" y=\""
       << num(f.top + f.height + 18) << "\" text-anchor=\"middle\">" << tick(x) << "</text>\n";
  for (double y : yticks)
    os << "<line x1=\"" << num(f.left - 5) << "\" y1=\"" << num(f.py(y)) << "\" x2=\"" << num(f.left) << "\" y2=\""
       << num(f.py(y)) << "\" stroke=\"black\"/>\n<text x=\"" << num(f.left - 8) << "\" y=\"" << num(f.py(y) + 4)
       << "\" text-anchor=\"end\">" << tick(y) << "</text>\n";
  os << "<text x=\"" << num(f.left + f.width / 2) << "\" y=\"" << num(f.top + f.height + 36)
     << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
  os << "<text x=\"" << num(f.left - 44) << "\" y=\"" << num(f.top + f.height / 2) << "\" text-anchor=\"middle\">"
     << escape(ylabel) << "</text>\n";
}

void header(std::ostream& os, int w, int h, const std::string& title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
}

}  // namespace

void write_trajectory_svg(const std::filesystem::path& path, const std::string& title,
                          const std::vector<std::vector<LiftedPoint>>& paths, const std::vector<int>& degrees) {
  if (paths.size() != degrees.size()) throw std::invalid_argument("write_trajectory_svg: one degree per path");
  auto os = open(path);
  header(os, 520, 540, title);
  const Frame f{70, 40, 420, 420, 0, 1, 0, 1};
  axes(os, f, {0, 0.25, 0.5, 0.75, 1}, {0, 0.25, 0.5, 0.75, 1}, "x", "y");

  for (std::size_t v = 0; v < paths.size(); ++v) {
    std::vector<std::pair<double, double>> piece;
    Vec2 prev = Vec2::Constant(-1);
    for (const auto& p : paths[v]) {
      const Vec2 x = torus_image(p);
      if (!piece.empty() && (x - prev).cwiseAbs().maxCoeff() > 0.5) {
        polyline(os, piece, color(v));
        piece.clear();
      }
      piece.emplace_back(f.px(x(0)), f.py(x(1)));
      prev = x;
    }
    polyline(os, piece, color(v));
  }

  for (std::size_t v = 0; v < paths.size(); ++v) {
    if (paths[v].empty()) continue;
    const Vec2 x = torus_image(paths[v].front());
    const double cx = f.px(x(0)), cy = f.py(x(1)), r = 7;
    auto seg = [&](double dx1, double dy1, double dx2, double dy2) {
      os << "<line x1=\"" << num(cx + dx1) << "\" y1=\"" << num(cy + dy1) << "\" x2=\"" << num(cx + dx2)
         << "\" y2=\"" << num(cy + dy2) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    };
    if (degrees[v] > 0) {
      seg(-r, 0, r, 0);
      seg(0, -r, 0, r);
    } else {
      seg(-r, -r, r, r);
      seg(-r, r, r, -r);
    }
  }
  os << "</svg>\n";
}

void write_series_svg(const std::filesystem::path& path, const std::string& title, const std::vector<double>& t,
                      const std::vector<Series>& series) {
  for (const auto& s : series)
    if (s.values.size() != t.size()) throw std::invalid_argument("write_series_svg: series length mismatch");
  auto os = open(path);
  header(os, 640, 420, title);

  double t0 = t.empty() ? 0 : t.front(), t1 = t.empty() ? 1 : t.back();
  if (!(t1 > t0)) t1 = t0 + 1;
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (const auto& s : series)
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!(hi >= lo)) lo = 0, hi = 1;
  const double pad = std::max(0.05 * (hi - lo), 1e-3);
  lo -= pad;
  hi += pad;
  const Frame f{80, 40, 430, 320, t0, t1, lo, hi};

  std::vector<double> xt, yt;
  for (int i = 0; i <= 4; ++i) {
    xt.push_back(t0 + (t1 - t0) * i / 4);
    yt.push_back(lo + (hi - lo) * i / 4);
  }
  axes(os, f, xt, yt, "t", "");

  for (std::size_t k = 0; k < series.size(); ++k) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < t.size(); ++i) pts.emplace_back(f.px(t[i]), f.py(series[k].values[i]));
    polyline(os, pts, color(k));
    const double ly = 50 + 18.0 * k;
    os << "<line x1=\"525\" y1=\"" << num(ly) << "\" x2=\"545\" y2=\"" << num(ly) << "\" stroke=\"" << color(k)
       << "\" stroke-width=\"2\"/>\n<text x=\"550\" y=\"" << num(ly + 4) << "\">" << escape(series[k].label)
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace vortex
