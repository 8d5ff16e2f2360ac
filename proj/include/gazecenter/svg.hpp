#ifndef GAZECENTER_SVG_HPP
#define GAZECENTER_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gazecenter/errors.hpp"

namespace gazecenter {
namespace svg {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

/// Minimal headless chart canvas: fixed margins, linear axes, a handful of
/// primitives. Output is deterministic for identical inputs.
class Chart {
 public:
  Chart(int width, int height, double x_lo, double x_hi, double y_lo, double y_hi)
      : width_(width), height_(height), x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi) {
    body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
          << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
          << "\">\n"
          << "<rect width=\"" << width << "\" height=\"" << height
          << "\" fill=\"white\"/>\n";
  }

  double px(double x) const {
    return margin_ + (x - x_lo_) / (x_hi_ - x_lo_) * (width_ - 2 * margin_);
  }
  double py(double y) const {
    return height_ - margin_ - (y - y_lo_) / (y_hi_ - y_lo_) * (height_ - 2 * margin_);
  }

  void title(const std::string& text) {
    body_ << "<text x=\"" << width_ / 2 << "\" y=\"18\" text-anchor=\"middle\" "
          << "font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(text)
          << "</text>\n";
  }

  void axes(const std::string& x_label, const std::string& y_label) {
    body_ << "<line x1=\"" << fmt(px(x_lo_)) << "\" y1=\"" << fmt(py(y_lo_))
          << "\" x2=\"" << fmt(px(x_hi_)) << "\" y2=\"" << fmt(py(y_lo_))
          << "\" stroke=\"black\"/>\n"
          << "<line x1=\"" << fmt(px(x_lo_)) << "\" y1=\"" << fmt(py(y_lo_))
          << "\" x2=\"" << fmt(px(x_lo_)) << "\" y2=\"" << fmt(py(y_hi_))
          << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double x = x_lo_ + (x_hi_ - x_lo_) * i / 4.0;
      const double y = y_lo_ + (y_hi_ - y_lo_) * i / 4.0;
      body_ << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(py(y_lo_) + 16)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << fmt(x) << "</text>\n"
            << "<text x=\"" << fmt(px(x_lo_) - 6) << "\" y=\"" << fmt(py(y) + 3)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << fmt(y) << "</text>\n";
    }
    body_ << "<text x=\"" << width_ / 2 << "\" y=\"" << height_ - 6
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
          << xml_escape(x_label) << "</text>\n"
          << "<text x=\"14\" y=\"" << height_ / 2
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
          << "transform=\"rotate(-90 14 " << height_ / 2 << ")\">"
          << xml_escape(y_label) << "</text>\n";
  }

  void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& color) {
    body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
      body_ << fmt(px(xs[i])) << ',' << fmt(py(ys[i])) << ' ';
    body_ << "\"/>\n";
  }

  void error_bars(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::vector<double>& err, const std::string& color) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double x = px(xs[i]);
      body_ << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(py(ys[i] - err[i]))
            << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(py(ys[i] + err[i]))
            << "\" stroke=\"" << color << "\"/>\n";
    }
  }

  void points(const std::vector<double>& xs, const std::vector<double>& ys,
              const std::string& color, double radius = 2.5) {
    for (std::size_t i = 0; i < xs.size(); ++i)
      body_ << "<circle cx=\"" << fmt(px(xs[i])) << "\" cy=\"" << fmt(py(ys[i]))
            << "\" r=\"" << fmt(radius) << "\" fill=\"" << color << "\"/>\n";
  }

  void diagonal(const std::string& color = "gray") {
    const double lo = std::max(x_lo_, y_lo_);
    const double hi = std::min(x_hi_, y_hi_);
    body_ << "<line x1=\"" << fmt(px(lo)) << "\" y1=\"" << fmt(py(lo)) << "\" x2=\""
          << fmt(px(hi)) << "\" y2=\"" << fmt(py(hi)) << "\" stroke=\"" << color
          << "\" stroke-dasharray=\"4 3\"/>\n";
  }

  void bars(const std::vector<double>& centers, const std::vector<double>& heights,
            double bar_width, const std::string& color) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double x0 = px(centers[i] - bar_width / 2);
      const double x1 = px(centers[i] + bar_width / 2);
      const double y0 = py(0.0);
      const double y1 = py(heights[i]);
      body_ << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(std::min(y0, y1))
            << "\" width=\"" << fmt(x1 - x0) << "\" height=\"" << fmt(std::abs(y0 - y1))
            << "\" fill=\"" << color << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    }
  }

  void save(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IO_ERROR, "cannot open for writing: " + path);
    out << body_.str() << "</svg>\n";
  }

 private:
  int width_, height_;
  double x_lo_, x_hi_, y_lo_, y_hi_;
  static constexpr int margin_ = 48;
  std::ostringstream body_;
};

/// Mean-NSS-vs-beta curve with s.e.m. bars.
inline void plot_sweep_curve(const std::string& path, const std::vector<double>& betas,
                             const std::vector<double>& mean_nss,
                             const std::vector<double>& sem, double beta_opt) {
  double lo = mean_nss[0], hi = mean_nss[0];
  for (std::size_t i = 0; i < mean_nss.size(); ++i) {
    lo = std::min(lo, mean_nss[i] - sem[i]);
    hi = std::max(hi, mean_nss[i] + sem[i]);
  }
  const double pad = std::max(1e-6, (hi - lo) * 0.1);
  Chart chart(480, 360, betas.front(), betas.back(), lo - pad, hi + pad);
  chart.title("mean NSS vs beta (beta_opt=" + fmt(beta_opt) + ")");
  chart.axes("beta", "mean NSS");
  chart.error_bars(betas, mean_nss, sem, "steelblue");
  chart.polyline(betas, mean_nss, "steelblue");
  chart.points(betas, mean_nss, "steelblue");
  chart.save(path);
}

/// Ring index vs density/saliency profile lines (one series per label).
inline void plot_ring_profiles(const std::string& path,
                               const std::vector<std::string>& labels,
                               const std::vector<std::vector<double>>& series) {
  double hi = 0.0;
  std::size_t k = 0;
  for (const auto& s : series) {
    k = std::max(k, s.size());
    for (double v : s) hi = std::max(hi, v);
  }
  Chart chart(480, 360, 1.0, static_cast<double>(k), 0.0, hi * 1.1 + 1e-12);
  chart.title("ring profiles");
  chart.axes("ring (1=innermost)", "density");
  static const char* colors[] = {"steelblue", "firebrick", "seagreen", "darkorange"};
  for (std::size_t s = 0; s < series.size(); ++s) {
    std::vector<double> xs(series[s].size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i + 1);
    chart.polyline(xs, series[s], colors[s % 4]);
  }
  (void)labels;
  chart.save(path);
}

/// Histogram of object center-bias indices over [0,1].
inline void plot_index_histogram(const std::string& path,
                                 const std::vector<std::size_t>& counts) {
  double hi = 1.0;
  for (auto c : counts) hi = std::max(hi, static_cast<double>(c));
  Chart chart(480, 360, 0.0, 1.0, 0.0, hi * 1.1);
  chart.title("object center-bias index histogram");
  chart.axes("obj_cnt_idx", "count");
  const double w = 1.0 / static_cast<double>(counts.size());
  std::vector<double> centers, heights;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    centers.push_back((i + 0.5) * w);
    heights.push_back(static_cast<double>(counts[i]));
  }
  chart.bars(centers, heights, w, "steelblue");
  chart.save(path);
}

/// Per-image scatter of model A vs model B NSS with the identity diagonal.
inline void plot_scatter(const std::string& path, const std::vector<double>& a,
                         const std::vector<double>& b, const std::string& label_a,
                         const std::string& label_b, double win_rate) {
  double lo = 0.0, hi = 1.0;
  if (!a.empty()) {
    lo = std::min(*std::min_element(a.begin(), a.end()),
                  *std::min_element(b.begin(), b.end()));
    hi = std::max(*std::max_element(a.begin(), a.end()),
                  *std::max_element(b.begin(), b.end()));
  }
  const double pad = std::max(1e-6, (hi - lo) * 0.1);
  Chart chart(420, 420, lo - pad, hi + pad, lo - pad, hi + pad);
  chart.title(label_a + " vs " + label_b + " (win_rate=" + fmt(win_rate) + ")");
  chart.axes(label_b, label_a);
  chart.diagonal();
  chart.points(b, a, "firebrick");
  chart.save(path);
}

}  // namespace svg
}  // namespace gazecenter

#endif  // GAZECENTER_SVG_HPP
