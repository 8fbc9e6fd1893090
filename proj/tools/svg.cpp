#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace czreach::cli {

namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 56.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// blue to orange
std::string ramp(std::size_t i, std::size_t count) {
  double t = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
  int r = static_cast<int>(std::lround(31 + t * (230 - 31)));
  int g = static_cast<int>(std::lround(119 + t * (126 - 119)));
  int b = static_cast<int>(std::lround(180 + t * (34 - 180)));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<PlotLayer>& layers, const std::string& x_label, const std::string& y_label) {
  double lo[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  double hi[2] = {-lo[0], -lo[1]};
  auto grow = [&](double x, double y) {
    lo[0] = std::min(lo[0], x);
    hi[0] = std::max(hi[0], x);
    lo[1] = std::min(lo[1], y);
    hi[1] = std::max(hi[1], y);
  };
  for (const PlotLayer& l : layers) {
    for (const Vec& p : l.points) grow(p(0), p(1));
    for (const Hyperbox& b : l.boxes) {
      grow(b.lower()(0), b.lower()(1));
      grow(b.upper()(0), b.upper()(1));
    }
  }
  if (!(lo[0] <= hi[0])) lo[0] = lo[1] = -1.0, hi[0] = hi[1] = 1.0;
  for (int k = 0; k < 2; ++k) {
    double pad = 0.05 * std::max(hi[k] - lo[k], 1e-9);
    lo[k] -= pad;
    hi[k] += pad;
  }
  const double span = kSize - 2 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - lo[0]) / (hi[0] - lo[0]) * span; };
  auto sy = [&](double y) { return kSize - kMargin - (y - lo[1]) / (hi[1] - lo[1]) * span; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" + num(kSize) +
       "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" + num(span) + "\" height=\"" + num(span) +
       "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const PlotLayer& l = layers[i];
    const std::string col = ramp(i, layers.size());
    s += "<g>\n<title>" + escape(l.label) + "</title>\n";
    for (const Hyperbox& b : l.boxes) {
      double x0 = sx(b.lower()(0)), x1 = sx(b.upper()(0)), y0 = sy(b.upper()(1)), y1 = sy(b.lower()(1));
      s += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(x1 - x0) + "\" height=\"" +
           num(y1 - y0) + "\" fill=\"none\" stroke=\"" + col + "\" stroke-width=\"0.8\"/>\n";
    }
    for (const Vec& p : l.points)
      s += "<circle cx=\"" + num(sx(p(0))) + "\" cy=\"" + num(sy(p(1))) + "\" r=\"1.4\" fill=\"" + col + "\"/>\n";
    s += "</g>\n";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "<text x=\"%s\" y=\"%s\" font-size=\"12\" text-anchor=\"middle\">%s</text>\n",
                num(kSize / 2).c_str(), num(kSize - 16).c_str(), escape(x_label).c_str());
  s += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%s\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 %s)\">%s</text>\n",
                num(kSize / 2).c_str(), num(kSize / 2).c_str(), escape(y_label).c_str());
  s += buf;
  for (int k = 0; k < 2; ++k) {
    std::snprintf(buf, sizeof buf, "%.4g", lo[k]);
    std::string a = buf;
    std::snprintf(buf, sizeof buf, "%.4g", hi[k]);
    std::string b = buf;
    if (k == 0) {
      s += "<text x=\"" + num(kMargin) + "\" y=\"" + num(kSize - kMargin + 16) + "\" font-size=\"10\">" + a + "</text>\n";
      s += "<text x=\"" + num(kSize - kMargin) + "\" y=\"" + num(kSize - kMargin + 16) +
           "\" font-size=\"10\" text-anchor=\"end\">" + b + "</text>\n";
    } else {
      s += "<text x=\"" + num(kMargin - 4) + "\" y=\"" + num(kSize - kMargin) +
           "\" font-size=\"10\" text-anchor=\"end\">" + a + "</text>\n";
      s += "<text x=\"" + num(kMargin - 4) + "\" y=\"" + num(kMargin + 8) + "\" font-size=\"10\" text-anchor=\"end\">" +
           b + "</text>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

}  // namespace czreach::cli
