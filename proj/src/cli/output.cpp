#include "flv/cli/output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace flv::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 640.0;
constexpr double kMargin = 48.0;

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  return fmt::format("{:.12g}", v);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& names) {
  std::string out = "t";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out += format_number(traj.time(k));
    for (double v : traj.state(k)) {
      out += ",";
      out += format_number(v);
    }
    out += "\n";
  }
  return out;
}

std::string basin_csv(const basin::BasinMap& map,
                      const std::vector<std::pair<std::string, std::string>>& metadata) {
  std::string out;
  for (const auto& [k, v] : metadata) out += "# " + k + ": " + v + "\n";
  out += "i,j,y1,y2,label,equilibrium\n";
  for (std::size_t i = 0; i < map.grid.n1; ++i) {
    for (std::size_t j = 0; j < map.grid.n2; ++j) {
      const auto p = map.grid.node(i, j);
      const auto& o = map.at(i, j);
      out += fmt::format("{},{},{},{},{},{}\n", i, j, format_number(p[0]), format_number(p[1]),
                         basin::to_string(o.kind), o.equilibrium);
    }
  }
  return out;
}

std::string points_csv(const std::vector<std::array<double, 2>>& points) {
  std::string out = "y1,y2\n";
  for (const auto& p : points) out += format_number(p[0]) + "," + format_number(p[1]) + "\n";
  return out;
}

SvgPlot::SvgPlot(double x_lo, double x_hi, double y_lo, double y_hi, std::string title)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), title_(std::move(title)) {
  if (!(x_lo_ < x_hi_)) {
    x_lo_ -= 1.0;
    x_hi_ += 1.0;
  }
  if (!(y_lo_ < y_hi_)) {
    y_lo_ -= 1.0;
    y_hi_ += 1.0;
  }
}

double SvgPlot::sx(double x) const { return kMargin + (x - x_lo_) / (x_hi_ - x_lo_) * (kWidth - 2 * kMargin); }
double SvgPlot::sy(double y) const {
  return kHeight - kMargin - (y - y_lo_) / (y_hi_ - y_lo_) * (kHeight - 2 * kMargin);
}

void SvgPlot::polyline(const std::vector<std::array<double, 2>>& pts, const std::string& color, double width,
                       bool dashed) {
  if (pts.empty()) return;
  std::string d;
  for (const auto& p : pts) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
    d += fmt::format("{:.2f},{:.2f} ", sx(p[0]), sy(p[1]));
  }
  body_.push_back(fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="{}"{} points="{}"/>)", color,
                              width, dashed ? R"( stroke-dasharray="6,4")" : "", d));
}

void SvgPlot::marker(std::array<double, 2> p, const std::string& color, const std::string& label) {
  body_.push_back(fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="4" fill="{}"/>)", sx(p[0]), sy(p[1]), color));
  if (!label.empty()) {
    body_.push_back(fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="11">{}</text>)", sx(p[0]) + 6,
                                sy(p[1]) - 6, escape_xml(label)));
  }
}

void SvgPlot::cell(double x_lo, double x_hi, double y_lo, double y_hi, const std::string& color) {
  body_.push_back(fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="{}"/>)", sx(x_lo),
                              sy(y_hi), sx(x_hi) - sx(x_lo), sy(y_lo) - sy(y_hi), color));
}

void SvgPlot::legend(const std::string& text, const std::string& color) { legend_.emplace_back(text, color); }

std::string SvgPlot::render() const {
  std::string out = fmt::format(
      R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">)"
      "\n",
      kWidth, kHeight);
  out += R"(<rect width="100%" height="100%" fill="white"/>)"
         "\n";
  out += fmt::format(R"(<clipPath id="plot"><rect x="{0}" y="{0}" width="{1}" height="{2}"/></clipPath>)"
                     "\n",
                     kMargin, kWidth - 2 * kMargin, kHeight - 2 * kMargin);
  out += R"svg(<g clip-path="url(#plot)">)svg"
         "\n";
  for (const auto& b : body_) out += b + "\n";
  // Axes through the origin when it is in view.
  if (x_lo_ <= 0 && 0 <= x_hi_) {
    out += fmt::format(R"(<line x1="{0:.2f}" y1="{1}" x2="{0:.2f}" y2="{2}" stroke="#888" stroke-width="0.8"/>)"
                       "\n",
                       sx(0), kMargin, kHeight - kMargin);
  }
  if (y_lo_ <= 0 && 0 <= y_hi_) {
    out += fmt::format(R"(<line x1="{1}" y1="{0:.2f}" x2="{2}" y2="{0:.2f}" stroke="#888" stroke-width="0.8"/>)"
                       "\n",
                       sy(0), kMargin, kWidth - kMargin);
  }
  out += "</g>\n";
  out += fmt::format(R"(<rect x="{0}" y="{0}" width="{1}" height="{2}" fill="none" stroke="black"/>)"
                     "\n",
                     kMargin, kWidth - 2 * kMargin, kHeight - 2 * kMargin);
  auto tick = [](double v) { return format_number(std::round(v * 1000.0) / 1000.0); };
  out += fmt::format(R"(<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>)"
                     "\n",
                     kMargin, kHeight - kMargin + 16, tick(x_lo_));
  out += fmt::format(R"(<text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>)"
                     "\n",
                     kWidth - kMargin, kHeight - kMargin + 16, tick(x_hi_));
  out += fmt::format(R"(<text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>)"
                     "\n",
                     kMargin - 4, kHeight - kMargin, tick(y_lo_));
  out += fmt::format(R"(<text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>)"
                     "\n",
                     kMargin - 4, kMargin + 8, tick(y_hi_));
  out += fmt::format(R"(<text x="{}" y="{}" font-size="12" text-anchor="middle">y1</text>)"
                     "\n",
                     kWidth / 2, kHeight - 12);
  out += fmt::format(R"(<text x="14" y="{}" font-size="12" text-anchor="middle">y2</text>)"
                     "\n",
                     kHeight / 2);
  out += fmt::format(R"(<text x="{}" y="28" font-size="14" text-anchor="middle">{}</text>)"
                     "\n",
                     kWidth / 2, escape_xml(title_));
  double ly = kMargin + 16;
  for (const auto& [text, color] : legend_) {
    out += fmt::format(R"(<rect x="{}" y="{}" width="10" height="10" fill="{}"/>)"
                       "\n",
                       kWidth - kMargin - 150, ly - 9, color);
    out += fmt::format(R"(<text x="{}" y="{}" font-size="11">{}</text>)"
                       "\n",
                       kWidth - kMargin - 135, ly, escape_xml(text));
    ly += 15;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace flv::cli
