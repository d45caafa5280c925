#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "flv/basin.hpp"
#include "flv/solver.hpp"

namespace flv::cli {

/// 12 significant digits, shortest form; -0 prints as 0.
[[nodiscard]] std::string format_number(double v);

/// Writes `content` to `path`, creating parent directories. Throws std::runtime_error.
void write_file(const std::filesystem::path& path, const std::string& content);

/// Header `t,y1,...,yn` (or the given names) and one row per stored step.
[[nodiscard]] std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& names);

/// `# key: value` metadata lines, then `i,j,y1,y2,label,equilibrium`.
[[nodiscard]] std::string basin_csv(const basin::BasinMap& map,
                                    const std::vector<std::pair<std::string, std::string>>& metadata);

/// Header `y1,y2` and one row per point.
[[nodiscard]] std::string points_csv(const std::vector<std::array<double, 2>>& points);

/// Minimal SVG canvas in data coordinates.
class SvgPlot {
 public:
  SvgPlot(double x_lo, double x_hi, double y_lo, double y_hi, std::string title);

  void polyline(const std::vector<std::array<double, 2>>& pts, const std::string& color, double width = 1.5,
                bool dashed = false);
  void marker(std::array<double, 2> p, const std::string& color, const std::string& label = {});
  void cell(double x_lo, double x_hi, double y_lo, double y_hi, const std::string& color);
  void legend(const std::string& text, const std::string& color);

  [[nodiscard]] std::string render() const;

 private:
  [[nodiscard]] double sx(double x) const;
  [[nodiscard]] double sy(double y) const;

  double x_lo_, x_hi_, y_lo_, y_hi_;
  std::string title_;
  std::vector<std::string> body_;
  std::vector<std::pair<std::string, std::string>> legend_;
};

}  // namespace flv::cli
