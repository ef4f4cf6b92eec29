#include "mdepth/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "mdepth/errors.hpp"

namespace mdepth {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                       std::chars_format::general, 17);
  if (ec != std::errc{}) throw IoError("number formatting failed");
  return std::string(buf, ptr);
}

Eigen::MatrixXd read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path + "' is empty (header row expected)");

  std::vector<std::vector<double>> rows;
  std::size_t cols = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view cell(line.data() + start,
                                  (comma == std::string::npos ? line.size() : comma) - start);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw IoError("'" + path + "' line " + std::to_string(line_no) +
                      ": cell is not a number");
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cols == 0) cols = row.size();
    if (row.size() != cols) {
      throw IoError("'" + path + "' line " + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("'" + path + "' has a header but no data rows");

  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), j) = rows[i][j];
  }
  return m;
}

void write_csv_matrix(const std::string& path, const Eigen::Ref<const Eigen::MatrixXd>& m,
                      const std::vector<std::string>& header) {
  if (!header.empty() && header.size() != static_cast<std::size_t>(m.cols())) {
    throw ShapeMismatch("header size does not match column count");
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j > 0) out << ',';
    if (header.empty()) {
      out << "c" << j;
    } else {
      out << header[static_cast<std::size_t>(j)];
    }
  }
  out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

nlohmann::json region_to_json(const Region2D& region) {
  nlohmann::json j;
  j["empty"] = region.empty();
  j["halfspaces"] = nlohmann::json::array();
  for (const auto& h : region.halfspaces) {
    j["halfspaces"].push_back({{"u", {h.u.u[0], h.u.u[1]}}, {"theta", h.theta}});
  }
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : region.vertices) j["vertices"].push_back({v.x(), v.y()});
  if (region.clip_box) {
    const auto& box = *region.clip_box;
    j["clip_box"] = {{"lo", {box[0].x(), box[0].y()}}, {"hi", {box[1].x(), box[1].y()}}};
    j["edge_clipped"] = region.edge_clipped;
  }
  return j;
}

nlohmann::json depth_to_json(const DepthResult& result) {
  nlohmann::json j;
  j["value"] = result.value;
  j["argmin"] = std::vector<double>(result.argmin.u.data(),
                                    result.argmin.u.data() + result.argmin.u.size());
  j["evals"] = result.evals;
  j["converged"] = result.converged;
  if (result.certificate) {
    const auto& [lower, upper] = *result.certificate;
    j["certificate"] = {
        {"lower", std::vector<double>(lower.data(), lower.data() + lower.size())},
        {"upper", std::vector<double>(upper.data(), upper.data() + upper.size())}};
  }
  return j;
}

nlohmann::json report_to_json(const RiskCheckReport& report) {
  return nlohmann::json{
      {"alpha", report.alpha},
      {"u", std::vector<double>(report.u.data(), report.u.data() + report.u.size())},
      {"lhs", report.lhs},
      {"rhs", report.rhs},
      {"holds", report.holds},
      {"tolerance", report.tolerance}};
}

namespace {

std::string svg_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

void write_region_svg(const std::string& path, const Region2D& region,
                      const Eigen::Ref<const Eigen::MatrixXd>& points) {
  if (points.size() > 0 && points.cols() != 2) {
    throw ShapeMismatch("svg scatter needs two columns");
  }
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool seeded = false;
  auto absorb = [&](double x, double y) {
    if (!seeded) {
      xmin = xmax = x;
      ymin = ymax = y;
      seeded = true;
      return;
    }
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (Eigen::Index i = 0; i < points.rows(); ++i) absorb(points(i, 0), points(i, 1));
  for (const auto& v : region.vertices) absorb(v.x(), v.y());

  const double w = std::max(xmax - xmin, 1e-9);
  const double h = std::max(ymax - ymin, 1e-9);
  const double margin = 0.05 * std::max(w, h);
  const double span = std::max(w, h) + 2.0 * margin;
  const double size = 640.0;
  const double scale = size / span;
  auto sx = [&](double x) { return (x - xmin + margin) * scale; };
  auto sy = [&](double y) { return size - (y - ymin + margin) * scale; };

  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n";
  out << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    out << "<circle cx=\"" << svg_num(sx(points(i, 0))) << "\" cy=\""
        << svg_num(sy(points(i, 1))) << "\" r=\"2\" fill=\"#6699cc\" fill-opacity=\"0.5\"/>\n";
  }
  if (region.empty()) {
    out << "<text x=\"20\" y=\"36\" font-family=\"monospace\" font-size=\"18\" "
           "fill=\"#aa3333\">empty region</text>\n";
  } else {
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < region.vertices.size(); ++i) {
      if (i > 0) out << ' ';
      out << svg_num(sx(region.vertices[i].x())) << ',' << svg_num(sy(region.vertices[i].y()));
    }
    out << "\" fill=\"#cc4444\" fill-opacity=\"0.25\" stroke=\"#cc4444\" "
           "stroke-width=\"1.5\"/>\n";
  }
  out << "</svg>\n";
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace mdepth
