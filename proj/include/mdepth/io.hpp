#pragma once

#include <Eigen/Core>
#include <json.hpp>
#include <string>
#include <vector>

#include "mdepth/depth.hpp"
#include "mdepth/geometry.hpp"
#include "mdepth/risk.hpp"

namespace mdepth {

// Shortest text that round-trips the double exactly (17 significant digits).
std::string format_double(double value);

// CSV with a header row; every cell must parse as a double.
Eigen::MatrixXd read_csv_matrix(const std::string& path);
void write_csv_matrix(const std::string& path, const Eigen::Ref<const Eigen::MatrixXd>& m,
                      const std::vector<std::string>& header = {});

nlohmann::json region_to_json(const Region2D& region);
nlohmann::json depth_to_json(const DepthResult& result);
nlohmann::json report_to_json(const RiskCheckReport& report);

// Deterministic standalone figure: data points plus the region polygon (or an
// annotation when the region is empty).
void write_region_svg(const std::string& path, const Region2D& region,
                      const Eigen::Ref<const Eigen::MatrixXd>& points);

}  // namespace mdepth
