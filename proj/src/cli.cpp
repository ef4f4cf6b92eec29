#include "mdepth/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "mdepth/depth.hpp"
#include "mdepth/errors.hpp"
#include "mdepth/io.hpp"
#include "mdepth/regression.hpp"
#include "mdepth/risk.hpp"
#include "mdepth/simulate.hpp"

namespace mdepth {

namespace {

std::vector<double> split_doubles(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + end, v);
    if (ec != std::errc{} || ptr != text.data() + end) {
      throw InvalidInput("malformed number list '" + text + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw InvalidInput("empty number list");
  return out;
}

Eigen::VectorXd parse_vector(const std::string& text) {
  const std::vector<double> v = split_doubles(text);
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<Eigen::Index> parse_columns(const std::string& text) {
  std::vector<Eigen::Index> out;
  for (double v : split_doubles(text)) {
    const auto c = static_cast<Eigen::Index>(v);
    if (static_cast<double>(c) != v || c < 0) throw InvalidInput("column indices must be >= 0");
    out.push_back(c);
  }
  return out;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& cols) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= m.cols()) throw InvalidInput("column index out of range");
    out.col(static_cast<Eigen::Index>(j)) = m.col(cols[j]);
  }
  return out;
}

void emit(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write to '" + out_path + "' failed");
}

struct MqArgs {
  std::string input;
  int col = 0;
  std::string loss = "quadratic";
  double alpha = 0.5;
};

struct DepthArgs {
  std::string input;
  std::vector<std::string> points;
  std::string loss = "quadratic";
  int directions = 500;
  bool optimize = false;
};

struct RegionArgs {
  std::string input;
  double alpha = 0.5;
  std::string loss = "quadratic";
  int directions = 500;
  std::string out;
  std::string svg;
};

struct MedianArgs {
  std::string input;
  std::string loss = "quadratic";
};

struct RiskArgs {
  std::string input;
  double alpha = 0.25;
  std::string u;
  int envelope = 0;
  std::string out;
};

struct RegressArgs {
  std::string input;
  std::string xcols;
  std::string ycols;
  double alpha = 0.5;
  std::vector<std::string> at;
  std::string engine = "linear";
  int directions = 200;
  std::string out;
};

struct SimulateArgs {
  std::string model;
  int n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct MeanTestArgs {
  std::string input;
  std::string mu0;
};

void run_mq(const MqArgs& args) {
  const Eigen::MatrixXd m = read_csv_matrix(args.input);
  if (args.col < 0 || args.col >= m.cols()) throw InvalidInput("column index out of range");
  const LossSpec loss = parse_loss(args.loss);
  const Order order(args.alpha);
  const double value = m_quantile(Series(m.col(args.col)), loss, order);
  emit(nlohmann::json{{"col", args.col},
                      {"loss", to_string(loss)},
                      {"alpha", order.alpha},
                      {"value", value}},
       "");
}

void run_depth(const DepthArgs& args) {
  const Sample sample(read_csv_matrix(args.input));
  const LossSpec loss = parse_loss(args.loss);
  if (args.points.empty()) throw InvalidInput("depth needs at least one --point");
  if (args.optimize && loss.kind != LossSpec::Kind::quadratic) {
    throw InvalidInput("--optimize is only available for the quadratic loss");
  }
  auto grid = args.optimize ? std::vector<Direction>{}
                            : sphere_grid(sample.dim(), args.directions);
  nlohmann::json out = nlohmann::json::array();
  for (const std::string& text : args.points) {
    const Eigen::VectorXd z = parse_vector(text);
    if (z.size() != sample.dim()) throw ShapeMismatch("probe point dimension mismatch");
    const DepthResult r =
        args.optimize ? expectile_depth(sample, z) : mdepth_grid(sample, loss, z, grid);
    nlohmann::json item = depth_to_json(r);
    item["point"] = std::vector<double>(z.data(), z.data() + z.size());
    out.push_back(std::move(item));
  }
  emit(out, "");
}

void run_region(const RegionArgs& args) {
  const Sample sample(read_csv_matrix(args.input));
  const LossSpec loss = parse_loss(args.loss);
  const Order order(args.alpha);
  const Region2D region = depth_region_2d(sample, loss, order, args.directions);
  nlohmann::json j = region_to_json(region);
  j["alpha"] = order.alpha;
  j["loss"] = to_string(loss);
  j["directions"] = args.directions;
  emit(j, args.out);
  if (!args.svg.empty()) write_region_svg(args.svg, region, sample.data());
}

void run_median(const MedianArgs& args) {
  const Sample sample(read_csv_matrix(args.input));
  const LossSpec loss = parse_loss(args.loss);
  const Eigen::VectorXd med = m_median(sample, loss);
  emit(nlohmann::json{{"loss", to_string(loss)},
                      {"median", std::vector<double>(med.data(), med.data() + med.size())}},
       "");
}

void run_risk(const RiskArgs& args) {
  const Sample sample(read_csv_matrix(args.input));
  const Order order(args.alpha);
  if (!args.u.empty() && args.envelope > 0) {
    throw InvalidInput("choose either --u or --envelope, not both");
  }
  if (!args.u.empty()) {
    const Direction u = Direction::normalized(parse_vector(args.u));
    const Hyperplane h = risk_halfspace(sample, order, u);
    emit(nlohmann::json{{"alpha", order.alpha},
                        {"u", std::vector<double>(h.u.u.data(), h.u.u.data() + h.u.u.size())},
                        {"theta", h.theta}},
         args.out);
    return;
  }
  if (args.envelope > 0) {
    const Region2D region = upper_envelope_2d(sample, order, args.envelope);
    nlohmann::json j = region_to_json(region);
    j["alpha"] = order.alpha;
    j["directions"] = args.envelope;
    emit(j, args.out);
    return;
  }
  throw InvalidInput("risk needs --u or --envelope");
}

void run_regress(const RegressArgs& args) {
  const Eigen::MatrixXd m = read_csv_matrix(args.input);
  const RegressionData data(select_columns(m, parse_columns(args.xcols)),
                            select_columns(m, parse_columns(args.ycols)));
  const Order order(args.alpha);
  const EngineSpec engine = parse_engine(args.engine);
  if (args.at.empty()) throw InvalidInput("regress needs at least one --at point");
  nlohmann::json out = nlohmann::json::array();
  for (const std::string& text : args.at) {
    const Eigen::VectorXd x = parse_vector(text);
    if (x.size() != data.p()) throw ShapeMismatch("--at dimension does not match covariates");
    const Region2D region = conditional_region_2d(data, order, x, args.directions, engine);
    nlohmann::json item = region_to_json(region);
    item["x"] = std::vector<double>(x.data(), x.data() + x.size());
    item["alpha"] = order.alpha;
    item["engine"] = to_string(engine);
    out.push_back(std::move(item));
  }
  emit(out, args.out);
}

void run_simulate(const SimulateArgs& args) {
  if (args.out.empty()) throw InvalidInput("simulate needs --out");
  if (args.model == "cigar") {
    const Sample s = simulate_cigar(args.n, args.seed);
    write_csv_matrix(args.out, s.data(), {"x", "y"});
    return;
  }
  if (args.model == "hetero") {
    const RegressionData d = simulate_hetero(args.n, args.seed);
    Eigen::MatrixXd m(d.n(), 3);
    m.col(0) = d.x.col(0);
    m.col(1) = d.y.col(0);
    m.col(2) = d.y.col(1);
    write_csv_matrix(args.out, m, {"x", "y1", "y2"});
    return;
  }
  throw InvalidInput("unknown model '" + args.model + "' (expected cigar|hetero)");
}

void run_meantest(const MeanTestArgs& args) {
  const Sample sample(read_csv_matrix(args.input));
  const Eigen::VectorXd mu0 = parse_vector(args.mu0);
  if (mu0.size() != sample.dim()) throw ShapeMismatch("--mu0 dimension mismatch");
  const DepthResult r = expectile_depth(sample, mu0);
  emit(nlohmann::json{{"mu0", std::vector<double>(mu0.data(), mu0.data() + mu0.size())},
                      {"depth", r.value},
                      {"statistic", 0.5 - r.value},
                      {"converged", r.converged}},
       "");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"halfspace M-depth, expectile depth regions, risk envelopes and "
               "multiple-output expectile regression"};
  app.require_subcommand(1);

  MqArgs mq;
  auto* mq_cmd = app.add_subcommand("mq", "directional M-quantile of one CSV column");
  mq_cmd->add_option("--input", mq.input, "CSV file (header row)")->required();
  mq_cmd->add_option("--col", mq.col, "column index, default 0");
  mq_cmd->add_option("--loss", mq.loss, "absolute|quadratic|power:R|huber:C");
  mq_cmd->add_option("--alpha", mq.alpha, "order in (0,1)")->required();
  mq_cmd->callback([&mq]() { run_mq(mq); });

  DepthArgs depth;
  auto* depth_cmd = app.add_subcommand("depth", "halfspace M-depth of probe points");
  depth_cmd->add_option("--input", depth.input, "CSV file (header row)")->required();
  depth_cmd->add_option("--point", depth.points, "probe point 'x1,x2,...' (repeatable)");
  depth_cmd->add_option("--loss", depth.loss, "absolute|quadratic|power:R|huber:C");
  depth_cmd->add_option("--directions", depth.directions, "grid size, default 500");
  depth_cmd->add_flag("--optimize", depth.optimize,
                      "great-circle descent instead of a grid (quadratic loss)");
  depth_cmd->callback([&depth]() { run_depth(depth); });

  RegionArgs region;
  auto* region_cmd = app.add_subcommand("region", "planar depth region polygon");
  region_cmd->add_option("--input", region.input, "CSV file (header row)")->required();
  region_cmd->add_option("--alpha", region.alpha, "order in (0,1)")->required();
  region_cmd->add_option("--loss", region.loss, "absolute|quadratic|power:R|huber:C");
  region_cmd->add_option("--directions", region.directions, "grid size, default 500");
  region_cmd->add_option("--out", region.out, "output JSON path, default stdout");
  region_cmd->add_option("--svg", region.svg, "also write an SVG figure");
  region_cmd->callback([&region]() { run_region(region); });

  MedianArgs median;
  auto* median_cmd = app.add_subcommand("median", "deepest point of a sample");
  median_cmd->add_option("--input", median.input, "CSV file (header row)")->required();
  median_cmd->add_option("--loss", median.loss, "absolute|quadratic|power:R|huber:C");
  median_cmd->callback([&median]() { run_median(median); });

  RiskArgs risk;
  auto* risk_cmd = app.add_subcommand("risk", "expectile risk halfspace or envelope");
  risk_cmd->add_option("--input", risk.input, "CSV file (header row)")->required();
  risk_cmd->add_option("--alpha", risk.alpha, "order in (0,1)")->required();
  risk_cmd->add_option("--u", risk.u, "direction 'u1,u2,...' (normalized)");
  risk_cmd->add_option("--envelope", risk.envelope, "positive-quadrant envelope directions");
  risk_cmd->add_option("--out", risk.out, "output JSON path, default stdout");
  risk_cmd->callback([&risk]() { run_risk(risk); });

  RegressArgs regress;
  auto* regress_cmd = app.add_subcommand("regress", "conditional expectile regions");
  regress_cmd->add_option("--input", regress.input, "CSV with covariates and responses")
      ->required();
  regress_cmd->add_option("--xcols", regress.xcols, "covariate column indices '0'")->required();
  regress_cmd->add_option("--ycols", regress.ycols, "response column indices '1,2'")->required();
  regress_cmd->add_option("--alpha", regress.alpha, "order in (0,1)")->required();
  regress_cmd->add_option("--at", regress.at, "covariate point 'x1,...' (repeatable)");
  regress_cmd->add_option("--engine", regress.engine, "linear|local:H[:kernel]");
  regress_cmd->add_option("--directions", regress.directions, "grid size, default 200");
  regress_cmd->add_option("--out", regress.out, "output JSON path, default stdout");
  regress_cmd->callback([&regress]() { run_regress(regress); });

  SimulateArgs simulate;
  auto* sim_cmd = app.add_subcommand("simulate", "benchmark data generators");
  sim_cmd->add_option("--model", simulate.model, "cigar|hetero")->required();
  sim_cmd->add_option("--n", simulate.n, "sample size")->required();
  sim_cmd->add_option("--seed", simulate.seed, "RNG seed, default 0");
  sim_cmd->add_option("--out", simulate.out, "output CSV path")->required();
  sim_cmd->callback([&simulate]() { run_simulate(simulate); });

  MeanTestArgs meantest;
  auto* mean_cmd = app.add_subcommand("meantest", "depth statistic 1/2 - ED(mu0)");
  mean_cmd->add_option("--input", meantest.input, "CSV file (header row)")->required();
  mean_cmd->add_option("--mu0", meantest.mu0, "hypothesized mean 'm1,m2,...'")->required();
  mean_cmd->callback([&meantest]() { run_meantest(meantest); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << nlohmann::json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}

}  // namespace mdepth
