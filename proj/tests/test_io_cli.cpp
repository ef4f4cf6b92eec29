#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mdepth/cli.hpp"
#include "mdepth/errors.hpp"
#include "mdepth/io.hpp"
#include "mdepth/regression.hpp"
#include "mdepth/simulate.hpp"

using namespace mdepth;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path workspace() {
  const fs::path dir = fs::temp_directory_path() / "mdepth_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("mdepth");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  int code = -1;
  try {
    code = run_cli(static_cast<int>(argv.size()), argv.data());
  } catch (...) {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    throw;
  }
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, out.str(), err.str()};
}

// Structural check against the shipped schemas.  Covers the keyword subset
// those schemas use: type, required, properties, items, minItems, maxItems.
std::string schema_mismatch(const json& schema, const json& value, const std::string& where) {
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    const bool ok = (type == "object" && value.is_object()) ||
                    (type == "array" && value.is_array()) ||
                    (type == "string" && value.is_string()) ||
                    (type == "boolean" && value.is_boolean()) ||
                    (type == "integer" && value.is_number_integer()) ||
                    (type == "number" && value.is_number());
    if (!ok) return where + ": expected " + type + ", got " + std::string(value.type_name());
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) {
        return where + ": missing required key '" + key.get<std::string>() + "'";
      }
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (value.contains(key)) {
        const std::string msg = schema_mismatch(sub, value.at(key), where + "." + key);
        if (!msg.empty()) return msg;
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>()) {
      return where + ": too few items";
    }
    if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>()) {
      return where + ": too many items";
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string msg =
            schema_mismatch(schema["items"], value[i], where + "[" + std::to_string(i) + "]");
        if (!msg.empty()) return msg;
      }
    }
  }
  return "";
}

json load_schema(const std::string& name) {
  std::ifstream in(fs::path(MDEPTH_SCHEMA_DIR) / name);
  REQUIRE(in.good());
  return json::parse(in);
}

void check_schema(const std::string& schema_name, const json& value) {
  const std::string msg = schema_mismatch(load_schema(schema_name), value, schema_name);
  CHECK_MESSAGE(msg.empty(), msg);
}

double reparse(const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  REQUIRE(ec == std::errc{});
  REQUIRE(ptr == text.data() + text.size());
  return v;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("doubles round-trip through their text form") {
    Rng rng(1);
    for (int k = 0; k < 200; ++k) {
      const double v = std::exp(40.0 * (rng.uniform() - 0.5)) * (rng.normal());
      CHECK(reparse(format_double(v)) == v);
    }
    for (double v : {0.0, 1.0, -1.0, 0.1, 1.0 / 3.0, 5e-324, 1.7976931348623157e308,
                     -2.2250738585072014e-308, 12345.678901234567}) {
      CHECK(reparse(format_double(v)) == v);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.25) == "0.25");
  }

  TEST_CASE("csv write and read round-trip bit for bit") {
    const fs::path path = workspace() / "roundtrip.csv";
    Eigen::MatrixXd m(7, 3);
    Rng rng(2);
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 3; ++j) m(i, j) = rng.normal() * std::exp(10.0 * rng.uniform());
    }
    m(0, 0) = M_PI;
    m(1, 1) = 1e-17;
    m(2, 2) = -0.0;

    write_csv_matrix(path.string(), m, {"a", "b", "c"});
    const Eigen::MatrixXd back = read_csv_matrix(path.string());
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));
    }

    const std::string text = slurp(path);
    CHECK(text.rfind("a,b,c\n", 0) == 0);

    // default header names the columns c0..cK
    write_csv_matrix(path.string(), m);
    CHECK(slurp(path).rfind("c0,c1,c2\n", 0) == 0);

    CHECK_THROWS_AS(write_csv_matrix(path.string(), m, {"x"}), ShapeMismatch);
  }

  TEST_CASE("csv rejects malformed inputs") {
    const fs::path dir = workspace();
    auto write_text = [&](const std::string& name, const std::string& text) {
      std::ofstream out(dir / name, std::ios::binary);
      out << text;
      return (dir / name).string();
    };

    CHECK_THROWS_AS(read_csv_matrix((dir / "missing.csv").string()), IoError);
    CHECK_THROWS_AS(read_csv_matrix(write_text("empty.csv", "")), IoError);
    CHECK_THROWS_AS(read_csv_matrix(write_text("headonly.csv", "x,y\n")), IoError);
    CHECK_THROWS_AS(read_csv_matrix(write_text("ragged.csv", "x,y\n1,2\n3\n")), IoError);
    CHECK_THROWS_AS(read_csv_matrix(write_text("alpha.csv", "x,y\n1,two\n")), IoError);

    // CRLF endings and blank trailing lines are tolerated
    const Eigen::MatrixXd m = read_csv_matrix(write_text("crlf.csv", "x,y\r\n1,2\r\n3,4\r\n\r\n"));
    REQUIRE(m.rows() == 2);
    CHECK(m(1, 1) == 4.0);
  }

  TEST_CASE("json emitters match the shipped schemas") {
    Region2D region;
    Eigen::VectorXd u(2);
    u << 1.0, 0.0;
    region.halfspaces.push_back({Direction(u), -2.0});
    region.vertices = {Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
    region.clip_box = {{Eigen::Vector2d(-5, -5), Eigen::Vector2d(5, 5)}};
    region.edge_clipped = {false, true, false};
    const json rj = region_to_json(region);
    check_schema("region.schema.json", rj);
    CHECK(rj["empty"] == false);
    CHECK(rj["halfspaces"].size() == 1);
    CHECK(rj["vertices"].size() == 3);
    CHECK(rj["clip_box"]["lo"][0] == -5.0);
    CHECK(rj["edge_clipped"][1] == true);

    Region2D none;
    const json ej = region_to_json(none);
    check_schema("region.schema.json", ej);
    CHECK(ej["empty"] == true);
    CHECK(ej["vertices"].empty());
    CHECK_FALSE(ej.contains("clip_box"));

    DepthResult dr{0.25, Direction(u), 71, true, {}};
    json dj = depth_to_json(dr);
    check_schema("depth.schema.json", dj);
    CHECK_FALSE(dj.contains("certificate"));
    dr.certificate = std::pair<Eigen::VectorXd, Eigen::VectorXd>(Eigen::Vector2d(-1, 0),
                                                                 Eigen::Vector2d(1, 0));
    dj = depth_to_json(dr);
    check_schema("depth.schema.json", dj);
    CHECK(dj["certificate"]["lower"].size() == 2);

    RiskCheckReport report;
    report.alpha = 0.2;
    report.u = u;
    report.lhs = 1.0;
    report.rhs = 0.5;
    report.holds = true;
    const json pj = report_to_json(report);
    check_schema("risk_report.schema.json", pj);
    CHECK(pj["tolerance"] == 1e-9);
  }

  TEST_CASE("svg output is deterministic and annotates empty regions") {
    const fs::path dir = workspace();
    Eigen::MatrixXd pts(3, 2);
    pts << 0, 0, 1, 0, 0.5, 1;
    Region2D region;
    region.vertices = {Eigen::Vector2d(0.2, 0.2), Eigen::Vector2d(0.8, 0.2),
                       Eigen::Vector2d(0.5, 0.8)};

    write_region_svg((dir / "a.svg").string(), region, pts);
    write_region_svg((dir / "b.svg").string(), region, pts);
    const std::string a = slurp(dir / "a.svg");
    CHECK(a == slurp(dir / "b.svg"));
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("<polygon") != std::string::npos);
    CHECK(a.find("<circle") != std::string::npos);

    Region2D none;
    write_region_svg((dir / "empty.svg").string(), none, pts);
    const std::string e = slurp(dir / "empty.svg");
    CHECK(e.find("empty region") != std::string::npos);
    CHECK(e.find("<polygon") == std::string::npos);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("usage problems exit 2 with a usage report") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"frobnicate"},
             {"mq", "--input", "x.csv"},            // missing required --alpha
             {"depth", "--point=0,0"},              // missing required --input
             {"mq", "--input", "x.csv", "--alpha", "0.5", "--bogus"},
         }) {
      const CliResult r = run(args);
      CHECK(r.code == 2);
      const json err = json::parse(r.err);
      check_schema("error.schema.json", err);
      CHECK(err["error"] == "usage");
    }
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("data problems exit 1 with a kind-tagged report") {
    const fs::path dir = workspace();
    const fs::path csv = dir / "tiny.csv";
    {
      Rng rng(3);
      Eigen::MatrixXd m(40, 2);
      for (int i = 0; i < 40; ++i) m.row(i) << rng.normal(), rng.normal();
      write_csv_matrix(csv.string(), m);
    }

    auto expect_kind = [](const CliResult& r, const std::string& kind) {
      CHECK(r.code == 1);
      const json err = json::parse(r.err);
      check_schema("error.schema.json", err);
      CHECK(err["error"] == kind);
    };

    expect_kind(run({"mq", "--input", (dir / "nope.csv").string(), "--alpha", "0.5"}),
                "io_error");
    expect_kind(run({"mq", "--input", csv.string(), "--alpha", "1.5"}), "invalid_input");
    expect_kind(run({"mq", "--input", csv.string(), "--alpha", "0.5", "--col", "9"}),
                "invalid_input");
    expect_kind(run({"mq", "--input", csv.string(), "--alpha", "0.5", "--loss", "cauchy"}),
                "invalid_input");
    expect_kind(run({"depth", "--input", csv.string(), "--point=0,0", "--loss", "absolute",
                     "--optimize"}),
                "invalid_input");
    expect_kind(run({"depth", "--input", csv.string(), "--point=0,0,0"}), "shape_mismatch");
    expect_kind(run({"depth", "--input", csv.string()}), "invalid_input");
    expect_kind(run({"risk", "--input", csv.string(), "--alpha", "0.2"}), "invalid_input");
    expect_kind(run({"risk", "--input", csv.string(), "--alpha", "0.2", "--u=1,0",
                     "--envelope", "8"}),
                "invalid_input");
    expect_kind(run({"simulate", "--model", "blob", "--n", "10", "--out",
                     (dir / "x.csv").string()}),
                "invalid_input");
    expect_kind(run({"meantest", "--input", csv.string(), "--mu0=0"}), "shape_mismatch");
  }

  TEST_CASE("simulate emits deterministic csv that reloads bit for bit") {
    const fs::path dir = workspace();
    const fs::path out1 = dir / "h1.csv";
    const fs::path out2 = dir / "h2.csv";
    CHECK(run({"simulate", "--model", "hetero", "--n", "200", "--seed", "9", "--out",
               out1.string()})
              .code == 0);
    CHECK(run({"simulate", "--model", "hetero", "--n", "200", "--seed", "9", "--out",
               out2.string()})
              .code == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(out1).rfind("x,y1,y2\n", 0) == 0);

    const Eigen::MatrixXd m = read_csv_matrix(out1.string());
    const RegressionData d = simulate_hetero(200, 9);
    REQUIRE(m.rows() == 200);
    CHECK((m.col(0) - d.x.col(0)).norm() == 0.0);
    CHECK((m.col(1) - d.y.col(0)).norm() == 0.0);
    CHECK((m.col(2) - d.y.col(1)).norm() == 0.0);

    const fs::path cig = dir / "cigar.csv";
    CHECK(run({"simulate", "--model", "cigar", "--n", "150", "--seed", "4", "--out",
               cig.string()})
              .code == 0);
    CHECK(slurp(cig).rfind("x,y\n", 0) == 0);
    const Eigen::MatrixXd c = read_csv_matrix(cig.string());
    CHECK((c - simulate_cigar(150, 4).data()).norm() == 0.0);
  }

  TEST_CASE("mq reports the requested quantile") {
    const fs::path csv = workspace() / "mq.csv";
    Eigen::MatrixXd m(5, 1);
    m << 3, 1, 4, 1.5, 9;
    write_csv_matrix(csv.string(), m);

    const CliResult r = run({"mq", "--input", csv.string(), "--alpha", "0.5", "--loss",
                             "absolute", "--col", "0"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    check_schema("mq.schema.json", j);
    CHECK(j["value"] == 3.0);
    CHECK(j["loss"] == "absolute");
    CHECK(j["alpha"] == 0.5);

    const CliResult q = run({"mq", "--input", csv.string(), "--alpha", "0.5"});
    REQUIRE(q.code == 0);
    CHECK(json::parse(q.out)["value"].get<double>() == doctest::Approx(3.7).epsilon(1e-12));
  }

  TEST_CASE("depth evaluates probes and reports certificates") {
    const fs::path dir = workspace();
    const fs::path csv = dir / "cloud.csv";
    Rng rng(11);
    Eigen::MatrixXd m(300, 2);
    for (int i = 0; i < 300; ++i) m.row(i) << rng.normal(), rng.normal();
    write_csv_matrix(csv.string(), m);
    const Eigen::Vector2d mean = m.colwise().mean().transpose();
    const std::string mean_point =
        "--point=" + format_double(mean.x()) + "," + format_double(mean.y());

    const CliResult r =
        run({"depth", "--input", csv.string(), "--optimize", mean_point, "--point=9,9"});
    REQUIRE(r.code == 0);
    const json arr = json::parse(r.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 2);
    for (const auto& item : arr) check_schema("depth.schema.json", item);
    CHECK(arr[0]["value"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(arr[0]["converged"] == true);
    CHECK(arr[1]["value"].get<double>() == doctest::Approx(0.0).scale(1.0));

    const CliResult g = run({"depth", "--input", csv.string(), "--loss", "absolute",
                             "--directions", "64", "--point=0,0"});
    REQUIRE(g.code == 0);
    const json garr = json::parse(g.out);
    check_schema("depth.schema.json", garr[0]);
    CHECK(garr[0]["evals"] == 64);
  }

  TEST_CASE("region emits json and a deterministic figure") {
    const fs::path dir = workspace();
    const fs::path csv = dir / "region_cloud.csv";
    Rng rng(13);
    Eigen::MatrixXd m(400, 2);
    for (int i = 0; i < 400; ++i) m.row(i) << rng.normal(), 0.5 * rng.normal();
    write_csv_matrix(csv.string(), m);

    const fs::path rj = dir / "region.json";
    const fs::path svg1 = dir / "region1.svg";
    const fs::path svg2 = dir / "region2.svg";
    REQUIRE(run({"region", "--input", csv.string(), "--alpha", "0.25", "--directions", "128",
                 "--out", rj.string(), "--svg", svg1.string()})
                .code == 0);
    const json j = json::parse(slurp(rj));
    check_schema("region.schema.json", j);
    CHECK(j["empty"] == false);
    CHECK(j["halfspaces"].size() == 128);
    CHECK(j["alpha"] == 0.25);
    CHECK(j["directions"] == 128);
    CHECK(j["vertices"].size() >= 3);

    REQUIRE(run({"region", "--input", csv.string(), "--alpha", "0.25", "--directions", "128",
                 "--out", rj.string(), "--svg", svg2.string()})
                .code == 0);
    CHECK(slurp(svg1) == slurp(svg2));
    CHECK(slurp(svg1).find("<polygon") != std::string::npos);

    // quadratic depth cannot reach 0.8: empty region, reported not thrown
    const fs::path ej = dir / "empty_region.json";
    const fs::path esvg = dir / "empty_region.svg";
    REQUIRE(run({"region", "--input", csv.string(), "--alpha", "0.8", "--out", ej.string(),
                 "--svg", esvg.string()})
                .code == 0);
    const json e = json::parse(slurp(ej));
    check_schema("region.schema.json", e);
    CHECK(e["empty"] == true);
    CHECK(e["vertices"].empty());
    CHECK(slurp(esvg).find("empty region") != std::string::npos);
  }

  TEST_CASE("median and meantest agree with the library") {
    const fs::path dir = workspace();
    const fs::path csv = dir / "med.csv";
    Rng rng(17);
    Eigen::MatrixXd m(120, 2);
    for (int i = 0; i < 120; ++i) m.row(i) << rng.normal() + 1.0, rng.normal() - 2.0;
    write_csv_matrix(csv.string(), m);
    const Eigen::Vector2d mean = m.colwise().mean().transpose();

    const CliResult med = run({"median", "--input", csv.string(), "--loss", "quadratic"});
    REQUIRE(med.code == 0);
    const json mj = json::parse(med.out);
    check_schema("median.schema.json", mj);
    CHECK(mj["median"][0].get<double>() == doctest::Approx(mean.x()).epsilon(1e-12));
    CHECK(mj["median"][1].get<double>() == doctest::Approx(mean.y()).epsilon(1e-12));

    const std::string mu0 = format_double(mean.x()) + "," + format_double(mean.y());
    const CliResult mt = run({"meantest", "--input", csv.string(), "--mu0", mu0});
    REQUIRE(mt.code == 0);
    const json tj = json::parse(mt.out);
    check_schema("meantest.schema.json", tj);
    CHECK(tj["statistic"].get<double>() <= 1e-9);
    CHECK(tj["depth"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("risk halfspaces and envelopes") {
    const fs::path dir = workspace();
    const fs::path csv = dir / "risk.csv";
    Rng rng(19);
    Eigen::MatrixXd m(200, 2);
    for (int i = 0; i < 200; ++i) m.row(i) << rng.exponential(), rng.exponential();
    write_csv_matrix(csv.string(), m);

    const CliResult h = run({"risk", "--input", csv.string(), "--alpha", "0.1", "--u=3,4"});
    REQUIRE(h.code == 0);
    const json hj = json::parse(h.out);
    check_schema("risk_halfspace.schema.json", hj);
    CHECK(hj["u"][0].get<double>() == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(hj["u"][1].get<double>() == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::isfinite(hj["theta"].get<double>()));

    const CliResult e =
        run({"risk", "--input", csv.string(), "--alpha", "0.1", "--envelope", "16"});
    REQUIRE(e.code == 0);
    const json ejson = json::parse(e.out);
    check_schema("region.schema.json", ejson);
    CHECK(ejson["halfspaces"].size() == 16);
    CHECK(ejson.contains("clip_box"));
    CHECK(ejson["empty"] == false);
  }

  TEST_CASE("regress emits conditional regions") {
    const fs::path dir = workspace();
    const fs::path csv = dir / "hetero.csv";
    REQUIRE(run({"simulate", "--model", "hetero", "--n", "1500", "--seed", "21", "--out",
                 csv.string()})
                .code == 0);

    const CliResult r =
        run({"regress", "--input", csv.string(), "--xcols", "0", "--ycols", "1,2", "--alpha",
             "0.25", "--at", "0.5", "--engine", "local:0.1", "--directions", "48"});
    REQUIRE(r.code == 0);
    const json arr = json::parse(r.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 1);
    check_schema("region.schema.json", arr[0]);
    CHECK(arr[0]["empty"] == false);
    const auto echoed = parse_engine(arr[0]["engine"].get<std::string>());
    CHECK(echoed.type == EngineSpec::Type::local);
    CHECK(echoed.bandwidth == 0.1);
    CHECK(echoed.kernel == Kernel::gaussian);
    CHECK(arr[0]["x"][0] == 0.5);
    CHECK(arr[0]["halfspaces"].size() == 48);

    const CliResult bad =
        run({"regress", "--input", csv.string(), "--xcols", "0", "--ycols", "1,2", "--alpha",
             "0.25", "--at=0.5,0.5", "--engine", "linear"});
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.err)["error"] == "shape_mismatch");
  }
}
