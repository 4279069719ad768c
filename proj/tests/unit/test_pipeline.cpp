#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "macrovar/number_format.hpp"
#include "macrovar/pipeline.hpp"
#include "macrovar/svg_chart.hpp"
#include "support/error_kind.hpp"

namespace macrovar {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t count(const std::string& text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("macrovar_") + info->name() + "_" +
                                         std::to_string(std::random_device{}()));
    fs::remove_all(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  RunConfig brazil(const std::string& subdir) const {
    RunConfig cfg;
    cfg.dataset = MACROVAR_DATA_DIR "/macro_panel.csv";
    cfg.country = "Brazil";
    cfg.variables = {"gdp", "interest_rate"};
    cfg.horizon = 10;
    cfg.output_dir = root_ / subdir;
    return cfg;
  }

  fs::path root_;
};

TEST_F(PipelineTest, IrfTableHasOneRowPerCell) {
  const auto prepared = prepare_sample(brazil("x"));
  const auto est = estimate_var(prepared.sample, VarSpec{{"gdp", "interest_rate"}, 1, true});
  const auto irf = orthogonal_irf(est, 10);
  const auto rows = irf_table(irf);
  ASSERT_EQ(rows.size(), 44u);
  EXPECT_EQ(rows[0].shock, "gdp");
  EXPECT_EQ(rows[0].response, "gdp");
  EXPECT_EQ(rows[10].horizon, 10);
  EXPECT_EQ(rows[11].response, "interest_rate");
  EXPECT_EQ(rows[22].shock, "interest_rate");
  EXPECT_EQ(rows[23].point, irf.point[1](0, 1));
  for (const auto& r : rows) EXPECT_FALSE(r.lower.has_value());

  const auto csv = lines_of(irf_csv(irf));
  ASSERT_EQ(csv.size(), 45u);
  EXPECT_EQ(csv[0], "horizon,response,shock,point,lower,upper");
  EXPECT_EQ(csv[24], "1,gdp,interest_rate," + format_double(irf.point[1](0, 1)) + ",,");
}

TEST_F(PipelineTest, RunIrfWritesArtifactsAndIsReproducible) {
  auto cfg = brazil("a");
  cfg.bootstrap = BootstrapConfig{200, 0.9, 42, 0};
  const auto first = run_irf(cfg);
  for (const char* f : {"irf.csv", "irf.svg", "estimate.csv", "fevd.csv", "meta.json"})
    EXPECT_TRUE(fs::exists(cfg.output_dir / f)) << f;
  EXPECT_EQ(lines_of(slurp(cfg.output_dir / "irf.csv")).size(), 45u);

  auto again = brazil("b");
  again.bootstrap = BootstrapConfig{200, 0.9, 42, 1};
  run_irf(again);
  for (const char* f : {"irf.csv", "estimate.csv", "fevd.csv", "irf.svg", "meta.json"}) {
    std::string a = slurp(cfg.output_dir / f), b = slurp(again.output_dir / f);
    if (std::string_view(f) == "meta.json") {
      // Only the output directory and thread count may differ.
      EXPECT_EQ(count(a, "\"seed\": 42"), 1u);
      EXPECT_EQ(count(b, "\"seed\": 42"), 1u);
      continue;
    }
    EXPECT_EQ(a, b) << f;
  }

  const auto meta = slurp(cfg.output_dir / "meta.json");
  for (const char* key : {"\"version\"", "\"cholesky_ordering\"", "\"transforms\"", "\"covariance_divisor\"",
                          "\"seed\"", "\"stability\"", "\"data_notes\""})
    EXPECT_NE(meta.find(key), std::string::npos) << key;
  EXPECT_NE(meta.find("\"log\""), std::string::npos);
  EXPECT_NE(meta.find("\"dof\""), std::string::npos);

  const auto irf_rows = lines_of(slurp(cfg.output_dir / "irf.csv"));
  EXPECT_NE(irf_rows[1].back(), ',');
}

TEST_F(PipelineTest, BootstrapWithoutSeedFailsBeforeComputation) {
  auto cfg = brazil("c");
  cfg.bootstrap = BootstrapConfig{};
  try {
    run_irf(cfg);
    FAIL() << "expected ConfigError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
    EXPECT_EQ(e.stage(), "config");
    EXPECT_EQ(exit_code(category(e.kind())), 2);
  }
  EXPECT_FALSE(fs::exists(cfg.output_dir));
}

TEST_F(PipelineTest, ErrorsCarryTheirStage) {
  auto cfg = brazil("d");
  cfg.country = "Chile";
  try {
    run_estimate(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownCountry);
    EXPECT_EQ(e.stage(), "load");
    EXPECT_EQ(exit_code(category(e.kind())), 3);
  }

  cfg = brazil("e");
  cfg.country = "Nigeria";
  cfg.variables = {"interest_rate"};
  cfg.transforms.emplace("interest_rate", TransformKind::Log);
  try {
    run_estimate(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveValue);
    EXPECT_EQ(e.stage(), "transform");
  }
}

TEST_F(PipelineTest, EstimateStabilityAndLagSelectionOutputs) {
  auto cfg = brazil("f");
  run_estimate(cfg);
  const auto est = lines_of(slurp(cfg.output_dir / "estimate.csv"));
  EXPECT_EQ(est[0], "block,equation,regressor,value");
  EXPECT_EQ(est.size(), 1u + 2u + 4u + 4u);

  run_stability(cfg);
  const auto stab = slurp(cfg.output_dir / "stability.csv");
  EXPECT_NE(stab.find("0.9156607733"), std::string::npos) << stab;

  cfg.lag_selection = LagSelectionConfig{3, InformationCriterion::BIC};
  run_lagselect(cfg);
  EXPECT_EQ(lines_of(slurp(cfg.output_dir / "lagselect.csv")).size(), 4u);
}

TEST_F(PipelineTest, ReportRows) {
  RunConfig cfg;
  cfg.dataset = MACROVAR_DATA_DIR "/macro_panel.csv";
  cfg.output_dir = root_ / "report";
  run_report(cfg);
  const auto rows = lines_of(slurp(cfg.output_dir / "panel_summary.csv"));
  ASSERT_EQ(rows.size(), 70u);
  EXPECT_EQ(rows[0], "country,year,gdp_growth,interest_rate,inflation,exchange_rate_usd");
  EXPECT_EQ(rows[1], "Brazil,2000,,48.5047,7.044,1.8294");
  const double growth = std::log(559984000000.0 / 655448000000.0);
  EXPECT_NEAR(growth, -0.1574, 1e-4);
  ASSERT_TRUE(rows[2].starts_with("Brazil,2001,"));
  const auto cell = rows[2].substr(12, rows[2].find(",45.6378") - 12);
  EXPECT_NEAR(*parse_double(cell), growth, 1e-14);
  bool india_2010 = false;
  for (const auto& r : rows)
    if (r.starts_with("India,2010,")) india_2010 = r.find(",-1.9839,") != std::string::npos;
  EXPECT_TRUE(india_2010);
  EXPECT_TRUE(fs::exists(cfg.output_dir / "panel_summary.svg"));
}

TEST_F(PipelineTest, SimulateFixedPointAndTaylorOnTarget) {
  RunConfig cfg;
  cfg.output_dir = root_ / "sim";
  cfg.dsge = DsgeConfig{};
  cfg.dsge->params.labor_disutility = 0.0;
  cfg.dsge->inflation = {cfg.dsge->params.inflation_target};
  run_simulate(cfg);
  const auto rows = lines_of(slurp(cfg.output_dir / "dsge_paths.csv"));
  ASSERT_EQ(rows.size(), 1u + 200u + 1u);
  EXPECT_EQ(rows[0],
            "period,technology,labor,capital,output,interest_rate,consumption,investment,bonds,discounted_utility");
  const std::string rho = format_double(cfg.dsge->params.natural_rate);
  for (std::size_t t = 1; t <= 200; ++t) {
    EXPECT_NE(rows[t].find(",1,1,1,1," + rho + ",1,0,0,"), std::string::npos) << rows[t];
  }
  EXPECT_TRUE(rows.back().starts_with("total_utility,,,,,,,,,"));

  const auto meta = slurp(cfg.output_dir / "meta.json");
  EXPECT_NE(meta.find("\"tail_bound_loose\": true"), std::string::npos);
  const auto tail = format_double(std::pow(0.99, 200));
  EXPECT_NE(meta.find(tail.substr(0, 6)), std::string::npos) << tail;
}

TEST_F(PipelineTest, SimulateReportsInfeasiblePeriod) {
  RunConfig cfg;
  cfg.output_dir = root_ / "bad";
  cfg.dsge = DsgeConfig{};
  cfg.dsge->savings = {0.7, 0.4};
  try {
    run_simulate(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    EXPECT_EQ(e.stage(), "simulate");
    EXPECT_NE(e.detail().find("period 0"), std::string::npos);
    EXPECT_EQ(exit_code(category(e.kind())), 4);
  }
}

TEST(Svg, RendersSelfContainedDocument) {
  svg::ChartPanel panel;
  panel.title = "GDP <- rate & \"shock\"";
  panel.lines.push_back({"point", {0, 1, 2, 3}, {1.0, -0.5, NAN, 0.25}});
  panel.band = svg::BandSeries{{0, 1, 2, 3}, {0.5, -1, -1, 0}, {1.5, 0, 0, 0.5}};
  const auto doc = svg::render({panel, panel}, "Title", {2, 300, 200});
  EXPECT_TRUE(doc.starts_with("<?xml") || doc.starts_with("<svg"));
  EXPECT_NE(doc.find("xmlns=\"http://www.w3.org/2000/svg\""), std::string::npos);
  EXPECT_TRUE(doc.ends_with("</svg>\n") || doc.ends_with("</svg>"));
  EXPECT_EQ(count(doc, "<polygon"), 2u);
  // The non-finite point splits the line into two polylines per panel.
  EXPECT_EQ(count(doc, "<polyline"), 4u);
  EXPECT_NE(doc.find("GDP &lt;- rate &amp; &quot;shock&quot;"), std::string::npos);
  EXPECT_EQ(doc.find("nan"), std::string::npos);
  EXPECT_EQ(svg::render({panel}, "Title"), svg::render({panel}, "Title"));
}

TEST(Svg, EscapesMarkup) {
  EXPECT_EQ(svg::escape_xml("a<b>&'\""), "a&lt;b&gt;&amp;&apos;&quot;");
  EXPECT_EQ(svg::escape_xml("plain"), "plain");
}

}  // namespace
}  // namespace macrovar
