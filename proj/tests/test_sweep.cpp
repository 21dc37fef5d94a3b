#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "nomasec/error.hpp"
#include "nomasec/secrecy.hpp"
#include "nomasec/sweep.hpp"

using namespace nomasec;

namespace {

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  emit_csv(rows, out);
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(RunSweep, GammaSweepGivesOneRowPerValueAndSolution) {
  SweepSpec spec = load_scenario("fig4");
  spec.outputs = {true, false, true};
  spec.trials = 20000;
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    EXPECT_EQ(r.axis, "gamma0_dB");
    EXPECT_EQ(r.value, spec.values[i / 2]);
    EXPECT_EQ(r.solution, i % 2 ? SolutionId::SolutionII : SolutionId::SolutionI);
    EXPECT_TRUE(r.error.empty()) << r.error;
    ASSERT_TRUE(r.sopO_exact && r.sopO_mc && r.sopO_mc_stderr);
    EXPECT_FALSE(r.sopN_asym.has_value());
    for (double p : {*r.sopN_exact, *r.sopF_exact, *r.sopO_exact, *r.sopN_mc, *r.sopF_mc, *r.sopO_mc}) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
    const Model model(apply_axis(spec.base, spec.axis, r.value));
    EXPECT_EQ(*r.sopO_exact, sop_overall(model, r.solution).sopOverall);
  }
}

TEST(RunSweep, EmptyOutputsRejected) {
  SweepSpec spec = load_scenario("fig2");
  spec.outputs = {};
  EXPECT_THROW(run_sweep(spec), ConfigError);
}

TEST(RunSweep, FailingRowIsMarkedAndTheSweepContinues) {
  SweepSpec spec = load_scenario("fig2");
  spec.outputs = {true, true, false};
  // A row that cannot be built would have been rejected up front, so force a
  // numeric failure through an oversized series instead.
  spec.axis = SweepAxis::LS;
  spec.values = {2.0, 400.0};
  const auto rows = run_sweep(spec);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(rows[0].error.empty());
  EXPECT_TRUE(rows[0].sopO_exact.has_value());
  EXPECT_FALSE(rows[2].error.empty());
}

TEST(RunSweep, DeterministicCsvBytes) {
  SweepSpec spec = load_scenario("fig10");
  spec.values = {0.0, 20.0};
  spec.trials = 50000;
  EXPECT_EQ(to_csv(run_sweep(spec)), to_csv(run_sweep(spec, {3})));
}

TEST(Csv, HeaderAndEmptyCells) {
  SweepRow r;
  r.axis = "alphaF";
  r.value = 0.6;
  r.sopN_exact = 0.25;
  r.sopF_exact = 0.5;
  r.sopO_exact = 0.625;
  const auto lines = lines_of(to_csv({r}));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0],
            "axis,value,solution,sopN_exact,sopF_exact,sopO_exact,sopN_asym,sopF_asym,sopO_asym,"
            "sopN_mc,sopN_mc_stderr,sopF_mc,sopF_mc_stderr,sopO_mc,sopO_mc_stderr,error\r");
  EXPECT_EQ(lines[1], "alphaF,0.59999999999999998,I,0.25,0.5,0.625,,,,,,,,,,\r");
  EXPECT_THROW(to_csv({}), ConfigError);
}

TEST(Csv, RoundTripIsExact) {
  SweepSpec spec = load_scenario("fig2");
  spec.outputs = {true, true, true};
  spec.trials = 5000;
  spec.values = {0.0, 30.0};
  auto rows = run_sweep(spec);
  rows[1].error = "note, with \"quotes\"\nand a newline";
  std::istringstream in(to_csv(rows));
  const auto back = read_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].axis, rows[i].axis);
    EXPECT_EQ(back[i].value, rows[i].value);
    EXPECT_EQ(back[i].solution, rows[i].solution);
    EXPECT_EQ(back[i].sopN_exact, rows[i].sopN_exact);
    EXPECT_EQ(back[i].sopF_asym, rows[i].sopF_asym);
    EXPECT_EQ(back[i].sopO_asym, rows[i].sopO_asym);
    EXPECT_EQ(back[i].sopO_mc, rows[i].sopO_mc);
    EXPECT_EQ(back[i].sopO_mc_stderr, rows[i].sopO_mc_stderr);
    EXPECT_EQ(back[i].error, rows[i].error);
  }
}

TEST(Csv, ReaderFollowsRfc4180) {
  std::string text;
  for (const auto& h : csv_header()) text += (text.empty() ? "" : ",") + h;
  text += "\n\"gamma0_dB\",1e1,II,\"0.5\",,,,,,,,,,,,\"a \"\"b\"\", c\"\n";
  std::istringstream in(text);
  const auto rows = read_csv(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].value, 10.0);
  EXPECT_EQ(rows[0].solution, SolutionId::SolutionII);
  EXPECT_EQ(rows[0].sopN_exact, 0.5);
  EXPECT_FALSE(rows[0].sopF_exact.has_value());
  EXPECT_EQ(rows[0].error, "a \"b\", c");

  std::istringstream bad("axis,value\n");
  EXPECT_THROW(read_csv(bad), ParseError);
  std::istringstream shortRow(text.substr(0, text.find('\n') + 1) + "a,1,I\n");
  EXPECT_THROW(read_csv(shortRow), ParseError);
}

TEST(Csv, WriteFileAndUnwritablePath) {
  SweepRow r;
  r.axis = "m_E";
  r.value = 2;
  const std::string path = testing::TempDir() + "nomasec_rows.csv";
  write_csv({r}, path);
  std::ifstream in(path, std::ios::binary);
  const auto back = read_csv(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].value, 2.0);
  EXPECT_THROW(write_csv({r}, "/nonexistent-dir/rows.csv"), ConfigError);
}

TEST(AlphaStar, FigureEightOptimaAreInterior) {
  const SweepSpec spec = load_scenario("fig8");
  const AlphaStar i = find_alpha_star(spec.base, SolutionId::SolutionI, spec.values);
  const AlphaStar ii = find_alpha_star(spec.base, SolutionId::SolutionII, spec.values);
  EXPECT_TRUE(i.interior);
  EXPECT_TRUE(ii.interior);
  EXPECT_NEAR(i.alphaF, 0.98, 0.03);
  EXPECT_NEAR(ii.alphaF, 0.92, 0.03);
  for (double a : spec.values) {
    const Model model(apply_axis(spec.base, SweepAxis::AlphaF, a));
    EXPECT_GE(sop_overall(model, SolutionId::SolutionI).sopOverall, i.sopO);
  }
}

TEST(AlphaStar, SinglePointAndBadGrids) {
  const SystemConfig c = load_scenario("fig8").base;
  const AlphaStar one = find_alpha_star(c, SolutionId::SolutionII, {0.7});
  EXPECT_EQ(one.alphaF, 0.7);
  EXPECT_EQ(one.index, 0u);
  EXPECT_FALSE(one.interior);
  EXPECT_THROW(find_alpha_star(c, SolutionId::SolutionI, {}), ConfigError);
  EXPECT_THROW(find_alpha_star(c, SolutionId::SolutionI, {0.5, 0.7}), ConfigError);
  EXPECT_THROW(find_alpha_star(c, SolutionId::SolutionI, {0.7, 1.0}), ConfigError);
}
