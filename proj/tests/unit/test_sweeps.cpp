#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adiaclone/sweeps.hpp"

using namespace adiaclone;

namespace {

// Fixed parameters and swept path per preset.
struct PresetRow {
  const char* id;
  const char* swept;
  double omega_m, t0, t1, tp, delta, nu, T;
};

const PresetRow kPresets[] = {
    {"3a", "pulses.omega_m", 1, 150, 90, 50, 10, 10, 200}, {"3b", "pulses.t1", 1, 150, 90, 50, 10, 10, 200},
    {"3c", "pulses.tp", 1, 150, 90, 50, 10, 10, 200},      {"4", "system.nu", 1, 150, 90, 50, 10, 10, 200},
    {"5", "system.delta", 1, 150, 90, 50, 10, 10, 200},    {"6", "", 1, 150, 90, 50, 10, 10, 200},
    {"7", "system.kappa", 1, 150, 90, 50, 10, 10, 200},
};

bool contains(const std::vector<double>& v, double x) {
  return std::any_of(v.begin(), v.end(), [x](double y) { return std::abs(x - y) < 1e-12; });
}

SweepSpec small_sweep() {
  SweepSpec s = base_spec();
  s.dt = 0.02;
  s.axes = {{"pulses.tp", {30, 45, 60, 75}}};
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Presets, MatchReferenceParameters) {
  for (const auto& row : kPresets) {
    const auto s = figure_preset(row.id);
    SCOPED_TRACE(row.id);
    EXPECT_EQ(s.pulses, (PulseParams{row.omega_m, row.t0, row.t1, row.tp, row.T}));
    EXPECT_EQ(s.system.delta, row.delta);
    EXPECT_EQ(s.system.nu, row.nu);
    EXPECT_EQ(s.system.n_sites, 3);
    EXPECT_EQ(s.output_path, std::string("fig") + row.id + ".csv");
    if (*row.swept) {
      ASSERT_FALSE(s.axes.empty());
      EXPECT_EQ(s.axes[0].param, row.swept);
    } else {
      EXPECT_TRUE(s.axes.empty());
      EXPECT_EQ(s.observable, SweepObservable::TimeSeries);
    }
    EXPECT_NO_THROW(s.validate());
  }
  EXPECT_THROW(figure_preset("8"), std::invalid_argument);
}

TEST(Presets, GridsCoverTheReferenceRanges) {
  const auto c = figure_preset("3c");
  ASSERT_EQ(c.axes[0].values.size(), 21u);
  for (double tp : {40.0, 45.0, 50.0, 55.0, 60.0, 100.0}) EXPECT_TRUE(contains(c.axes[0].values, tp)) << tp;
  EXPECT_TRUE(contains(figure_preset("3a").axes[0].values, 1.0));
  EXPECT_TRUE(contains(figure_preset("3b").axes[0].values, 90.0));
  EXPECT_TRUE(contains(figure_preset("4").axes[0].values, 10.0));
  EXPECT_TRUE(contains(figure_preset("4").axes[0].values, 0.5));
  EXPECT_TRUE(contains(figure_preset("5").axes[0].values, 10.0));
  EXPECT_TRUE(contains(figure_preset("5").axes[0].values, 0.5));

  const auto seven = figure_preset("7");
  ASSERT_EQ(seven.axes.size(), 2u);
  EXPECT_EQ(seven.axes[1].param, "system.gamma");
  for (const auto& axis : seven.axes) {
    EXPECT_EQ(axis.values.size(), 6u);
    EXPECT_EQ(axis.values.front(), 0.0);
    EXPECT_NEAR(axis.values.back(), 0.01, 1e-15);
  }
  EXPECT_EQ(seven.model, ModelKind::Full);
  EXPECT_EQ(seven.protocol, Protocol::Clone);
  EXPECT_EQ(seven.dynamics, Dynamics::Lindblad);
  EXPECT_EQ(seven.basis.excitation_cap, 1);
}

TEST(Csv, HeadersFollowTheSchema) {
  EXPECT_EQ(csv_header(figure_preset("3c")), (std::vector<std::string>{"tp", "fidelity"}));
  EXPECT_EQ(csv_header(figure_preset("6")), (std::vector<std::string>{"gt", "fidelity"}));
  EXPECT_EQ(csv_header(figure_preset("7")), (std::vector<std::string>{"kappa", "gamma", "fidelity"}));
}

TEST(RunSweep, RowsOrderedAndDeterministicAcrossWorkers) {
  const auto spec = small_sweep();
  const auto one = run_sweep(spec, 1);
  const auto three = run_sweep(spec, 3);
  ASSERT_EQ(one.rows.size(), 4u);
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    EXPECT_EQ(one.rows[i].coordinates[0], spec.axes[0].values[i]);
    EXPECT_TRUE(one.rows[i].error.empty());
    EXPECT_GE(one.rows[i].fidelity, 0.0);
    EXPECT_LE(one.rows[i].fidelity, 1.0 + 1e-9);
  }
  EXPECT_EQ(format_csv(one), format_csv(three));
  EXPECT_EQ(one.basis_dimension, 8u);
  EXPECT_EQ(one.excitation_cap, 1);
  EXPECT_EQ(one.dt, 0.02);
  EXPECT_EQ(format_csv(one).find('\r'), std::string::npos);
}

TEST(RunSweep, TwoDimensionalGridIsRowMajor) {
  SweepSpec spec = small_sweep();
  spec.axes = {{"system.nu", {5, 10}}, {"pulses.tp", {40, 50, 60}}};
  const auto r = run_sweep(spec, 2);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.rows[1].coordinates, (std::vector<double>{5, 50}));
  EXPECT_EQ(r.rows[3].coordinates, (std::vector<double>{10, 40}));
  const auto csv = format_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "nu,tp,fidelity");
}

TEST(RunSweep, FailedPointIsRecordedNotDropped) {
  SweepSpec spec = small_sweep();
  spec.axes = {{"system.delta", {-1, 0, 1}}};
  const auto r = run_sweep(spec, 1);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_TRUE(std::isnan(r.rows[1].fidelity));
  EXPECT_NE(r.rows[1].error.find("system.delta"), std::string::npos);
  EXPECT_TRUE(r.rows[0].error.empty());
  EXPECT_NE(format_csv(r).find("0,nan\n"), std::string::npos);
}

TEST(RunSweep, TimeSeriesAndCsvFile) {
  SweepSpec spec = figure_preset("6");
  spec.dt = 0.02;
  spec.sample_stride = 500;
  const auto path = std::filesystem::temp_directory_path() / "adiaclone_fig6.csv";
  spec.output_path = path.string();
  const auto r = run_sweep(spec, 1);
  ASSERT_EQ(r.rows.size(), 21u);
  EXPECT_EQ(r.rows.back().coordinates[0], 200.0);
  const auto text = slurp(path);
  EXPECT_EQ(text.substr(0, 12), "gt,fidelity\n");
  EXPECT_EQ(text, format_csv(r));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 22);
  std::filesystem::remove(path);

  spec.output_path = "/nonexistent-dir/x.csv";
  EXPECT_THROW(run_sweep(spec, 1), std::runtime_error);
}

TEST(Csv, TwelveSignificantDigits) {
  SweepResult r{small_sweep(), {{{0.1}, 2.0 / 3.0, {}, 0.0}}, 0.02, 8, 1};
  EXPECT_EQ(format_csv(r), "tp,fidelity\n0.1,0.666666666667\n");
}
