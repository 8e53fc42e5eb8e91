#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "greedylab/config.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/report.hpp"

using namespace greedylab;

TEST(Config, DefaultsAndRoundTrip) {
    const RunConfig d;
    EXPECT_NO_THROW(d.validate());
    EXPECT_TRUE(d.wants("csv"));
    EXPECT_TRUE(d.wants("json"));
    const RunConfig back = config_from_json_text(config_to_json_text(d));
    EXPECT_EQ(config_to_json_text(back), config_to_json_text(d));
}

TEST(Config, ParsesSchema) {
    const auto cfg = config_from_json_text(R"({
      "catalog": {"dim": 6, "seed": 3},
      "grid": {"s": 1.5, "K": 4, "levels": 6},
      "probe": {"seed": 9, "random_count": 16, "support_cap": 3},
      "limits": {"subset_cap": 1000, "vertex_cap": 8, "m_max": 4},
      "outputs": {"dir": "out", "formats": ["csv"]}})");
    EXPECT_EQ(cfg.catalog.dim, 6);
    EXPECT_EQ(cfg.catalog.seed, 3u);
    EXPECT_DOUBLE_EQ(cfg.grid.s, 1.5);
    EXPECT_EQ(cfg.grid.levels, 6);
    EXPECT_EQ(cfg.probe.random_count, 16);
    EXPECT_EQ(cfg.limits.m_max, 4);
    EXPECT_FALSE(cfg.wants("json"));
}

TEST(Config, Rejections) {
    EXPECT_THROW(config_from_json_text("{"), UsageError);
    EXPECT_THROW(config_from_json_text(R"({"grids": {}})"), UsageError);
    EXPECT_THROW(config_from_json_text(R"({"grid": {"k": 3}})"), UsageError);
    EXPECT_THROW(config_from_json_text(R"({"grid": {"K": 0}})"), UsageError);
    EXPECT_THROW(config_from_json_text(R"({"grid": {"s": 1.0}})"), UsageError);
    EXPECT_THROW(config_from_json_text(R"({"grid": {"K": 8, "levels": 8}})"), UsageError);
    EXPECT_THROW(config_from_json_text(R"({"catalog": {"dim": "ten"}})"), UsageError);
    EXPECT_THROW(config_from_json_text(R"({"catalog": {"seed": -1}})"), UsageError);
    EXPECT_THROW(config_from_json_text(R"({"limits": {"vertex_cap": 0}})"), UsageError);
    EXPECT_THROW(config_from_json_text(R"({"outputs": {"formats": ["xml"]}})"), UsageError);
    EXPECT_THROW(load_config("/nonexistent/config.json"), UsageError);
}

TEST(Config, Overrides) {
    ConfigOverrides o;
    o.dim = 5;
    o.grid_k = 12;
    o.out = "elsewhere";
    const RunConfig cfg = apply_overrides(RunConfig{}, o);
    EXPECT_EQ(cfg.catalog.dim, 5);
    EXPECT_EQ(cfg.grid.K, 12);
    EXPECT_EQ(cfg.grid.levels, 13);
    EXPECT_EQ(cfg.outputs.dir, "elsewhere");
    ConfigOverrides bad;
    bad.grid_k = 0;
    EXPECT_THROW(apply_overrides(RunConfig{}, bad), UsageError);
}

TEST(Report, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678901234567, -2.5}) {
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Report, CsvEscapingAndWidth) {
    CsvTable t({"a", "b"});
    t.add_row({"x,y", "say \"hi\""});
    EXPECT_EQ(t.text(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
    EXPECT_THROW(t.add_row({"only one"}), UsageError);
    EXPECT_EQ(plot_csv({1, 2}, {3, 4}), "x,y\n1,3\n2,4\n");
    EXPECT_THROW(plot_csv({1}, {}), UsageError);
}

TEST(Report, WitnessStoreRefs) {
    WitnessStore store;
    Witness w;
    w.A = {0, 2};
    const auto ref = store.add("fundamental", "2", 2.0, w);
    EXPECT_EQ(ref, "fundamental:2");
    EXPECT_TRUE(store.contains(ref));
    EXPECT_FALSE(store.contains("fundamental:3"));
    const std::string text = store.to_json_text("lp:1.0:3");
    EXPECT_NE(text.find("\"0-based\""), std::string::npos);
    EXPECT_NE(text.find("fundamental:2"), std::string::npos);
}

TEST(Report, WriteCreatesDirectories) {
    const auto dir = std::filesystem::temp_directory_path() / "greedylab_report_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    write_text_file((dir / "f.txt").string(), "hello");
    std::ifstream in(dir / "f.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "hello");
    std::filesystem::remove_all(dir.parent_path());
}

TEST(Report, SummaryTable) {
    std::vector<CheckResult> v(2);
    v[0].check_id = "monotone";
    v[0].basis_id = "b";
    v[0].verdict = Verdict::pass;
    v[1].check_id = "nucc";
    v[1].basis_id = "b";
    const std::string s = summary_table(v);
    EXPECT_NE(s.find("pass      monotone"), std::string::npos);
    EXPECT_NE(s.find("checks: 2  pass: 1  fail: 0  recorded: 1"), std::string::npos);
    EXPECT_NE(check_results_to_json_text(v).find("\"verdict\": \"recorded\""), std::string::npos);
}
