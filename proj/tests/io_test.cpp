#include "cae/io.hpp"
#include "cae/sft_ops.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace cae;
using io::json;

TEST(SpecJson, GoldenMeanRoundTrip) {
  auto j = json::parse(R"({"name": "golden", "alphabet": ["0","1"], "dimension": 1, "forbidden": ["11"]})");
  SftSpec s = io::spec_from_json(j);
  EXPECT_EQ(count_patterns(s, RectWindow::line(3)), 5);
  SftSpec back = io::spec_from_json(io::spec_to_json(s));
  EXPECT_EQ(back.forbidden(), s.forbidden());
  EXPECT_EQ(back.name(), "golden");
}

TEST(SpecJson, TwoDimensionalRowsTopFirst) {
  auto j = json::parse(R"({"alphabet": ["0","1"], "dimension": 2, "forbidden": [["1","0"]]})");
  SftSpec s = io::spec_from_json(j);
  ASSERT_EQ(s.forbidden().size(), 1u);
  // 1 above 0 is forbidden
  EXPECT_EQ(s.forbidden()[0].at({0, 1}), 1);
  EXPECT_EQ(s.forbidden()[0].at({0, 0}), 0);
  EXPECT_EQ(io::spec_from_json(io::spec_to_json(s)).forbidden(), s.forbidden());
}

TEST(SpecJson, Rejections) {
  EXPECT_THROW(io::spec_from_json(json::parse(R"({"alphabet": ["0"], "dimension": 1, "forbidden": [], "x": 1})")),
               Error);
  EXPECT_THROW(io::spec_from_json(json::parse(R"({"alphabet": ["0"], "dimension": 3, "forbidden": []})")), Error);
  EXPECT_THROW(io::spec_from_json(json::parse(R"({"alphabet": ["0"], "dimension": 1, "forbidden": ["2"]})")), Error);
  EXPECT_THROW(io::spec_from_json(json::parse(R"({"alphabet": ["0"], "forbidden": []})")), Error);
  EXPECT_THROW(io::spec_from_json(json::parse(R"([1, 2])")), Error);
}

TEST(RuleJson, BuiltinsAndTables) {
  CaRule x = io::rule_from_json(json::parse(R"({"builtin": "xor"})"));
  EXPECT_EQ(x.alphabet().size(), 2);
  CaRule t = io::rule_from_json(json::parse(
      R"({"alphabet": ["0","1"], "radius": 0, "table": ["1","0"]})"));
  EXPECT_EQ(t.apply({0}), 1);
  EXPECT_THROW(io::rule_from_json(json::parse(R"({"builtin": "nope"})")), Error);
  EXPECT_THROW(io::rule_from_json(json::parse(R"({"alphabet": ["0","1"], "radius": 0, "table": ["1"]})")), Error);
}

TEST(MachineJson, TableAndBuiltin) {
  auto m = io::machine_from_json(json::parse(
      R"({"name": "m", "transitions": [["q0", "1", "q1", "1", "R"], ["q1", "1", "halt", "0", "S"]]})"));
  EXPECT_TRUE(run_machine(m, {"1", "1"}, 10).halted);
  EXPECT_EQ(run_machine(m, {"1", "1"}, 10).steps, 2);
  auto h = io::machine_from_json(json::parse(R"({"builtin": "halt-at-step", "n": 3})"));
  EXPECT_EQ(run_machine(h, {"0"}, 10).steps, 3);
  EXPECT_THROW(io::machine_from_json(json::parse(R"({"transitions": [["q0","1","q1","1","X"]]})")), Error);
}

TEST(GridJson, RoundTrip) {
  CountGrid g;
  g.set(1, 2, Count("123456789012345678901234567890"));
  CountGrid back = io::grid_from_json(io::grid_to_json(g));
  EXPECT_EQ(back.at(1, 2), g.at(1, 2));
  EXPECT_THROW(io::grid_from_json(json::parse(R"({"cells": [[1, 1]]})")), Error);
}

TEST(Images, PgmHeaderAndBytes) {
  std::string path = ::testing::TempDir() + "img.pgm";
  io::write_pgm(path, {{0, 255}, {128, 7}}, 255);
  std::ifstream in(path, std::ios::binary);
  std::string all((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(all.substr(0, 11), "P5\n2 2\n255\n");
  ASSERT_EQ(all.size(), 15u);
  EXPECT_EQ(static_cast<unsigned char>(all[12]), 255);
  EXPECT_THROW(io::write_pgm(path, {{0, 1}, {2}}, 255), Error);
  std::remove(path.c_str());
}
