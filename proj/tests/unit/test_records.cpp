#include <cmath>
#include <limits>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "revive/errors.hpp"
#include "revive/records.hpp"

namespace revive {
namespace {

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    const std::string s = format_double(x);
    EXPECT_EQ(std::stod(s), x) << s;
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "null");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "null");
}

TEST(Record, InsertionOrderedJson) {
  Record r("filter", 3);
  r.set("tau", 0.25).set("k_used", std::size_t{2}).set("ok", true).set("name", "a\"b").set("delta", -4);
  const std::string line = r.to_line();
  EXPECT_EQ(line, R"({"kind":"filter","round":3,"tau":0.25,"k_used":2,"ok":true,"name":"a\"b","delta":-4})");
  EXPECT_TRUE(nlohmann::json::accept(line));
}

TEST(Record, ArraysAndOverwrite) {
  Record r("x", 0);
  r.set("v", std::vector<double>{1.5, 2.0}).set("b", std::vector<bool>{true, false});
  r.set("v", 7);
  const auto j = nlohmann::json::parse(r.to_line());
  EXPECT_EQ(j["v"], 7);
  EXPECT_EQ(j["b"][1], false);
}

TEST(SimulationConfigJson, RoundTrip) {
  const std::string text = R"({"seed": 9, "rounds": 4, "shape": [20, 10], "spectrum": [5,4,3,2,1,1,1,1,1,0.5],
                              "edit_kind": "random-low-rank", "tau": 0.2})";
  const SimulationConfig c = parse_simulation_config(text);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.rows, 20u);
  EXPECT_EQ(c.cols, 10u);
  EXPECT_EQ(c.edit_kind, EditKind::random_low_rank);
  EXPECT_EQ(c.edits_per_round, SimulationConfig{}.edits_per_round);
  const SimulationConfig again = parse_simulation_config(simulation_config_to_json(c));
  EXPECT_EQ(simulation_config_to_json(again), simulation_config_to_json(c));
}

TEST(SimulationConfigJson, Rejects) {
  EXPECT_THROW(parse_simulation_config("{}"), FormatError);
  EXPECT_THROW(parse_simulation_config("not json"), FormatError);
  EXPECT_THROW(parse_simulation_config(R"({"seed": 1, "colour": 2})"), FormatError);
  EXPECT_THROW(parse_simulation_config(R"({"seed": 1, "edit_kind": "rank-two"})"), FormatError);
  EXPECT_THROW(parse_simulation_config(R"({"seed": 1, "shape": [3]})"), FormatError);
  EXPECT_THROW(parse_simulation_config(R"({"seed": 1, "rounds": "many"})"), FormatError);
  EXPECT_THROW(parse_simulation_config(R"({"seed": 1, "rounds": 0})"), ArgumentError);
}

}  // namespace
}  // namespace revive
