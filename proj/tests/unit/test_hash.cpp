#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "medea/config.hpp"
#include "medea/hash.hpp"
#include "scenarios.hpp"

namespace medea {
namespace {

TEST(Fnv1a, PublishedVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(ScenarioHash, StableAndSensitive) {
  const auto a = testing::dispatch_toy();
  const auto h = scenario_hash(a);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(h, scenario_hash(testing::dispatch_toy()));
  auto b = a;
  b.storages.front().efficiency_in = std::nextafter(b.storages.front().efficiency_in, 0.0);
  EXPECT_NE(h, scenario_hash(b));
  b = a;
  b.dispatchables.front().id += "x";
  EXPECT_NE(h, scenario_hash(b));
}

TEST(ScenarioHash, StringsAreLengthPrefixed) {
  auto a = testing::dispatch_toy();
  auto b = a;
  a.name = "ab";
  a.focus_zone = "c";
  b.name = "a";
  b.focus_zone = "bc";
  EXPECT_NE(canonical_text(a), canonical_text(b));
}

TEST(ScenarioHash, SurvivesConfigRoundTrip) {
  const auto cfg = load_config(testing::toy_config_path());
  const auto dir = std::filesystem::temp_directory_path() / "medea_hash_roundtrip";
  std::filesystem::remove_all(dir);
  const auto path = write_config(cfg, dir);
  const auto again = load_config(path);
  EXPECT_EQ(scenario_hash(cfg.scenario), scenario_hash(again.scenario));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace medea
