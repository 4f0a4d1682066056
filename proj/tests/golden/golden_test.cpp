#include <gtest/gtest.h>

#include <cstdlib>

#include "golden_cases.hpp"

using namespace invdec::golden;

namespace {

const std::filesystem::path kGoldenDir = INVDEC_GOLDEN_DIR;
const std::filesystem::path kFixtureDir = INVDEC_FIXTURE_DIR;

class Golden : public ::testing::TestWithParam<GoldenCase> {};

std::string case_name(const ::testing::TestParamInfo<GoldenCase>& info) {
  return info.param.name;
}

}  // namespace

// Set INVDEC_UPDATE_GOLDEN=1 to rewrite the expected outputs.
TEST_P(Golden, OutputIsByteStable) {
  const GoldenCase& c = GetParam();
  const CliRun first = run_cli(INVDEC_CLI_PATH, c, kFixtureDir);
  EXPECT_EQ(first.exit_code, c.exit_code);

  const auto path = golden_path(kGoldenDir, c);
  if (std::getenv("INVDEC_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << first.out;
  }
  ASSERT_TRUE(std::filesystem::exists(path)) << path;
  EXPECT_EQ(first.out, read_file(path));

  const CliRun second = run_cli(INVDEC_CLI_PATH, c, kFixtureDir);
  EXPECT_EQ(second.out, first.out);
  EXPECT_EQ(second.exit_code, first.exit_code);
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden,
                         ::testing::ValuesIn(load_cases(kGoldenDir)), case_name);

TEST(GoldenErrors, CarryStructuredDocument) {
  for (const GoldenCase& c : load_cases(kGoldenDir)) {
    if (c.exit_code == 0) continue;
    const auto doc = nlohmann::json::parse(read_file(golden_path(kGoldenDir, c)));
    ASSERT_TRUE(doc.contains("error")) << c.name;
    EXPECT_TRUE(doc["error"]["code"].is_string()) << c.name;
    EXPECT_TRUE(doc["error"]["message"].is_string()) << c.name;
  }
}

TEST(GoldenManifest, HasEnoughFixtures) {
  EXPECT_GE(load_cases(kGoldenDir).size(), 12u);
}
