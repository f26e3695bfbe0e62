#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fisnose/data.hpp"
#include "fisnose/errors.hpp"
#include "test_support.hpp"

namespace fisnose {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

LabeledDataset parse(const std::string& text,
                     const std::optional<std::vector<std::string>>& labels = {}) {
  std::istringstream in(text);
  return parse_csv(in, labels);
}

// --- ADC --------------------------------------------------------------------

TEST(AdcToVolts, ScaleExamples) {
  const auto volts = adc_to_volts({{0, 1, 1023, 512, 100}});
  EXPECT_EQ(volts(0), 0.0);
  EXPECT_EQ(volts(1), 0.0049);
  EXPECT_NEAR(volts(2), 5.0127, 1e-12);
  EXPECT_NEAR(volts(3), 2.5088, 1e-12);
}

TEST(AdcToVolts, OutOfRangeRejected) {
  EXPECT_THROW(adc_to_volts({{1024, 0, 0, 0, 0}}), std::invalid_argument);
  EXPECT_THROW(adc_to_volts({{0, 0, 0, 0, -1}}), std::invalid_argument);
}

TEST(AdcToVolts, LinearAndMonotone) {
  for (int a = 0; a <= kAdcMax; a += 7) {
    for (int b = 0; a + b <= kAdcMax; b += 13) {
      const double fa = adc_to_volts({{a, 0, 0, 0, 0}})(0);
      const double fb = adc_to_volts({{b, 0, 0, 0, 0}})(0);
      const double fab = adc_to_volts({{a + b, 0, 0, 0, 0}})(0);
      ASSERT_NEAR(fa + fb, fab, 1e-12);
      if (b > 0) {
        ASSERT_LT(fa, fab);
      }
    }
  }
}

TEST(VoltsToAdc, NearestCountClamped) {
  EXPECT_EQ(volts_to_adc(0.0049 * 300), 300);
  EXPECT_EQ(volts_to_adc(-1.0), 0);
  EXPECT_EQ(volts_to_adc(9.0), 1023);
}

// --- generator --------------------------------------------------------------

TEST(GenerateSession, DefaultFixtureShape) {
  const LabeledDataset data = generate_session(SessionConfig::defaults());
  EXPECT_EQ(data.labels(), (std::vector<std::string>{"papaya", "orange", "apple"}));
  EXPECT_EQ(data.channel_names(), default_channel_names());
  for (const auto& samples : data.objects()) {
    EXPECT_EQ(samples.size(), 800u);
    for (const auto& z : samples) {
      ASSERT_GE(z.minCoeff(), 0.0);
      ASSERT_LE(z.maxCoeff(), 5.0);
    }
  }
}

TEST(GenerateSession, NoiselessInfiniteDriftIsConstantPlateau) {
  SessionConfig config = SessionConfig::defaults();
  config.noise_std = 0.0;
  config.drift_rate = std::numeric_limits<double>::infinity();
  const Session session = generate_recording(config);
  const LabeledDataset data = session.dataset();
  for (std::size_t o = 0; o < 3; ++o) {
    for (const auto& z : data.object(o)) {
      for (std::size_t i = 0; i < 5; ++i) {
        ASSERT_EQ(z(static_cast<Eigen::Index>(i)), config.baseline[i] + config.objects[o].response[i]);
      }
    }
  }
  for (const auto& row : session.rows) {
    if (row.label != kRestLabel) continue;
    for (std::size_t i = 0; i < 5; ++i) ASSERT_EQ(row.sample(static_cast<Eigen::Index>(i)), config.baseline[i]);
  }
}

TEST(GenerateSession, RampRisesTowardPlateau) {
  SessionConfig config = SessionConfig::defaults();
  config.noise_std = 0.0;
  config.drift_rate = 0.05;
  const LabeledDataset data = generate_session(config);
  const auto& papaya = data.object(0);
  for (std::size_t k = 1; k < papaya.size(); ++k) ASSERT_GE(papaya[k](0), papaya[k - 1](0));
}

TEST(GenerateSession, PhaseLayout) {
  SessionConfig config = SessionConfig::defaults();
  config.rest_duration = 7;
  config.inter_rest_duration = 3;
  config.exposure_duration = 4;
  const Session session = generate_recording(config);
  std::string pattern;
  for (const auto& row : session.rows) pattern += row.label == kRestLabel ? 'r' : row.label[0];
  EXPECT_EQ(pattern, "rrrrrrrppppr" "rroooorrraaaa");
}

TEST(GenerateSession, SameSeedSameData) {
  const auto a = generate_session(SessionConfig::defaults());
  const auto b = generate_session(SessionConfig::defaults());
  EXPECT_TRUE(a == b);
  SessionConfig other = SessionConfig::defaults();
  other.seed = 2;
  EXPECT_FALSE(generate_session(other) == a);
}

TEST(GenerateSession, MatchesShippedFixtureByteForByte) {
  EXPECT_EQ(to_csv(generate_recording(SessionConfig::defaults())),
            slurp(testing::fixture("session_seed1.csv")));
}

TEST(GenerateSession, ConfigValidation) {
  SessionConfig config = SessionConfig::defaults();
  config.noise_std = -1;
  EXPECT_THROW(generate_session(config), std::invalid_argument);
  config = SessionConfig::defaults();
  config.objects.clear();
  EXPECT_THROW(generate_session(config), std::invalid_argument);
  config = SessionConfig::defaults();
  config.objects[1].label = "papaya";
  EXPECT_THROW(generate_session(config), std::invalid_argument);
  config = SessionConfig::defaults();
  config.objects[0].label = "rest";
  EXPECT_THROW(generate_session(config), std::invalid_argument);
  EXPECT_THROW(builtin_profile("durian"), std::invalid_argument);
}

// --- CSV --------------------------------------------------------------------

TEST(Csv, EmptyFileIsMissingHeader) {
  try {
    parse("");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("missing header"), std::string::npos);
  }
}

TEST(Csv, HeaderIsBitExact) {
  EXPECT_EQ(csv_header(default_channel_names()), "mq135,tgs2610,mq2,tgs2611,mq3,label");
  EXPECT_TRUE(to_csv(generate_session(SessionConfig::defaults()))
                  .starts_with("mq135,tgs2610,mq2,tgs2611,mq3,label\n"));
}

TEST(Csv, MinimalFileOneRowPerObject) {
  const auto data = parse(
      "mq135,tgs2610,mq2,tgs2611,mq3,label\n"
      "0.1,0.2,0.3,0.4,0.5,papaya\n"
      "0.1,0.1,0.1,0.1,0.1,rest\n"
      "1,2,3,4,5,orange\n"
      "0.5,0.5,0.5,0.5,0.5,apple\n");
  EXPECT_EQ(data.object_count(), 3u);
  for (const auto& samples : data.objects()) EXPECT_EQ(samples.size(), 1u);
  EXPECT_EQ(data.object(1)[0](4), 5.0);
}

TEST(Csv, ErrorsCarryLineNumbers) {
  const auto expect_error = [](const std::string& text, std::size_t line, const std::string& what,
                               const std::optional<std::vector<std::string>>& labels = {}) {
    try {
      parse(text, labels);
      FAIL() << "expected ParseError for " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
      EXPECT_NE(std::string(e.what()).find(what), std::string::npos) << e.what();
    }
  };
  const std::string header = "mq135,tgs2610,mq2,tgs2611,mq3,label\n";
  expect_error(header + "0,0,0,0,0,a\n0,0,0,0,a\n", 3, "expected 6 columns");
  expect_error(header + "0,0,x,0,0,a\n", 2, "non-numeric value 'x'");
  expect_error(header + "0,0,0,0,nan,a\n", 2, "non-numeric");
  expect_error(header + "0,0,0,0,0,a\n0,0,0,0,0,b\n", 3, "unknown label 'b'",
               std::vector<std::string>{"a"});
  expect_error(header + "0,0,0,0,0,\n", 2, "empty label");
  expect_error("mq135,tgs2610\n", 1, "header");
}

TEST(Csv, ExpectedLabelsFixObjectOrder) {
  const auto data = parse("a,label\n1,y\n2,x\n3,y\n", std::vector<std::string>{"x", "y"});
  EXPECT_EQ(data.labels(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(data.object(1).size(), 2u);
}

TEST(Csv, RoundTripOnShippedFixture) {
  const auto path = testing::fixture("session_seed1.csv");
  const LabeledDataset once = read_csv(path);
  const auto out = testing::scratch_dir("data_test") / "roundtrip.csv";
  write_csv(once, out);
  EXPECT_TRUE(read_csv(out) == once);
  EXPECT_EQ(to_csv(read_csv(out)), to_csv(once));
}

TEST(Csv, RoundTripIsExactForArbitraryDoubles) {
  testing::RandomModels gen(17);
  std::vector<std::vector<SensorSample>> objects(2);
  for (auto& samples : objects)
    for (int k = 0; k < 200; ++k) samples.push_back(gen.vector(5, -1e3, 1e3) * gen.uniform(1e-9, 1.0));
  const LabeledDataset data(default_channel_names(), {"first", "second object"}, objects);
  EXPECT_TRUE(parse(to_csv(data)) == data);
}

TEST(Csv, MissingFileIsParseError) {
  EXPECT_THROW(read_csv("/nonexistent/fisnose.csv"), ParseError);
}

// --- live stream ------------------------------------------------------------

TEST(AdcStream, ParsesAndSkipsMalformedLines) {
  std::istringstream in("512,512,512,512,512\n512,512\n\n1024,0,0,0,0\r\n1,2,3,4,x\n0,1,2,3,4\r\n");
  AdcLineReader reader(in);
  std::vector<StreamItem> items;
  while (auto item = reader.next()) items.push_back(*item);
  ASSERT_EQ(items.size(), 5u);
  EXPECT_EQ(std::get<RawAdcReading>(items[0]), (RawAdcReading{{512, 512, 512, 512, 512}}));
  const auto& arity = std::get<StreamError>(items[1]);
  EXPECT_EQ(arity.line_number, 2u);
  EXPECT_EQ(arity.line, "512,512");
  const auto& range = std::get<StreamError>(items[2]);
  EXPECT_EQ(range.line_number, 4u);
  EXPECT_EQ(range.line, "1024,0,0,0,0");
  EXPECT_NE(range.message.find("range"), std::string::npos);
  EXPECT_TRUE(std::holds_alternative<StreamError>(items[3]));
  EXPECT_EQ(std::get<RawAdcReading>(items[4]), (RawAdcReading{{0, 1, 2, 3, 4}}));
}

TEST(AdcStream, EmptyInput) {
  std::istringstream in("");
  AdcLineReader reader(in);
  EXPECT_FALSE(reader.next().has_value());
}

}  // namespace
}  // namespace fisnose
