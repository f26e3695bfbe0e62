#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "fisnose/data.hpp"
#include "fisnose/model_file.hpp"
#include "test_support.hpp"

namespace fisnose {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "fisnose");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  return (testing::scratch_dir("cli_test") / name).string();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const std::string kData = testing::fixture("session_seed1.csv").string();
const std::string kModel = testing::fixture("model_m10_seed1.fis").string();

/// ADC lines for the test half of one object of the fixture.
std::string adc_stream(std::size_t object, std::size_t count) {
  const auto split = split_train_test(read_csv(kData));
  std::string text;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& z = split.test.object(object)[k];
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      text += (i ? "," : "") + std::to_string(volts_to_adc(z(i)));
    }
    text += '\n';
  }
  return text;
}

TEST(CliGenerate, DefaultsReproduceFixture) {
  const auto path = scratch("generated.csv");
  const auto result = run({"generate", "--out", path});
  ASSERT_EQ(result.code, 0) << result.err;
  std::ifstream a(path), b(kData);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(CliGenerate, SmallSessionAndCustomObjects) {
  const auto path = scratch("tiny.csv");
  const auto result =
      run({"generate", "--out", path, "--samples-per-object", "2", "--objects", "onion,banana"});
  ASSERT_EQ(result.code, 0) << result.err;
  const auto data = read_csv(path);
  EXPECT_EQ(data.labels(), (std::vector<std::string>{"onion", "banana"}));
  EXPECT_EQ(data.sample_count(), 4u);
}

TEST(CliGenerate, MissingOutIsAnError) {
  EXPECT_NE(run({"generate"}).code, 0);
  const auto unknown = run({"generate", "--out", scratch("x.csv"), "--objects", "durian"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_TRUE(contains(unknown.err, "durian"));
}

TEST(CliTrain, RejectsLearningRateOutsideUnitInterval) {
  const auto result = run({"train", "--data", kData, "--eta", "1.5", "--model-out", scratch("m.fis")});
  EXPECT_EQ(result.code, 1);
  EXPECT_TRUE(contains(result.err, "learning rate"));
}

TEST(CliTrain, DefaultsReproduceShippedModel) {
  const auto path = scratch("default.fis");
  const auto result = run({"train", "--data", kData, "--model-out", path});
  ASSERT_EQ(result.code, 0) << result.err;
  EXPECT_TRUE(contains(result.out, "epoch,training_rmse\n0,"));
  EXPECT_TRUE(load_model(path) == load_model(kModel));
}

TEST(CliTrain, BaselineConfiguration) {
  const auto path = scratch("baseline.fis");
  const auto result = run({"train", "--data", kData, "--rules", "20", "--combinator", "product",
                           "--model-out", path});
  ASSERT_EQ(result.code, 0) << result.err;
  const ModelFile file = load_model(path);
  EXPECT_EQ(file.model.rules(), 20);
  EXPECT_EQ(file.model.combinator(), Combinator::ProductOfGaussians);
}

TEST(CliTrain, BadDataReportsLine) {
  const auto path = scratch("bad.csv");
  std::ofstream(path) << "mq135,tgs2610,mq2,tgs2611,mq3,label\n0,0,0,0,zz,papaya\n";
  const auto result = run({"train", "--data", path, "--model-out", scratch("bad.fis")});
  EXPECT_EQ(result.code, 1);
  EXPECT_TRUE(contains(result.err, "line 2"));
}

TEST(CliEvaluate, ShippedModelReachesFullEfficiency) {
  const auto report = scratch("confusion.csv");
  const auto result = run({"evaluate", "--data", kData, "--model", kModel, "--report-out", report});
  ASSERT_EQ(result.code, 0) << result.err;
  EXPECT_TRUE(contains(result.out, "100.00"));
  std::ifstream in(report);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(),
            ",papaya,orange,apple\n"
            "papaya,31.25,0.00,0.00\n"
            "orange,0.00,31.25,0.00\n"
            "apple,0.00,0.00,37.50\n"
            "efficiency,100.00\n");
}

TEST(CliClassify, RecognizesOrangeStream) {
  const auto result = run({"classify", "--model", kModel}, adc_stream(1, 60));
  ASSERT_EQ(result.code, 0) << result.err;
  EXPECT_TRUE(contains(result.out, "window 1 (25 samples): orange"));
  EXPECT_TRUE(contains(result.out, "window 3 (10 samples, partial): orange"));
  EXPECT_FALSE(contains(result.out, "papaya"));
}

TEST(CliClassify, WarnsOnMalformedLineAndContinues) {
  const auto result = run({"classify", "--model", kModel, "--window", "10"},
                          adc_stream(2, 5) + "12,oops,3\n" + adc_stream(2, 5));
  ASSERT_EQ(result.code, 0) << result.err;
  EXPECT_TRUE(contains(result.err, "warning: line 6"));
  EXPECT_TRUE(contains(result.err, "'12,oops,3'"));
  EXPECT_TRUE(contains(result.out, "window 1 (10 samples): apple"));
}

TEST(CliClassify, EmptyInputIsAnError) {
  const auto result = run({"classify", "--model", kModel}, "");
  EXPECT_EQ(result.code, 1);
  EXPECT_TRUE(contains(result.err, "no samples"));
}

TEST(CliCompare, DefaultArmsSideBySide) {
  const auto report = scratch("compare.csv");
  const auto result = run({"compare", "--data", kData, "--report-out", report});
  ASSERT_EQ(result.code, 0) << result.err;
  EXPECT_TRUE(contains(result.out, "rule ratio A/B: 0.5"));
  EXPECT_TRUE(contains(result.out, "130"));
  EXPECT_TRUE(contains(result.out, "260"));
  EXPECT_FALSE(contains(result.out, "different seeds"));
  std::ifstream in(report);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_TRUE(text.str().starts_with("key,a,b\n"));
  EXPECT_TRUE(contains(text.str(), "efficiency,100.00,100.00\n"));
  EXPECT_TRUE(contains(text.str(), "parameters,130,260\n"));
}

TEST(CliCompare, IdenticalArmsAndSeedNote) {
  const auto same = run({"compare", "--data", kData, "--rules-b", "10", "--combinator-b", "sum"});
  ASSERT_EQ(same.code, 0) << same.err;
  EXPECT_TRUE(contains(same.out, "confusion matrices identical: yes"));
  const auto seeds = run({"compare", "--data", kData, "--seed-b", "7"});
  ASSERT_EQ(seeds.code, 0) << seeds.err;
  EXPECT_TRUE(contains(seeds.out, "different seeds (1 vs 7)"));
}

TEST(Cli, NoSubcommandShowsUsageAndFails) {
  const auto result = run({});
  EXPECT_NE(result.code, 0);
}

}  // namespace
}  // namespace fisnose
