#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fisnose/data.hpp"
#include "fisnose/errors.hpp"
#include "fisnose/eval.hpp"
#include "fisnose/model_file.hpp"
#include "fisnose/pipeline.hpp"
#include "fisnose/text.hpp"

namespace fisnose::cli {
namespace {

struct GenerateOptions {
  std::string out;
  std::uint64_t seed = 1;
  std::size_t samples_per_object = 800;
  std::string objects = "papaya,orange,apple";
  double noise_std = SessionConfig{}.noise_std;
  double drift_rate = SessionConfig{}.drift_rate;
};

struct TrainOptions {
  std::string data;
  std::string model_out;
  std::string combinator = "sum";
  std::string order = "blocks";
  TrainConfig config;
};

struct EvaluateOptions {
  std::string data;
  std::string model;
  std::string report_out;
  EvalConfig config;
};

struct ClassifyOptions {
  std::string model;
  std::string input = "-";
  std::size_t window = 25;
  double epsilon = 0.1;
};

struct CompareArm {
  std::string combinator;
  TrainConfig config;
};

struct CompareOptions {
  std::string data;
  std::string report_out;
  CompareArm a{"sum", {}};
  CompareArm b{"product", {}};
  EvalConfig eval;
};

std::vector<std::string> split_labels(const std::string& list) {
  std::vector<std::string> labels;
  for (auto part : text::split(list, ',')) {
    const auto label = text::trim(part);
    if (!label.empty()) labels.emplace_back(label);
  }
  return labels;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_generate(const GenerateOptions& opt, std::ostream& out) {
  SessionConfig config;
  for (const auto& label : split_labels(opt.objects)) config.objects.push_back(builtin_profile(label));
  if (opt.samples_per_object < 1) throw std::invalid_argument("--samples-per-object must be >= 1");
  config.exposure_duration = opt.samples_per_object;
  config.noise_std = opt.noise_std;
  config.drift_rate = opt.drift_rate;
  config.seed = opt.seed;
  const Session session = generate_recording(config);
  write_csv(session, opt.out);
  out << "wrote " << session.rows.size() << " rows (" << config.objects.size() << " objects x "
      << config.exposure_duration << " samples plus rest phases) to " << opt.out << '\n';
  return 0;
}

int cmd_train(TrainOptions opt, std::ostream& out) {
  opt.config.combinator = parse_combinator(opt.combinator);
  opt.config.order = parse_training_order(opt.order);
  opt.config.validate();
  const LabeledDataset dataset = read_csv(opt.data);
  const TrainTestSplit split = split_train_test(dataset);
  const TrainResult result = train(split.train, opt.config);
  save_model({result.model, opt.config, dataset.channel_names(), dataset.labels()}, opt.model_out);

  out << "trained " << opt.config.rules << " rules (" << to_string(opt.config.combinator)
      << ") on " << split.train.sample_count() << " samples, " << opt.config.epochs
      << " epochs, eta " << text::format_real(opt.config.eta) << ", seed " << opt.config.seed
      << '\n';
  out << "epoch,training_rmse\n";
  for (std::size_t k = 0; k < result.rmse_trace.size(); ++k) {
    out << k << ',' << text::format_fixed(result.rmse_trace[k], 6) << '\n';
  }
  out << "model written to " << opt.model_out << '\n';
  return 0;
}

int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out) {
  opt.config.validate();
  const ModelFile model = load_model(opt.model);
  const LabeledDataset dataset = read_csv(opt.data, model.labels);
  if (dataset.channel_count() != model.model.inputs()) {
    throw std::invalid_argument("data has " + std::to_string(dataset.channel_count()) +
                                " channels, model expects " +
                                std::to_string(model.model.inputs()));
  }
  const TrainTestSplit split = split_train_test(dataset);
  const auto segments = segment_objects(split.test.objects(), opt.config.segments);
  const ConfusionMatrix matrix = confusion_matrix(model.model, segments, opt.config, model.labels);
  out << render_confusion(matrix);
  if (has_indistinguishable_objects(model.model, segments)) {
    out << "warning: degenerate data, some objects produce identical segment errors\n";
  }
  if (!opt.report_out.empty()) {
    write_confusion_csv(matrix, opt.report_out);
    out << "confusion matrix written to " << opt.report_out << '\n';
  }
  return 0;
}

int cmd_classify(const ClassifyOptions& opt, std::istream& in, std::ostream& out,
                 std::ostream& err) {
  if (opt.window < 1) throw std::invalid_argument("--window must be >= 1");
  if (!(opt.epsilon > 0.0)) throw std::invalid_argument("--epsilon must be positive");
  const ModelFile model = load_model(opt.model);
  if (model.model.inputs() != 5) {
    throw std::invalid_argument("classify reads five ADC channels, model has " +
                                std::to_string(model.model.inputs()) + " inputs");
  }

  std::ifstream file;
  std::istream* source = &in;
  if (opt.input != "-") {
    file.open(opt.input, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + opt.input + "'");
    source = &file;
  }

  const std::size_t outputs = model.model.outputs();
  std::vector<Eigen::VectorXd> targets;
  for (std::size_t o = 1; o <= outputs; ++o) targets.push_back(one_hot_target(o, outputs).values);

  std::size_t windows = 0;
  std::size_t samples = 0;
  Segment window;
  const auto classify = [&](bool partial) {
    std::size_t best = 0;
    double best_rmse = 0.0;
    for (std::size_t o = 0; o < outputs; ++o) {
      const double value = rmse(model.model, window, targets[o]);
      if (o == 0 || value < best_rmse) {
        best = o;
        best_rmse = value;
      }
    }
    ++windows;
    out << "window " << windows << " (" << window.size() << " samples" << (partial ? ", partial" : "")
        << "): " << model.labels[best] << " rmse " << text::format_fixed(best_rmse, 4)
        << (segment_passes(best_rmse, opt.epsilon) ? " pass" : " below-confidence") << '\n';
    window.clear();
  };

  AdcLineReader reader(*source);
  while (auto item = reader.next()) {
    if (const auto* error = std::get_if<StreamError>(&*item)) {
      err << "warning: line " << error->line_number << ": " << error->message << ": '"
          << error->line << "'\n";
      continue;
    }
    window.push_back(adc_to_volts(std::get<RawAdcReading>(*item)));
    ++samples;
    if (window.size() == opt.window) classify(false);
  }
  if (!window.empty()) classify(true);
  if (samples == 0) {
    err << "error: no samples\n";
    return 1;
  }
  return 0;
}

int cmd_compare(CompareOptions opt, std::ostream& out) {
  opt.a.config.combinator = parse_combinator(opt.a.combinator);
  opt.b.config.combinator = parse_combinator(opt.b.combinator);
  const LabeledDataset dataset = read_csv(opt.data);
  const ExperimentReport a = run_experiment(dataset, opt.a.config, opt.eval);
  const ExperimentReport b = run_experiment(dataset, opt.b.config, opt.eval);

  const auto row = [&out](const std::string& key, const std::string& left,
                          const std::string& right) {
    out << std::left << std::setw(16) << key << std::setw(14) << left << right << '\n';
  };
  row("", "config A", "config B");
  row("rules (m)", std::to_string(a.train_config.rules), std::to_string(b.train_config.rules));
  row("combinator", std::string(to_string(a.train_config.combinator)),
      std::string(to_string(b.train_config.combinator)));
  row("parameters", std::to_string(a.model.parameter_count()),
      std::to_string(b.model.parameter_count()));
  row("eta", text::format_real(a.train_config.eta), text::format_real(b.train_config.eta));
  row("epochs", std::to_string(a.train_config.epochs), std::to_string(b.train_config.epochs));
  row("seed", std::to_string(a.train_config.seed), std::to_string(b.train_config.seed));
  row("final rmse", text::format_fixed(a.rmse_trace.back(), 6),
      text::format_fixed(b.rmse_trace.back(), 6));
  row("efficiency", text::format_fixed(a.confusion.efficiency, 2),
      text::format_fixed(b.confusion.efficiency, 2));
  out << std::right;
  if (a.train_config.seed != b.train_config.seed) {
    out << "note: the configurations use different seeds (" << a.train_config.seed << " vs "
        << b.train_config.seed << ")\n";
  }
  out << "rule ratio A/B: " << text::format_real(static_cast<double>(a.train_config.rules) /
                                                   static_cast<double>(b.train_config.rules))
      << '\n';
  out << "confusion matrices identical: " << (a.confusion == b.confusion ? "yes" : "no") << "\n\n";
  out << "config A\n" << render_confusion(a.confusion) << "\nconfig B\n"
      << render_confusion(b.confusion);

  if (!opt.report_out.empty()) {
    std::istringstream left(report_csv(a));
    std::istringstream right(report_csv(b));
    std::ostringstream csv;
    std::string l;
    std::string r;
    std::getline(left, l);
    std::getline(right, r);
    csv << "key,a,b\n";
    while (std::getline(left, l) && std::getline(right, r)) {
      const auto comma_l = l.find(',');
      const auto comma_r = r.find(',');
      csv << l.substr(0, comma_l) << ',' << l.substr(comma_l + 1) << ',' << r.substr(comma_r + 1)
          << '\n';
    }
    csv << "parameters," << a.model.parameter_count() << ',' << b.model.parameter_count() << '\n';
    write_file(opt.report_out, csv.str());
    out << "\ncomparison written to " << opt.report_out << '\n';
  }
  return 0;
}

void add_arm_options(CLI::App* cmd, CompareArm& arm, const std::string& suffix) {
  cmd->add_option("--rules-" + suffix, arm.config.rules, "rule count")->capture_default_str();
  cmd->add_option("--combinator-" + suffix, arm.combinator, "sum | product")
      ->capture_default_str();
  cmd->add_option("--eta-" + suffix, arm.config.eta, "learning rate in (0,1)")
      ->capture_default_str();
  cmd->add_option("--epochs-" + suffix, arm.config.epochs, "training passes")
      ->capture_default_str();
  cmd->add_option("--seed-" + suffix, arm.config.seed, "initialization seed")
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Gaussian fuzzy inference classifier for five-channel gas-sensor data", "fisnose"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "write a synthetic acquisition session CSV");
  generate->add_option("--out", gen.out, "output CSV path")->required();
  generate->add_option("--seed", gen.seed, "noise seed")->capture_default_str();
  generate->add_option("--samples-per-object", gen.samples_per_object, "exposure samples per object")
      ->capture_default_str();
  generate->add_option("--objects", gen.objects, "comma-separated built-in profiles")
      ->capture_default_str();
  generate->add_option("--noise-std", gen.noise_std, "additive noise (volts)")->capture_default_str();
  generate->add_option("--drift-rate", gen.drift_rate, "exposure ramp rate per sample")
      ->capture_default_str();

  TrainOptions tr;
  auto* train_cmd = app.add_subcommand("train", "train a model on the first half of each object");
  train_cmd->add_option("--data", tr.data, "session CSV")->required();
  train_cmd->add_option("--rules", tr.config.rules, "rule count m")->capture_default_str();
  train_cmd->add_option("--eta", tr.config.eta, "learning rate in (0,1)")->capture_default_str();
  train_cmd->add_option("--epochs", tr.config.epochs, "training passes")->capture_default_str();
  train_cmd->add_option("--seed", tr.config.seed, "initialization seed")->capture_default_str();
  train_cmd->add_option("--combinator", tr.combinator, "sum | product")->capture_default_str();
  train_cmd->add_option("--order", tr.order, "blocks | shuffled")->capture_default_str();
  train_cmd->add_option("--model-out", tr.model_out, "model file to write")->required();

  EvaluateOptions ev;
  auto* evaluate = app.add_subcommand("evaluate", "examine a model on the second half of each object");
  evaluate->add_option("--data", ev.data, "session CSV")->required();
  evaluate->add_option("--model", ev.model, "model file")->required();
  evaluate->add_option("--epsilon", ev.config.epsilon, "segment RMSE threshold")
      ->capture_default_str();
  evaluate->add_option("--segments", ev.config.segments, "total examination segments")
      ->capture_default_str();
  evaluate->add_option("--report-out", ev.report_out, "confusion matrix CSV");

  ClassifyOptions cl;
  auto* classify = app.add_subcommand("classify", "label windows of a live ADC line stream");
  classify->add_option("--model", cl.model, "model file")->required();
  classify->add_option("--input", cl.input, "line source, '-' for standard input")
      ->capture_default_str();
  classify->add_option("--window", cl.window, "samples per window")->capture_default_str();
  classify->add_option("--epsilon", cl.epsilon, "confidence threshold")->capture_default_str();

  CompareOptions cmp;
  cmp.b.config.rules = 20;
  auto* compare = app.add_subcommand("compare", "run two configurations side by side");
  compare->add_option("--data", cmp.data, "session CSV")->required();
  add_arm_options(compare, cmp.a, "a");
  add_arm_options(compare, cmp.b, "b");
  compare->add_option("--epsilon", cmp.eval.epsilon, "segment RMSE threshold")
      ->capture_default_str();
  compare->add_option("--segments", cmp.eval.segments, "total examination segments")
      ->capture_default_str();
  compare->add_option("--report-out", cmp.report_out, "side-by-side CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (train_cmd->parsed()) return cmd_train(tr, out);
    if (evaluate->parsed()) return cmd_evaluate(ev, out);
    if (classify->parsed()) return cmd_classify(cl, in, out, err);
    if (compare->parsed()) return cmd_compare(cmp, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace fisnose::cli
