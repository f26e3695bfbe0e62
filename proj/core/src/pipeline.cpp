#include "fisnose/pipeline.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fisnose/random.hpp"
#include "fisnose/text.hpp"

namespace fisnose {

TargetVector one_hot_target(std::size_t object_index, std::size_t outputs) {
  if (object_index < 1 || object_index > outputs) {
    throw std::invalid_argument("object index " + std::to_string(object_index) +
                                " outside 1.." + std::to_string(outputs));
  }
  TargetVector target{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(outputs))};
  target.values(static_cast<Eigen::Index>(object_index - 1)) = 1.0;
  return target;
}

TrainTestSplit split_train_test(const LabeledDataset& dataset) {
  std::vector<std::vector<SensorSample>> train;
  std::vector<std::vector<SensorSample>> test;
  for (std::size_t i = 0; i < dataset.object_count(); ++i) {
    const auto& samples = dataset.object(i);
    if (samples.size() < 2) {
      throw std::invalid_argument("object '" + dataset.labels()[i] +
                                  "' needs at least 2 samples to split, has " +
                                  std::to_string(samples.size()));
    }
    const auto middle = samples.begin() + static_cast<std::ptrdiff_t>((samples.size() + 1) / 2);
    train.emplace_back(samples.begin(), middle);
    test.emplace_back(middle, samples.end());
  }
  return {LabeledDataset(dataset.channel_names(), dataset.labels(), std::move(train)),
          LabeledDataset(dataset.channel_names(), dataset.labels(), std::move(test))};
}

std::string_view to_string(TrainingOrder order) {
  return order == TrainingOrder::ObjectBlocks ? "blocks" : "shuffled";
}

TrainingOrder parse_training_order(std::string_view name) {
  if (name == "blocks") return TrainingOrder::ObjectBlocks;
  if (name == "shuffled") return TrainingOrder::Shuffled;
  throw std::invalid_argument("unknown training order '" + std::string(name) +
                              "' (expected 'blocks' or 'shuffled')");
}

void TrainConfig::validate() const {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("learning rate must lie in (0, 1), got " +
                                text::format_real(eta));
  }
  if (epochs < 1) throw std::invalid_argument("epoch count must be at least 1");
  if (rules < 1) throw std::invalid_argument("rule count must be at least 1");
}

double dataset_rmse(const FisModel& model, const LabeledDataset& dataset) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < dataset.object_count(); ++i) {
    const auto target = one_hot_target(i + 1, dataset.object_count());
    for (const auto& sample : dataset.object(i)) {
      sum += output_errors(infer(model, sample), target.values).errors.squaredNorm();
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("dataset has no samples");
  return std::sqrt(sum / static_cast<double>(count));
}

TrainResult train(const LabeledDataset& dataset, const TrainConfig& config) {
  config.validate();
  if (dataset.object_count() == 0 || dataset.sample_count() == 0) {
    throw std::invalid_argument("training dataset has no samples");
  }
  const std::size_t objects = dataset.object_count();

  // Flattened (object, sample) visiting order for one epoch in block order.
  std::vector<std::pair<std::size_t, std::size_t>> order;
  order.reserve(dataset.sample_count());
  for (std::size_t i = 0; i < objects; ++i)
    for (std::size_t k = 0; k < dataset.object(i).size(); ++k) order.emplace_back(i, k);

  std::vector<Eigen::VectorXd> targets;
  for (std::size_t i = 0; i < objects; ++i) targets.push_back(one_hot_target(i + 1, objects).values);

  FisModel model = init_model({dataset.channel_count(), config.rules, objects},
                              config.combinator, config.seed);
  TrainResult result{model, {dataset_rmse(model, dataset)}};

  // Separate stream so that shuffling never perturbs initialization.
  Rng shuffle_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    if (config.order == TrainingOrder::Shuffled) {
      for (std::size_t k = order.size(); k > 1; --k) {
        std::swap(order[k - 1], order[shuffle_rng.below(k)]);
      }
    }
    for (const auto& [object, index] : order) {
      model = train_step(model, dataset.object(object)[index], targets[object], config.eta);
    }
    result.rmse_trace.push_back(dataset_rmse(model, dataset));
  }
  result.model = std::move(model);
  return result;
}

bool has_indistinguishable_objects(const FisModel& model,
                                   std::span<const std::vector<Segment>> per_object_segments) {
  const auto table = segment_rmse_table(model, per_object_segments);
  for (std::size_t a = 0; a < table.size(); ++a) {
    for (std::size_t b = a + 1; b < table.size(); ++b) {
      for (const auto& row_a : table[a]) {
        for (const auto& row_b : table[b]) {
          if ((row_a - row_b).cwiseAbs().maxCoeff() <= 1e-12) return true;
        }
      }
    }
  }
  return false;
}

ExperimentReport run_experiment(const LabeledDataset& dataset, const TrainConfig& train_config,
                                const EvalConfig& eval_config) {
  train_config.validate();
  eval_config.validate();
  const TrainTestSplit split = split_train_test(dataset);
  TrainResult trained = train(split.train, train_config);
  const auto segments = segment_objects(split.test.objects(), eval_config.segments);
  ConfusionMatrix confusion =
      confusion_matrix(trained.model, segments, eval_config, dataset.labels());
  const bool degenerate = has_indistinguishable_objects(trained.model, segments);
  return {dataset.labels(),
          train_config,
          eval_config,
          std::move(trained.model),
          std::move(trained.rmse_trace),
          std::move(confusion),
          degenerate};
}

std::string report_text(const ExperimentReport& report) {
  const auto& tc = report.train_config;
  std::ostringstream out;
  out << "rules (m):       " << tc.rules << '\n'
      << "combinator:      " << to_string(tc.combinator) << '\n'
      << "parameters:      " << report.model.parameter_count() << '\n'
      << "learning rate:   " << text::format_real(tc.eta) << '\n'
      << "epochs:          " << tc.epochs << '\n'
      << "training order:  " << to_string(tc.order) << '\n'
      << "seed:            " << tc.seed << '\n'
      << "epsilon:         " << text::format_real(report.eval_config.epsilon) << '\n'
      << "segments:        " << report.eval_config.segments << '\n'
      << "training rmse:   ";
  for (std::size_t k = 0; k < report.rmse_trace.size(); ++k) {
    out << (k ? " " : "") << text::format_fixed(report.rmse_trace[k], 4);
  }
  out << '\n' << render_confusion(report.confusion);
  if (report.degenerate) {
    out << "warning: degenerate data, some objects produce identical segment errors "
           "and cannot be separated\n";
  }
  return out.str();
}

std::string report_csv(const ExperimentReport& report) {
  const auto& tc = report.train_config;
  std::ostringstream out;
  out << "key,value\n"
      << "m," << tc.rules << '\n'
      << "combinator," << to_string(tc.combinator) << '\n'
      << "eta," << text::format_real(tc.eta) << '\n'
      << "epsilon," << text::format_real(report.eval_config.epsilon) << '\n'
      << "epochs," << tc.epochs << '\n'
      << "seed," << tc.seed << '\n'
      << "segments," << report.eval_config.segments << '\n'
      << "efficiency," << text::format_fixed(report.confusion.efficiency, 2) << '\n'
      << "degenerate," << (report.degenerate ? "true" : "false") << '\n';
  const auto& labels = report.confusion.labels;
  for (std::size_t o = 0; o < labels.size(); ++o) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      out << "pec." << labels[o] << '.' << labels[i] << ','
          << text::format_fixed(report.confusion.cells(static_cast<Eigen::Index>(o),
                                                       static_cast<Eigen::Index>(i)),
                                2)
          << '\n';
    }
  }
  return out.str();
}

}  // namespace fisnose
