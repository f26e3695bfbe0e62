#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fisnose/dataset.hpp"
#include "fisnose/eval.hpp"
#include "fisnose/fis.hpp"

namespace fisnose {

/// One-hot output vector identifying the object being learned.
struct TargetVector {
  Eigen::VectorXd values;
};

/// object_index is 1-based, 1 <= object_index <= outputs.
TargetVector one_hot_target(std::size_t object_index, std::size_t outputs);

struct TrainTestSplit {
  LabeledDataset train;
  LabeledDataset test;
};

/// Per object, the first ceil(size/2) samples train and the rest test.
TrainTestSplit split_train_test(const LabeledDataset& dataset);

enum class TrainingOrder {
  ObjectBlocks,  ///< object 1's samples, then object 2's, ... each epoch
  Shuffled,      ///< one seeded permutation of all training samples per epoch
};

std::string_view to_string(TrainingOrder order);
TrainingOrder parse_training_order(std::string_view name);

struct TrainConfig {
  double eta = 0.1;
  std::size_t epochs = 10;
  std::uint64_t seed = 1;
  std::size_t rules = 10;
  Combinator combinator = Combinator::ExpOfNegatedSum;
  TrainingOrder order = TrainingOrder::ObjectBlocks;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct TrainResult {
  FisModel model;
  /// Training-set RMSE against each sample's own target; entry 0 is the
  /// freshly initialized model, entry k is after epoch k.
  std::vector<double> rmse_trace;
};

/// RMSE over every sample of `dataset` against its own object's one-hot target.
double dataset_rmse(const FisModel& model, const LabeledDataset& dataset);

/// Initializes a model from config.seed and runs config.epochs passes of
/// train_step over `dataset` (already the training half).
TrainResult train(const LabeledDataset& dataset, const TrainConfig& config);

struct ExperimentReport {
  std::vector<std::string> labels;
  TrainConfig train_config;
  EvalConfig eval_config;
  FisModel model;
  std::vector<double> rmse_trace;
  ConfusionMatrix confusion;
  /// Some segment of one object produced exactly the same rmse against
  /// every target as a segment of another object, so no model can separate them.
  bool degenerate = false;
};

/// Objects whose test segments cannot be told apart: returns true when two
/// segments of different objects have identical rmse rows.
bool has_indistinguishable_objects(const FisModel& model,
                                   std::span<const std::vector<Segment>> per_object_segments);

/// split -> train on the first halves -> segment the second halves -> confusion matrix.
ExperimentReport run_experiment(const LabeledDataset& dataset, const TrainConfig& train_config,
                                const EvalConfig& eval_config);

/// Plain-text summary for terminals and logs.
std::string report_text(const ExperimentReport& report);

/// `key,value` lines: m, eta, epsilon, epochs, seed, efficiency, then one
/// `pec.<output>.<input>` line per cell.
std::string report_csv(const ExperimentReport& report);

}  // namespace fisnose
