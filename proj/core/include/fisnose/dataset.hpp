#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fisnose/fis.hpp"

namespace fisnose {

/// Column names of the five-sensor array in input order z_1..z_5.
inline constexpr std::array<std::string_view, 5> kSensorChannels = {"mq135", "tgs2610", "mq2",
                                                                    "tgs2611", "mq3"};

std::vector<std::string> default_channel_names();

/// Time-ordered samples grouped per object. Object i (0-based) carries
/// labels()[i] and is the i-th one-hot output of a model trained on it.
class LabeledDataset {
 public:
  LabeledDataset() = default;

  /// Throws std::invalid_argument on empty/duplicate labels or a sample whose
  /// channel count differs from channel_names.size().
  LabeledDataset(std::vector<std::string> channel_names, std::vector<std::string> labels,
                 std::vector<std::vector<SensorSample>> objects);

  const std::vector<std::string>& channel_names() const { return channel_names_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<SensorSample>>& objects() const { return objects_; }
  const std::vector<SensorSample>& object(std::size_t index) const { return objects_.at(index); }

  std::size_t channel_count() const { return channel_names_.size(); }
  std::size_t object_count() const { return labels_.size(); }
  std::size_t sample_count() const;

  /// Index of `label`, or object_count() when absent.
  std::size_t find(std::string_view label) const;

  bool operator==(const LabeledDataset& other) const;

 private:
  std::vector<std::string> channel_names_;
  std::vector<std::string> labels_;
  std::vector<std::vector<SensorSample>> objects_;
};

}  // namespace fisnose
