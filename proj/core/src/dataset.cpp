#include "fisnose/dataset.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace fisnose {

std::vector<std::string> default_channel_names() {
  return {kSensorChannels.begin(), kSensorChannels.end()};
}

LabeledDataset::LabeledDataset(std::vector<std::string> channel_names,
                               std::vector<std::string> labels,
                               std::vector<std::vector<SensorSample>> objects)
    : channel_names_(std::move(channel_names)),
      labels_(std::move(labels)),
      objects_(std::move(objects)) {
  if (channel_names_.empty()) throw std::invalid_argument("dataset needs at least one channel");
  if (labels_.size() != objects_.size()) {
    throw std::invalid_argument("dataset label count differs from object count");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw std::invalid_argument("dataset labels must be non-empty");
    if (std::find(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(i),
                  labels_[i]) != labels_.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw std::invalid_argument("duplicate dataset label '" + labels_[i] + "'");
    }
    for (const auto& sample : objects_[i]) {
      if (static_cast<std::size_t>(sample.size()) != channel_names_.size()) {
        throw std::invalid_argument("sample of object '" + labels_[i] + "' has " +
                                    std::to_string(sample.size()) + " channels, expected " +
                                    std::to_string(channel_names_.size()));
      }
    }
  }
}

std::size_t LabeledDataset::sample_count() const {
  std::size_t total = 0;
  for (const auto& samples : objects_) total += samples.size();
  return total;
}

std::size_t LabeledDataset::find(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  return static_cast<std::size_t>(it - labels_.begin());
}

bool LabeledDataset::operator==(const LabeledDataset& other) const {
  if (channel_names_ != other.channel_names_ || labels_ != other.labels_) return false;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const auto& a = objects_[i];
    const auto& b = other.objects_[i];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k].size() != b[k].size() || !(a[k].array() == b[k].array()).all()) return false;
    }
  }
  return true;
}

}  // namespace fisnose
