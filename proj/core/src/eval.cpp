#include "fisnose/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fisnose/text.hpp"

namespace fisnose {
namespace {

Eigen::VectorXd unit_target(std::size_t index, std::size_t outputs) {
  Eigen::VectorXd target = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(outputs));
  target(static_cast<Eigen::Index>(index)) = 1.0;
  return target;
}

double percentage(std::size_t count, std::size_t total) {
  return 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

void EvalConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (segments == 0) throw std::invalid_argument("segment count must be at least 1");
}

double rmse(const FisModel& model, std::span<const SensorSample> samples,
            const Eigen::VectorXd& target) {
  if (samples.empty()) throw std::invalid_argument("rmse: empty segment");
  double sum = 0.0;
  for (const auto& sample : samples) {
    sum += output_errors(infer(model, sample), target).errors.squaredNorm();
  }
  return std::sqrt(sum / static_cast<double>(samples.size()));
}

bool segment_passes(double rmse_value, double epsilon) { return rmse_value < epsilon; }

ExamTally examine(const FisModel& model, std::span<const Segment> segments,
                  const Eigen::VectorXd& target, double epsilon, std::size_t total_segments) {
  if (segments.empty()) throw std::invalid_argument("examine: no segments");
  if (total_segments < segments.size()) {
    throw std::invalid_argument("examine: total segment count is smaller than the segments given");
  }
  ExamTally tally;
  for (const auto& segment : segments) {
    if (segment.empty()) throw std::invalid_argument("examine: empty segment");
    if (segment_passes(rmse(model, segment, target), epsilon)) ++tally.ec;
  }
  tally.pec = percentage(tally.ec, total_segments);
  return tally;
}

std::vector<std::size_t> segment_allocation(std::size_t objects, std::size_t total_segments) {
  if (objects == 0) throw std::invalid_argument("segment allocation needs at least one object");
  if (total_segments < objects) {
    throw std::invalid_argument("cannot split " + std::to_string(total_segments) +
                                " segments over " + std::to_string(objects) + " objects");
  }
  std::vector<std::size_t> counts(objects, total_segments / objects);
  counts.back() += total_segments % objects;
  return counts;
}

std::vector<std::vector<Segment>> segment_objects(
    std::span<const std::vector<SensorSample>> per_object, std::size_t total_segments) {
  const auto counts = segment_allocation(per_object.size(), total_segments);
  std::vector<std::vector<Segment>> out(per_object.size());
  for (std::size_t i = 0; i < per_object.size(); ++i) {
    const auto& samples = per_object[i];
    const std::size_t length = samples.size() / counts[i];
    if (length == 0) {
      throw std::invalid_argument("object " + std::to_string(i + 1) + " has " +
                                  std::to_string(samples.size()) + " test samples, fewer than its " +
                                  std::to_string(counts[i]) + " segments");
    }
    out[i].reserve(counts[i]);
    for (std::size_t s = 0; s < counts[i]; ++s) {
      const auto first = samples.begin() + static_cast<std::ptrdiff_t>(s * length);
      out[i].emplace_back(first, first + static_cast<std::ptrdiff_t>(length));
    }
  }
  return out;
}

bool ConfusionMatrix::operator==(const ConfusionMatrix& other) const {
  return labels == other.labels && segments == other.segments &&
         efficiency == other.efficiency && cells.rows() == other.cells.rows() &&
         cells.cols() == other.cells.cols() && (cells.array() == other.cells.array()).all();
}

ConfusionMatrix confusion_matrix(const FisModel& model,
                                 std::span<const std::vector<Segment>> per_object_segments,
                                 const EvalConfig& config, std::vector<std::string> labels) {
  config.validate();
  const std::size_t objects = model.outputs();
  if (per_object_segments.size() != objects) {
    throw std::invalid_argument("confusion matrix: " + std::to_string(per_object_segments.size()) +
                                " objects given, model has " + std::to_string(objects) +
                                " outputs");
  }
  if (labels.size() != objects) {
    throw std::invalid_argument("confusion matrix: label count differs from object count");
  }
  std::size_t given = 0;
  for (const auto& segments : per_object_segments) given += segments.size();
  if (given != config.segments) {
    throw std::invalid_argument("confusion matrix: " + std::to_string(given) +
                                " segments given, examination expects " +
                                std::to_string(config.segments));
  }

  const auto n = static_cast<Eigen::Index>(objects);
  ConfusionMatrix out{std::move(labels), Eigen::MatrixXd::Zero(n, n), 0.0, config.segments};
  for (std::size_t input = 0; input < objects; ++input) {
    for (std::size_t target = 0; target < objects; ++target) {
      const ExamTally tally = examine(model, per_object_segments[input],
                                      unit_target(target, objects), config.epsilon,
                                      config.segments);
      out.cells(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(input)) = tally.pec;
    }
  }
  out.efficiency = out.cells.diagonal().sum();
  return out;
}

std::vector<std::vector<Eigen::VectorXd>> segment_rmse_table(
    const FisModel& model, std::span<const std::vector<Segment>> per_object_segments) {
  const std::size_t objects = model.outputs();
  std::vector<std::vector<Eigen::VectorXd>> table(per_object_segments.size());
  for (std::size_t i = 0; i < per_object_segments.size(); ++i) {
    for (const auto& segment : per_object_segments[i]) {
      Eigen::VectorXd row(static_cast<Eigen::Index>(objects));
      for (std::size_t o = 0; o < objects; ++o) {
        row(static_cast<Eigen::Index>(o)) = rmse(model, segment, unit_target(o, objects));
      }
      table[i].push_back(std::move(row));
    }
  }
  return table;
}

std::string confusion_csv(const ConfusionMatrix& matrix) {
  std::ostringstream out;
  for (const auto& label : matrix.labels) out << ',' << label;
  out << '\n';
  for (Eigen::Index o = 0; o < matrix.cells.rows(); ++o) {
    out << matrix.labels[static_cast<std::size_t>(o)];
    for (Eigen::Index i = 0; i < matrix.cells.cols(); ++i) {
      out << ',' << text::format_fixed(matrix.cells(o, i), 2);
    }
    out << '\n';
  }
  out << "efficiency," << text::format_fixed(matrix.efficiency, 2) << '\n';
  return out.str();
}

void write_confusion_csv(const ConfusionMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << confusion_csv(matrix);
  if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string render_confusion(const ConfusionMatrix& matrix) {
  std::size_t width = 8;
  for (const auto& label : matrix.labels) width = std::max(width, label.size() + 2);

  const auto pad = [width](const std::string& s) {
    return std::string(width - std::min(width, s.size()), ' ') + s;
  };

  std::ostringstream out;
  out << "outputs \\ inputs\n" << pad("");
  for (const auto& label : matrix.labels) out << pad(label);
  out << '\n';
  for (Eigen::Index o = 0; o < matrix.cells.rows(); ++o) {
    out << pad(matrix.labels[static_cast<std::size_t>(o)]);
    for (Eigen::Index i = 0; i < matrix.cells.cols(); ++i) {
      out << pad(text::format_fixed(matrix.cells(o, i), 2));
    }
    out << '\n';
  }
  out << "efficiency: " << text::format_fixed(matrix.efficiency, 2) << " %\n";
  return out.str();
}

}  // namespace fisnose
