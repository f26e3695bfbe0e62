#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fisnose/fis.hpp"

namespace fisnose {

/// Examination settings: pass threshold and the total number of exam parts.
struct EvalConfig {
  double epsilon = 0.1;
  std::size_t segments = 16;

  /// Throws std::invalid_argument unless epsilon > 0 and segments >= 1.
  void validate() const;
};

/// Consecutive test samples examined as one unit.
using Segment = std::vector<SensorSample>;

/// Root of the mean (over the T samples) of the summed squared output error
/// against a fixed target.
double rmse(const FisModel& model, std::span<const SensorSample> samples,
            const Eigen::VectorXd& target);

/// Strict: rmse_value < epsilon.
bool segment_passes(double rmse_value, double epsilon);

struct ExamTally {
  std::size_t ec = 0;  ///< passing segments
  double pec = 0.0;    ///< 100 · ec / total_segments
};

/// Counts the segments whose rmse against `target` passes. The percentage is
/// taken over `total_segments`, the size of the whole examination, which is
/// normally larger than segments.size().
ExamTally examine(const FisModel& model, std::span<const Segment> segments,
                  const Eigen::VectorXd& target, double epsilon, std::size_t total_segments);

/// Exam parts per object: floor(total/objects) each, the remainder going to
/// the last object (16 over 3 objects -> 5, 5, 6).
std::vector<std::size_t> segment_allocation(std::size_t objects, std::size_t total_segments);

/// Cuts each object's test samples into its allocated number of
/// non-overlapping segments of T = floor(size / count) samples; trailing
/// samples that do not fill a segment are dropped.
std::vector<std::vector<Segment>> segment_objects(
    std::span<const std::vector<SensorSample>> per_object, std::size_t total_segments);

/// cells(o, i) is the PEC of input object i's segments examined against the
/// one-hot target of object o.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd cells;
  double efficiency = 0.0;  ///< sum of the main diagonal
  std::size_t segments = 0;

  bool operator==(const ConfusionMatrix& other) const;
};

ConfusionMatrix confusion_matrix(const FisModel& model,
                                 std::span<const std::vector<Segment>> per_object_segments,
                                 const EvalConfig& config, std::vector<std::string> labels);

/// rmse of every segment against every object target: result[i][s](o).
std::vector<std::vector<Eigen::VectorXd>> segment_rmse_table(
    const FisModel& model, std::span<const std::vector<Segment>> per_object_segments);

/// Header of input labels, one row per output label, two fractional digits,
/// closing `efficiency,<value>` line.
std::string confusion_csv(const ConfusionMatrix& matrix);
void write_confusion_csv(const ConfusionMatrix& matrix, const std::filesystem::path& path);

/// Fixed-width terminal table with row/column captions.
std::string render_confusion(const ConfusionMatrix& matrix);

}  // namespace fisnose
