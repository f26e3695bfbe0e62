#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace fisnose {

/// Lower bound applied to every membership width after initialization and
/// after each update. Widths divide the update terms as σ² and σ³.
inline constexpr double kWidthFloor = 1e-3;

/// Below this total activation the normalized weights are replaced by the
/// uniform weights 1/m.
inline constexpr double kActivationFloor = 1e-300;

/// How the per-input Gaussian memberships combine into one rule activation.
/// Both forms compute the same value up to rounding:
///   ExpOfNegatedSum:     α_j = exp(-Σ_i (z_i - c_ij)² / σ_ij²)
///   ProductOfGaussians:  α_j = Π_i exp(-(z_i - c_ij)² / σ_ij²)
enum class Combinator { ExpOfNegatedSum, ProductOfGaussians };

/// "sum" / "product".
std::string_view to_string(Combinator combinator);
/// Accepts "sum" and "product"; throws std::invalid_argument otherwise.
Combinator parse_combinator(std::string_view name);

/// One time step of sensor readings z_1..z_n. For the five-sensor array the
/// channel order is MQ-135, TGS-2610, MQ-2, TGS-2611, MQ-3.
using SensorSample = Eigen::VectorXd;

struct Dimensions {
  std::size_t inputs = 5;
  std::size_t rules = 10;
  std::size_t outputs = 3;

  bool operator==(const Dimensions&) const = default;
};

/// Rule base of the fuzzy inference system.
///
/// centers and widths are inputs × rules, output_centers is outputs × rules.
/// The constructor enforces the invariants: consistent shapes, finite
/// entries, strictly positive widths.
class FisModel {
 public:
  FisModel(Eigen::MatrixXd centers, Eigen::MatrixXd widths, Eigen::MatrixXd output_centers,
           Combinator combinator = Combinator::ExpOfNegatedSum);

  std::size_t inputs() const { return static_cast<std::size_t>(centers_.rows()); }
  std::size_t rules() const { return static_cast<std::size_t>(centers_.cols()); }
  std::size_t outputs() const { return static_cast<std::size_t>(output_centers_.rows()); }
  Dimensions dimensions() const { return {inputs(), rules(), outputs()}; }

  const Eigen::MatrixXd& centers() const { return centers_; }
  const Eigen::MatrixXd& widths() const { return widths_; }
  const Eigen::MatrixXd& output_centers() const { return output_centers_; }
  Combinator combinator() const { return combinator_; }

  /// Number of trainable scalars: 2·n·m + L·m.
  std::size_t parameter_count() const;

  /// Same combinator, same shapes, bit-identical entries.
  bool operator==(const FisModel& other) const;

 private:
  Eigen::MatrixXd centers_;
  Eigen::MatrixXd widths_;
  Eigen::MatrixXd output_centers_;
  Combinator combinator_;
};

/// Rule activations α_j together with the exponents x_j = -Σ_i (z_i - c_ij)²/σ_ij².
struct FiringVector {
  Eigen::VectorXd alphas;
  Eigen::VectorXd exponents;
};

struct Prediction {
  Eigen::VectorXd outputs;
};

/// e_l = ŷ_l - y_l
struct ErrorVector {
  Eigen::VectorXd errors;
};

/// Draws every entry of c, σ and v uniformly from [0, 1) (c first, then σ,
/// then v, each column-major) and lifts σ to kWidthFloor.
FisModel init_model(const Dimensions& dims, Combinator combinator, std::uint64_t seed);

FiringVector firing_strengths(const FisModel& model, const SensorSample& sample);

/// ŷ_l = Σ_j v_lj α_j / Σ_j α_j.
Prediction infer(const FisModel& model, const SensorSample& sample);

ErrorVector output_errors(const Prediction& predicted, const Eigen::VectorXd& target);

/// One gradient-descent update on the squared error ½Σ_l e_l² of a single
/// (sample, target) pair:
///
///   v_lj -= η w_j e_l
///   c_ij -= η Σ_l 2 w_j (z_i - c_ij)(v_lj - ŷ_l) e_l / σ_ij²
///   σ_ij -= η Σ_l 2 w_j (z_i - c_ij)²(v_lj - ŷ_l) e_l / σ_ij³
///
/// with w_j = α_j / Σ_k α_k. Every right-hand side is evaluated on the
/// incoming model; widths are then lifted to kWidthFloor. When the total
/// activation is below kActivationFloor the output is the constant uniform
/// average, so only v moves (with w_j = 1/m).
///
/// Requires 0 < eta < 1.
FisModel train_step(const FisModel& model, const SensorSample& sample,
                     const Eigen::VectorXd& target, double eta);

}  // namespace fisnose
