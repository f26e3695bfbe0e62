#include "fisnose/fis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "fisnose/errors.hpp"
#include "fisnose/random.hpp"

namespace fisnose {
namespace {

void require_sample(const FisModel& model, const SensorSample& sample) {
  if (static_cast<std::size_t>(sample.size()) != model.inputs()) {
    throw std::invalid_argument("sample has " + std::to_string(sample.size()) +
                                " channels, model expects " + std::to_string(model.inputs()));
  }
  if (!sample.allFinite()) {
    throw std::invalid_argument("sample contains a non-finite channel value");
  }
}

void require_target(const FisModel& model, const Eigen::VectorXd& target) {
  if (static_cast<std::size_t>(target.size()) != model.outputs()) {
    throw std::invalid_argument("target has " + std::to_string(target.size()) +
                                " entries, model has " + std::to_string(model.outputs()) +
                                " outputs");
  }
}

// Normalized rule weights w_j = α_j / Σα, or 1/m below the activation floor.
struct Weights {
  Eigen::VectorXd normalized;
  bool fallback = false;
};

Weights normalize(const FiringVector& firing) {
  const double total = firing.alphas.sum();
  const auto m = firing.alphas.size();
  if (!(total >= kActivationFloor)) {
    return {Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m)), true};
  }
  return {firing.alphas / total, false};
}

}  // namespace

std::string_view to_string(Combinator combinator) {
  switch (combinator) {
    case Combinator::ExpOfNegatedSum:
      return "sum";
    case Combinator::ProductOfGaussians:
      return "product";
  }
  return "unknown";
}

Combinator parse_combinator(std::string_view name) {
  if (name == "sum") return Combinator::ExpOfNegatedSum;
  if (name == "product") return Combinator::ProductOfGaussians;
  throw std::invalid_argument("unknown combinator '" + std::string(name) +
                              "' (expected 'sum' or 'product')");
}

FisModel::FisModel(Eigen::MatrixXd centers, Eigen::MatrixXd widths,
                   Eigen::MatrixXd output_centers, Combinator combinator)
    : centers_(std::move(centers)),
      widths_(std::move(widths)),
      output_centers_(std::move(output_centers)),
      combinator_(combinator) {
  if (centers_.rows() == 0 || centers_.cols() == 0 || output_centers_.rows() == 0) {
    throw std::invalid_argument("model dimensions must be positive");
  }
  if (widths_.rows() != centers_.rows() || widths_.cols() != centers_.cols()) {
    throw std::invalid_argument("width matrix shape differs from center matrix shape");
  }
  if (output_centers_.cols() != centers_.cols()) {
    throw std::invalid_argument("output center matrix has a different rule count");
  }
  if (!centers_.allFinite() || !widths_.allFinite() || !output_centers_.allFinite()) {
    throw InvalidModel("model contains non-finite parameters");
  }
  if ((widths_.array() <= 0.0).any()) {
    throw InvalidModel("membership widths must be strictly positive");
  }
}

std::size_t FisModel::parameter_count() const {
  return 2 * inputs() * rules() + outputs() * rules();
}

bool FisModel::operator==(const FisModel& other) const {
  const auto same = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
  };
  return combinator_ == other.combinator_ && same(centers_, other.centers_) &&
         same(widths_, other.widths_) && same(output_centers_, other.output_centers_);
}

FisModel init_model(const Dimensions& dims, Combinator combinator, std::uint64_t seed) {
  if (dims.inputs == 0 || dims.rules == 0 || dims.outputs == 0) {
    throw std::invalid_argument("init_model: every dimension must be at least 1");
  }
  const auto n = static_cast<Eigen::Index>(dims.inputs);
  const auto m = static_cast<Eigen::Index>(dims.rules);
  const auto l = static_cast<Eigen::Index>(dims.outputs);

  Rng rng(seed);
  const auto draw = [&rng](Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = rng.uniform();
    return out;
  };
  Eigen::MatrixXd centers = draw(n, m);
  Eigen::MatrixXd widths = draw(n, m).cwiseMax(kWidthFloor);
  Eigen::MatrixXd output_centers = draw(l, m);
  return FisModel(std::move(centers), std::move(widths), std::move(output_centers), combinator);
}

FiringVector firing_strengths(const FisModel& model, const SensorSample& sample) {
  require_sample(model, sample);
  const auto& c = model.centers();
  const auto& sigma = model.widths();
  const Eigen::Index n = c.rows();
  const Eigen::Index m = c.cols();

  FiringVector out{Eigen::VectorXd(m), Eigen::VectorXd(m)};
  for (Eigen::Index j = 0; j < m; ++j) {
    double exponent = 0.0;
    double product = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = sample(i) - c(i, j);
      const double scaled = d * d / (sigma(i, j) * sigma(i, j));
      exponent -= scaled;
      if (model.combinator() == Combinator::ProductOfGaussians) product *= std::exp(-scaled);
    }
    out.exponents(j) = exponent;
    out.alphas(j) = model.combinator() == Combinator::ExpOfNegatedSum ? std::exp(exponent)
                                                                      : product;
  }
  return out;
}

Prediction infer(const FisModel& model, const SensorSample& sample) {
  const Weights weights = normalize(firing_strengths(model, sample));
  return {model.output_centers() * weights.normalized};
}

ErrorVector output_errors(const Prediction& predicted, const Eigen::VectorXd& target) {
  if (predicted.outputs.size() != target.size()) {
    throw std::invalid_argument("prediction has " + std::to_string(predicted.outputs.size()) +
                                " outputs, target has " + std::to_string(target.size()));
  }
  return {predicted.outputs - target};
}

FisModel train_step(const FisModel& model, const SensorSample& sample,
                    const Eigen::VectorXd& target, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("learning rate must lie in (0, 1), got " + std::to_string(eta));
  }
  require_sample(model, sample);
  require_target(model, target);

  const Weights weights = normalize(firing_strengths(model, sample));
  const Eigen::VectorXd& w = weights.normalized;
  const Eigen::MatrixXd& v = model.output_centers();
  const Eigen::VectorXd predicted = v * w;
  const Eigen::VectorXd e = predicted - target;

  Eigen::MatrixXd next_v = v - eta * e * w.transpose();
  if (weights.fallback) {
    return FisModel(model.centers(), model.widths(), std::move(next_v), model.combinator());
  }

  const auto& c = model.centers();
  const auto& sigma = model.widths();
  const Eigen::Index n = c.rows();
  const Eigen::Index m = c.cols();

  // g_j = Σ_l (v_lj - ŷ_l) e_l, the output-summed factor shared by β_c and β_σ.
  const Eigen::VectorXd g = (v.colwise() - predicted).transpose() * e;

  Eigen::MatrixXd next_c = c;
  Eigen::MatrixXd next_sigma = sigma;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double scale = 2.0 * w(j) * g(j);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = sample(i) - c(i, j);
      const double s = sigma(i, j);
      const double beta_c = scale * d / (s * s);
      const double beta_sigma = scale * d * d / (s * s * s);
      next_c(i, j) = c(i, j) - eta * beta_c;
      next_sigma(i, j) = std::max(s - eta * beta_sigma, kWidthFloor);
    }
  }
  return FisModel(std::move(next_c), std::move(next_sigma), std::move(next_v),
                  model.combinator());
}

}  // namespace fisnose
