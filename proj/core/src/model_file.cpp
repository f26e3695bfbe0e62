#include "fisnose/model_file.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fisnose/errors.hpp"
#include "fisnose/text.hpp"

namespace fisnose {
namespace {

constexpr std::string_view kMagic = "fisnose-model";
constexpr int kVersion = 1;

void write_matrix(std::ostringstream& out, const Eigen::MatrixXd& matrix) {
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      out << (c ? " " : "") << text::format_real(matrix(r, c));
    }
    out << '\n';
  }
}

class LineSource {
 public:
  explicit LineSource(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError(number_ + 1, "unexpected end of model file");
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  /// Reads "<key> <fields...>" and returns the whitespace-separated fields.
  std::vector<std::string> keyed(std::string_view key, std::size_t field_count) {
    const std::string line = next();
    std::istringstream tokens(line);
    std::string word;
    tokens >> word;
    if (word != key) {
      fail("expected '" + std::string(key) + "', found '" + line + "'");
    }
    std::vector<std::string> fields;
    while (tokens >> word) fields.push_back(word);
    if (fields.size() != field_count) {
      fail("'" + std::string(key) + "' takes " + std::to_string(field_count) + " value(s)");
    }
    return fields;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(number_, message); }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::size_t parse_count(LineSource& src, const std::string& token) {
  const auto value = text::parse_integer(token);
  if (!value || *value < 0) src.fail("expected a non-negative integer, found '" + token + "'");
  return static_cast<std::size_t>(*value);
}

Eigen::MatrixXd read_matrix(LineSource& src, std::string_view name, std::size_t rows,
                            std::size_t cols) {
  src.keyed(name, 0);
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    std::istringstream tokens(src.next());
    std::string token;
    std::size_t c = 0;
    while (tokens >> token) {
      if (c == cols) src.fail(std::string(name) + " row has more than " + std::to_string(cols) + " values");
      const auto value = text::parse_real(token);
      if (!value) src.fail("invalid number '" + token + "'");
      matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c++)) = *value;
    }
    if (c != cols) src.fail(std::string(name) + " row has " + std::to_string(c) + " values, expected " + std::to_string(cols));
  }
  return matrix;
}

std::vector<std::string> read_names(LineSource& src, std::string_view key) {
  const std::size_t count = parse_count(src, src.keyed(key, 1)[0]);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) {
    names.push_back(src.next());
    if (names.back().empty()) src.fail("empty name in '" + std::string(key) + "' list");
  }
  return names;
}

}  // namespace

std::string serialize_model(const ModelFile& file) {
  const auto& model = file.model;
  std::ostringstream out;
  out << kMagic << ' ' << kVersion << '\n'
      << "dims " << model.inputs() << ' ' << model.rules() << ' ' << model.outputs() << '\n'
      << "combinator " << to_string(model.combinator()) << '\n'
      << "eta " << text::format_real(file.config.eta) << '\n'
      << "epochs " << file.config.epochs << '\n'
      << "seed " << file.config.seed << '\n'
      << "order " << to_string(file.config.order) << '\n'
      << "channels " << file.channels.size() << '\n';
  for (const auto& name : file.channels) out << name << '\n';
  out << "labels " << file.labels.size() << '\n';
  for (const auto& label : file.labels) out << label << '\n';
  out << "centers\n";
  write_matrix(out, model.centers());
  out << "widths\n";
  write_matrix(out, model.widths());
  out << "outputs\n";
  write_matrix(out, model.output_centers());
  return out.str();
}

ModelFile parse_model(std::istream& in) {
  LineSource src(in);
  {
    const auto version = src.keyed(kMagic, 1)[0];
    if (version != std::to_string(kVersion)) src.fail("unsupported model file version " + version);
  }
  const auto dims = src.keyed("dims", 3);
  const std::size_t inputs = parse_count(src, dims[0]);
  const std::size_t rules = parse_count(src, dims[1]);
  const std::size_t outputs = parse_count(src, dims[2]);
  if (inputs == 0 || rules == 0 || outputs == 0) src.fail("model dimensions must be positive");

  TrainConfig config;
  try {
    config.combinator = parse_combinator(src.keyed("combinator", 1)[0]);
  } catch (const std::invalid_argument& e) {
    src.fail(e.what());
  }
  {
    const auto token = src.keyed("eta", 1)[0];
    const auto eta = text::parse_real(token);
    if (!eta) src.fail("invalid learning rate '" + token + "'");
    config.eta = *eta;
  }
  config.epochs = parse_count(src, src.keyed("epochs", 1)[0]);
  {
    const auto token = src.keyed("seed", 1)[0];
    const auto seed = text::parse_unsigned(token);
    if (!seed) src.fail("invalid seed '" + token + "'");
    config.seed = *seed;
  }
  try {
    config.order = parse_training_order(src.keyed("order", 1)[0]);
  } catch (const std::invalid_argument& e) {
    src.fail(e.what());
  }
  config.rules = rules;

  auto channels = read_names(src, "channels");
  if (channels.size() != inputs) src.fail("channel count differs from input dimension");
  auto labels = read_names(src, "labels");
  if (labels.size() != outputs) src.fail("label count differs from output dimension");

  Eigen::MatrixXd centers = read_matrix(src, "centers", inputs, rules);
  Eigen::MatrixXd widths = read_matrix(src, "widths", inputs, rules);
  Eigen::MatrixXd output_centers = read_matrix(src, "outputs", outputs, rules);
  try {
    return ModelFile{FisModel(std::move(centers), std::move(widths), std::move(output_centers),
                              config.combinator),
                     config, std::move(channels), std::move(labels)};
  } catch (const std::invalid_argument& e) {
    src.fail(e.what());
  }
}

void save_model(const ModelFile& file, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << serialize_model(file);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  return parse_model(in);
}

}  // namespace fisnose
