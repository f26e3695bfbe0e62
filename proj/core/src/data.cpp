#include "fisnose/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "fisnose/errors.hpp"
#include "fisnose/random.hpp"
#include "fisnose/text.hpp"

namespace fisnose {
namespace {

constexpr double kMaxVolts = 5.0;

void write_text(const std::string& content, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << content;
  if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void append_row(std::ostringstream& out, const SensorSample& sample, std::string_view label) {
  for (Eigen::Index i = 0; i < sample.size(); ++i) out << text::format_real(sample(i)) << ',';
  out << label << '\n';
}

bool valid_label(std::string_view label) {
  return !label.empty() && label.find_first_of(",\r\n") == std::string_view::npos &&
         text::trim(label) == label;
}

}  // namespace

SensorSample adc_to_volts(const RawAdcReading& raw) {
  SensorSample volts(static_cast<Eigen::Index>(raw.channels.size()));
  for (std::size_t i = 0; i < raw.channels.size(); ++i) {
    const int count = raw.channels[i];
    if (count < 0 || count > kAdcMax) {
      throw std::invalid_argument("ADC value " + std::to_string(count) + " on channel " +
                                  std::to_string(i + 1) + " outside 0..1023");
    }
    volts(static_cast<Eigen::Index>(i)) = count * kVoltsPerCount;
  }
  return volts;
}

int volts_to_adc(double volts) {
  const double counts = std::round(volts / kVoltsPerCount);
  return static_cast<int>(std::clamp(counts, 0.0, static_cast<double>(kAdcMax)));
}

const std::vector<ObjectProfile>& builtin_profiles() {
  // Invented response levels in volts; each object lifts a different subset
  // of channels so the classes are separable.
  static const std::vector<ObjectProfile> profiles = {
      {"papaya", {0.80, 0.10, 0.60, 0.10, 0.30}}, {"orange", {0.10, 0.70, 0.10, 0.50, 0.80}},
      {"apple", {0.40, 0.40, 0.80, 0.80, 0.10}},  {"onion", {0.70, 0.60, 0.20, 0.20, 0.70}},
      {"guava", {0.20, 0.20, 0.50, 0.70, 0.50}},  {"banana", {0.50, 0.80, 0.70, 0.30, 0.20}},
  };
  return profiles;
}

ObjectProfile builtin_profile(std::string_view label) {
  for (const auto& profile : builtin_profiles()) {
    if (profile.label == label) return profile;
  }
  std::string known;
  for (const auto& profile : builtin_profiles()) known += (known.empty() ? "" : ", ") + profile.label;
  throw std::invalid_argument("no built-in profile for '" + std::string(label) +
                              "' (known: " + known + ")");
}

SessionConfig SessionConfig::defaults() {
  SessionConfig config;
  config.objects = {builtin_profile("papaya"), builtin_profile("orange"), builtin_profile("apple")};
  return config;
}

void SessionConfig::validate() const {
  if (objects.empty()) throw std::invalid_argument("session needs at least one object");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& label = objects[i].label;
    if (!valid_label(label) || label == kRestLabel) {
      throw std::invalid_argument("invalid object label '" + label + "'");
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (objects[k].label == label) throw std::invalid_argument("duplicate object '" + label + "'");
    }
    for (double r : objects[i].response) {
      if (!std::isfinite(r)) throw std::invalid_argument("non-finite response for '" + label + "'");
    }
  }
  for (double b : baseline) {
    if (!std::isfinite(b)) throw std::invalid_argument("non-finite baseline");
  }
  if (std::isnan(drift_rate) || drift_rate < 0.0) {
    throw std::invalid_argument("drift rate must be non-negative");
  }
  if (!std::isfinite(noise_std) || noise_std < 0.0) {
    throw std::invalid_argument("noise standard deviation must be finite and non-negative");
  }
}

LabeledDataset Session::dataset() const {
  std::vector<std::string> labels;
  std::vector<std::vector<SensorSample>> objects;
  for (const auto& row : rows) {
    if (row.label == kRestLabel) continue;
    const auto it = std::find(labels.begin(), labels.end(), row.label);
    if (it == labels.end()) {
      labels.push_back(row.label);
      objects.emplace_back();
      objects.back().push_back(row.sample);
    } else {
      objects[static_cast<std::size_t>(it - labels.begin())].push_back(row.sample);
    }
  }
  return LabeledDataset(channel_names, std::move(labels), std::move(objects));
}

Session generate_recording(const SessionConfig& config) {
  config.validate();
  Rng rng(config.seed);
  Session session{default_channel_names(), {}};
  session.rows.reserve(config.rest_duration + config.objects.size() * config.exposure_duration +
                       (config.objects.size() - 1) * config.inter_rest_duration);

  const auto emit = [&](const std::array<double, 5>& level, std::string_view label) {
    SensorSample sample(5);
    for (std::size_t i = 0; i < 5; ++i) {
      const double noisy = level[i] + config.noise_std * rng.normal();
      sample(static_cast<Eigen::Index>(i)) = std::clamp(noisy, 0.0, kMaxVolts);
    }
    session.rows.push_back({std::move(sample), std::string(label)});
  };
  const auto rest = [&](std::size_t duration) {
    for (std::size_t k = 0; k < duration; ++k) emit(config.baseline, kRestLabel);
  };

  rest(config.rest_duration);
  for (std::size_t o = 0; o < config.objects.size(); ++o) {
    if (o > 0) rest(config.inter_rest_duration);
    const auto& profile = config.objects[o];
    for (std::size_t k = 1; k <= config.exposure_duration; ++k) {
      const double ramp = 1.0 - std::exp(-static_cast<double>(k) * config.drift_rate);
      std::array<double, 5> level{};
      for (std::size_t i = 0; i < 5; ++i) level[i] = config.baseline[i] + profile.response[i] * ramp;
      emit(level, profile.label);
    }
  }
  return session;
}

LabeledDataset generate_session(const SessionConfig& config) {
  return generate_recording(config).dataset();
}

std::string csv_header(const std::vector<std::string>& channel_names) {
  std::string header;
  for (const auto& name : channel_names) header += name + ',';
  return header + "label";
}

LabeledDataset parse_csv(std::istream& in,
                         const std::optional<std::vector<std::string>>& expected_labels) {
  std::string line;
  std::size_t line_number = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_number;
    have_header = !text::trim(line).empty();
  }
  if (!have_header) throw ParseError(line_number == 0 ? 1 : line_number, "missing header");

  std::vector<std::string> channels;
  {
    const auto fields = text::split(text::trim(line), ',');
    if (fields.size() < 2 || text::trim(fields.back()) != "label") {
      throw ParseError(line_number, "header must list the channel columns followed by 'label'");
    }
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      const auto name = text::trim(fields[i]);
      if (name.empty()) throw ParseError(line_number, "empty channel name in header");
      if (std::find(channels.begin(), channels.end(), name) != channels.end()) {
        throw ParseError(line_number, "duplicate channel '" + std::string(name) + "' in header");
      }
      channels.emplace_back(name);
    }
  }

  std::vector<std::string> labels = expected_labels.value_or(std::vector<std::string>{});
  std::vector<std::vector<SensorSample>> objects(labels.size());
  const std::size_t columns = channels.size() + 1;

  while (std::getline(in, line)) {
    ++line_number;
    const auto content = text::trim(line);
    if (content.empty()) continue;
    const auto fields = text::split(content, ',');
    if (fields.size() != columns) {
      throw ParseError(line_number, "expected " + std::to_string(columns) + " columns, found " +
                                        std::to_string(fields.size()));
    }
    SensorSample sample(static_cast<Eigen::Index>(channels.size()));
    for (std::size_t i = 0; i < channels.size(); ++i) {
      const auto cell = text::trim(fields[i]);
      const auto value = text::parse_real(cell);
      if (!value) {
        throw ParseError(line_number, "non-numeric value '" + std::string(cell) +
                                          "' in column '" + channels[i] + "'");
      }
      sample(static_cast<Eigen::Index>(i)) = *value;
    }
    const std::string label(text::trim(fields.back()));
    if (label.empty()) throw ParseError(line_number, "empty label");
    if (label == kRestLabel) continue;

    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      if (expected_labels) throw ParseError(line_number, "unknown label '" + label + "'");
      labels.push_back(label);
      objects.emplace_back();
      it = labels.end() - 1;
    }
    objects[static_cast<std::size_t>(it - labels.begin())].push_back(std::move(sample));
  }
  return LabeledDataset(std::move(channels), std::move(labels), std::move(objects));
}

LabeledDataset read_csv(const std::filesystem::path& path,
                        const std::optional<std::vector<std::string>>& expected_labels) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError(0, "cannot open '" + path.string() + "'");
  return parse_csv(file, expected_labels);
}

std::string to_csv(const LabeledDataset& dataset) {
  std::ostringstream out;
  out << csv_header(dataset.channel_names()) << '\n';
  for (std::size_t i = 0; i < dataset.object_count(); ++i) {
    for (const auto& sample : dataset.object(i)) append_row(out, sample, dataset.labels()[i]);
  }
  return out.str();
}

std::string to_csv(const Session& session) {
  std::ostringstream out;
  out << csv_header(session.channel_names) << '\n';
  for (const auto& row : session.rows) append_row(out, row.sample, row.label);
  return out.str();
}

void write_csv(const LabeledDataset& dataset, const std::filesystem::path& path) {
  write_text(to_csv(dataset), path);
}

void write_csv(const Session& session, const std::filesystem::path& path) {
  write_text(to_csv(session), path);
}

StreamItem parse_adc_line(std::string_view line, std::size_t line_number) {
  const auto fail = [&](std::string message) {
    return StreamItem{StreamError{line_number, std::string(line), std::move(message)}};
  };
  const auto fields = text::split(text::trim(line), ',');
  if (fields.size() != 5) {
    return fail("expected 5 comma-separated values, found " + std::to_string(fields.size()));
  }
  RawAdcReading reading;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto cell = text::trim(fields[i]);
    const auto value = text::parse_integer(cell);
    if (!value) return fail("non-integer value '" + std::string(cell) + "'");
    if (*value < 0 || *value > kAdcMax) {
      return fail("value " + std::to_string(*value) + " outside ADC range 0..1023");
    }
    reading.channels[i] = static_cast<int>(*value);
  }
  return reading;
}

std::optional<StreamItem> AdcLineReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    return parse_adc_line(line, line_number_);
  }
  return std::nullopt;
}

}  // namespace fisnose
