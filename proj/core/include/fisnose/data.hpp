#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fisnose/dataset.hpp"
#include "fisnose/fis.hpp"

namespace fisnose {

// ---------------------------------------------------------------------------
// ADC conversion
// ---------------------------------------------------------------------------

inline constexpr int kAdcMax = 1023;
inline constexpr double kVoltsPerCount = 0.0049;

/// One line of the acquisition board: five 10-bit readings in channel order.
struct RawAdcReading {
  std::array<int, 5> channels{};

  bool operator==(const RawAdcReading&) const = default;
};

/// count × 4.9 mV per channel. Throws std::invalid_argument outside [0, 1023].
SensorSample adc_to_volts(const RawAdcReading& raw);

/// Nearest ADC count for a voltage, clamped to [0, 1023].
int volts_to_adc(double volts);

// ---------------------------------------------------------------------------
// Synthetic acquisition sessions
// ---------------------------------------------------------------------------

inline constexpr std::string_view kRestLabel = "rest";

/// Steady-state rise above baseline, in volts, of each channel while the
/// object is exposed. The built-in values are made-up fixtures.
struct ObjectProfile {
  std::string label;
  std::array<double, 5> response{};
};

/// Fixture profiles: papaya, orange, apple, onion, guava, banana.
const std::vector<ObjectProfile>& builtin_profiles();
/// Throws std::invalid_argument for an unknown label.
ObjectProfile builtin_profile(std::string_view label);

/// Phase lengths are sample counts: an initial rest, then each object's
/// exposure separated by inter-object rests.
struct SessionConfig {
  std::vector<ObjectProfile> objects;
  std::size_t rest_duration = 100;
  std::size_t exposure_duration = 800;
  std::size_t inter_rest_duration = 50;
  std::array<double, 5> baseline{0.12, 0.08, 0.10, 0.09, 0.11};
  /// k in the exposure ramp 1 - exp(-k · drift_rate), k = 1, 2, ...
  double drift_rate = 2.0;
  double noise_std = 0.02;
  std::uint64_t seed = 1;

  /// papaya, orange, apple with the defaults above.
  static SessionConfig defaults();

  void validate() const;
};

struct SessionRow {
  SensorSample sample;
  std::string label;
};

/// Every generated row in time order, rest phases included.
struct Session {
  std::vector<std::string> channel_names;
  std::vector<SessionRow> rows;

  /// The exposure rows grouped per object; rest rows are dropped.
  LabeledDataset dataset() const;
};

Session generate_recording(const SessionConfig& config);
LabeledDataset generate_session(const SessionConfig& config);

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// `mq135,tgs2610,mq2,tgs2611,mq3,label`
std::string csv_header(const std::vector<std::string>& channel_names);

/// Parses the session CSV. Rows labelled `rest` are skipped; other labels
/// become objects in order of first appearance. When `expected_labels` is
/// given, any other label is an error and the objects follow that order.
LabeledDataset parse_csv(std::istream& in,
                         const std::optional<std::vector<std::string>>& expected_labels = {});
LabeledDataset read_csv(const std::filesystem::path& path,
                        const std::optional<std::vector<std::string>>& expected_labels = {});

/// Values use the shortest decimal text that reads back to the same double.
std::string to_csv(const LabeledDataset& dataset);
std::string to_csv(const Session& session);
void write_csv(const LabeledDataset& dataset, const std::filesystem::path& path);
void write_csv(const Session& session, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Live line protocol: "v1,v2,v3,v4,v5\n" with integer ADC counts
// ---------------------------------------------------------------------------

struct StreamError {
  std::size_t line_number = 0;
  std::string line;  ///< verbatim, without the newline
  std::string message;
};

using StreamItem = std::variant<RawAdcReading, StreamError>;

StreamItem parse_adc_line(std::string_view line, std::size_t line_number);

/// Pulls readings from a text stream one line at a time. Malformed lines come
/// back as StreamError and reading continues; blank lines are skipped.
class AdcLineReader {
 public:
  explicit AdcLineReader(std::istream& in) : in_(in) {}

  /// nullopt at end of input.
  std::optional<StreamItem> next();

 private:
  std::istream& in_;
  std::size_t line_number_ = 0;
};

}  // namespace fisnose
