#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "revive/simulator.hpp"
#include "revive/spectral_metrics.hpp"

namespace revive {

/// One JSON object per line. Keys keep insertion order; every record starts
/// with "kind" and then "round". Doubles render with 17 significant digits,
/// non-finite values as null.
class Record {
 public:
  using Value = std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double, std::string,
                             std::vector<double>, std::vector<std::uint64_t>, std::vector<bool>>;

  Record(std::string kind, std::uint64_t round);

  template <typename T>
  Record& set(std::string key, T&& value) {
    using U = std::decay_t<T>;
    if constexpr (std::is_same_v<U, bool>) {
      return put(std::move(key), Value(value));
    } else if constexpr (std::is_integral_v<U> && std::is_signed_v<U>) {
      return put(std::move(key), Value(static_cast<std::int64_t>(value)));
    } else if constexpr (std::is_integral_v<U>) {
      return put(std::move(key), Value(static_cast<std::uint64_t>(value)));
    } else if constexpr (std::is_floating_point_v<U>) {
      return put(std::move(key), Value(static_cast<double>(value)));
    } else if constexpr (std::is_convertible_v<T, std::string_view>) {
      return put(std::move(key), Value(std::string(std::string_view(value))));
    } else {
      return put(std::move(key), Value(std::forward<T>(value)));
    }
  }

  /// Serialized record without the trailing newline.
  std::string to_line() const;

 private:
  Record& put(std::string key, Value value);

  std::vector<std::pair<std::string, Value>> fields_;
};

/// Shortest-free fixed rendering: 17 significant digits.
std::string format_double(double value);

/// Fields shared by analysis and simulation round records.
Record report_record(std::string kind, const SpectralReport& report);
Record round_record(const RoundRecord& round);

/// Parses a simulation config from a JSON object. "seed" is mandatory;
/// unknown keys are rejected. Throws FormatError on malformed input and
/// ArgumentError (via validate) on out-of-range values.
SimulationConfig parse_simulation_config(std::string_view json_text);
std::string simulation_config_to_json(const SimulationConfig& config);

std::string_view edit_kind_name(EditKind kind);

}  // namespace revive
