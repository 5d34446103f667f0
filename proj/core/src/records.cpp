#include "revive/records.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"
#include "revive/errors.hpp"

namespace revive {

namespace {

using nlohmann::json;

void append_escaped(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

template <typename T>
void append_array(std::string& out, const std::vector<T>& values) {
  out.push_back('[');
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(',');
    if constexpr (std::is_same_v<T, double>) {
      out += format_double(values[i]);
    } else if constexpr (std::is_same_v<T, bool>) {
      out += values[i] ? "true" : "false";
    } else {
      out += std::to_string(values[i]);
    }
  }
  out.push_back(']');
}

std::vector<double> row_maxima(const std::vector<SimilarityRow>& rows) {
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r.max);
  return out;
}

std::vector<std::uint64_t> row_argmax(const std::vector<SimilarityRow>& rows) {
  std::vector<std::uint64_t> out;
  for (const auto& r : rows) out.push_back(r.argmax);
  return out;
}

[[noreturn]] void bad_config(const std::string& what) { throw FormatError("simulation config: " + what); }

template <typename T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad_config(std::string("field \"") + key + "\": " + e.what());
  }
}

EditKind parse_edit_kind(const std::string& name) {
  if (name == "rank-one-association") return EditKind::rank_one_association;
  if (name == "random-low-rank") return EditKind::random_low_rank;
  bad_config("unknown edit_kind \"" + name + "\"");
}

}  // namespace

std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Record::Record(std::string kind, std::uint64_t round) {
  fields_.emplace_back("kind", Value(std::move(kind)));
  fields_.emplace_back("round", Value(round));
}

Record& Record::put(std::string key, Value value) {
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  }
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

std::string Record::to_line() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out.push_back(',');
    append_escaped(out, fields_[i].first);
    out.push_back(':');
    std::visit(
        [&out](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::nullptr_t>) {
            out += "null";
          } else if constexpr (std::is_same_v<T, bool>) {
            out += v ? "true" : "false";
          } else if constexpr (std::is_same_v<T, double>) {
            out += format_double(v);
          } else if constexpr (std::is_same_v<T, std::string>) {
            append_escaped(out, v);
          } else if constexpr (std::is_integral_v<T>) {
            out += std::to_string(v);
          } else {
            append_array(out, v);
          }
        },
        fields_[i].second);
  }
  out.push_back('}');
  return out;
}

Record report_record(std::string kind, const SpectralReport& report) {
  Record r(std::move(kind), report.round_index);
  std::vector<bool> reliable;
  for (const auto& row : report.ss_rows) reliable.push_back(row.reliable);
  r.set("ls", report.ls)
      .set("ss_min_max", report.ss_min_max())
      .set("ss_max", row_maxima(report.ss_rows))
      .set("ss_argmax", row_argmax(report.ss_rows))
      .set("ss_reliable", std::move(reliable))
      .set("ss_output_min_max", report.ss_output_min_max())
      .set("ss_output_max", row_maxima(report.ss_output_rows))
      .set("frobenius_distance", report.frobenius_distance)
      .set("sigma_max", report.energy_profile.empty() ? 0.0 : report.energy_profile.front())
      .set("energy_profile", report.energy_profile);
  return r;
}

Record round_record(const RoundRecord& round) {
  Record r = report_record("round", round.report);
  r.set("probe_fidelity", round.probe_fidelity)
      .set("edit_retention", round.edit_retention)
      .set("k_used", round.k_used)
      .set("mean_removed_fraction", round.mean_removed_fraction);
  return r;
}

std::string_view edit_kind_name(EditKind kind) {
  return kind == EditKind::rank_one_association ? "rank-one-association" : "random-low-rank";
}

SimulationConfig parse_simulation_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad_config(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) bad_config("top level must be an object");

  static const std::set<std::string> known = {
      "seed", "rounds", "edits_per_round", "tau", "shape", "spectrum", "edit_kind", "edit_scale",
      "filter_enabled", "probe_count", "probe_energy", "key_alignment", "residual_alignment",
      "retention_threshold", "energy_fraction", "tracked_count"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) bad_config("unknown field \"" + item.key() + "\"");
  }
  if (!j.contains("seed")) bad_config("missing required field \"seed\"");

  SimulationConfig c;
  c.seed = get_field<std::uint64_t>(j, "seed");
  if (j.contains("rounds")) c.rounds = get_field<std::size_t>(j, "rounds");
  if (j.contains("edits_per_round")) c.edits_per_round = get_field<std::size_t>(j, "edits_per_round");
  if (j.contains("tau")) c.tau = get_field<double>(j, "tau");
  if (j.contains("shape")) {
    const auto shape = get_field<std::vector<std::size_t>>(j, "shape");
    if (shape.size() != 2) bad_config("shape must be [rows, cols]");
    c.rows = shape[0];
    c.cols = shape[1];
  }
  if (j.contains("spectrum")) {
    const json& s = j.at("spectrum");
    if (s.is_array()) {
      c.spectrum = get_field<std::vector<double>>(j, "spectrum");
    } else if (s.is_object() && s.contains("power_law")) {
      PowerLawSpectrum law;
      law.exponent = get_field<double>(s, "power_law");
      if (s.contains("scale")) law.scale = get_field<double>(s, "scale");
      c.spectrum = law;
    } else {
      bad_config("spectrum must be a list of values or {\"power_law\": exponent}");
    }
  }
  if (j.contains("edit_kind")) c.edit_kind = parse_edit_kind(get_field<std::string>(j, "edit_kind"));
  if (j.contains("edit_scale")) c.edit_scale = get_field<double>(j, "edit_scale");
  if (j.contains("filter_enabled")) c.filter_enabled = get_field<bool>(j, "filter_enabled");
  if (j.contains("probe_count")) c.probe_count = get_field<std::size_t>(j, "probe_count");
  if (j.contains("probe_energy")) c.probe_energy = get_field<double>(j, "probe_energy");
  if (j.contains("key_alignment")) c.key_alignment = get_field<double>(j, "key_alignment");
  if (j.contains("residual_alignment")) c.residual_alignment = get_field<double>(j, "residual_alignment");
  if (j.contains("retention_threshold")) c.retention_threshold = get_field<double>(j, "retention_threshold");
  if (j.contains("energy_fraction")) c.energy_fraction = get_field<double>(j, "energy_fraction");
  if (j.contains("tracked_count")) c.tracked_count = get_field<std::size_t>(j, "tracked_count");
  c.validate();
  return c;
}

std::string simulation_config_to_json(const SimulationConfig& c) {
  json j = json::object();
  j["seed"] = c.seed;
  j["rounds"] = c.rounds;
  j["edits_per_round"] = c.edits_per_round;
  j["tau"] = c.tau;
  j["shape"] = {c.rows, c.cols};
  if (const auto* law = std::get_if<PowerLawSpectrum>(&c.spectrum)) {
    j["spectrum"] = {{"power_law", law->exponent}, {"scale", law->scale}};
  } else {
    j["spectrum"] = std::get<std::vector<double>>(c.spectrum);
  }
  j["edit_kind"] = std::string(edit_kind_name(c.edit_kind));
  j["edit_scale"] = c.edit_scale;
  j["filter_enabled"] = c.filter_enabled;
  j["probe_count"] = c.probe_count;
  j["probe_energy"] = c.probe_energy;
  j["key_alignment"] = c.key_alignment;
  j["residual_alignment"] = c.residual_alignment;
  j["retention_threshold"] = c.retention_threshold;
  j["energy_fraction"] = c.energy_fraction;
  j["tracked_count"] = c.tracked_count;
  return j.dump();
}

}  // namespace revive
