#pragma once

// JSON experiment configs.
//
// Required keys: experiment, seed, N, n_samples (n_samples may be omitted
// for the single-realization kinds `profile` and `geodesic`). Unknown keys
// are rejected. Flags given on the command line override file values.

#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpp/error.hpp"
#include "lpp/experiments.hpp"

namespace lpp {

using Json = nlohmann::ordered_json;

namespace detail {

template <class E>
E parse_enum(const Json& j, const char* field, std::initializer_list<std::pair<const char*, E>> options) {
  if (!j.is_string()) throw ConfigError(field, "must be a string");
  const auto v = j.get<std::string>();
  std::string allowed;
  for (const auto& [name, value] : options) {
    if (v == name) return value;
    allowed += allowed.empty() ? name : std::string(", ") + name;
  }
  throw ConfigError(field, "unknown value '" + v + "' (expected one of: " + allowed + ")");
}

inline double get_number(const Json& j, const char* field) {
  if (!j.is_number()) throw ConfigError(field, "must be a number");
  return j.get<double>();
}

inline std::int64_t get_integer(const Json& j, const char* field) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
  }
  throw ConfigError(field, "must be an integer");
}

inline std::vector<double> get_number_list(const Json& j, const char* field) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw ConfigError(field, "must be a number or an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_number(v, field));
  return out;
}

}  // namespace detail

inline const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys{
      "experiment", "seed",    "N",          "n_samples",  "geometry", "direction",  "process",
      "t",          "t_list",  "s",          "s_list",     "s1",       "s2",         "s_lo",
      "s_hi",       "s_window", "delta_list", "corridor_c", "kappa",    "trunc_c",    "checkpoint_stride",
      "threads",    "output",  "format_version"};
  return keys;
}

inline ExperimentKind parse_experiment_kind(const Json& j) {
  return detail::parse_enum<ExperimentKind>(j, "experiment",
                                            {{"profile", ExperimentKind::profile},
                                             {"geodesic", ExperimentKind::geodesic},
                                             {"tail", ExperimentKind::tail},
                                             {"extrema", ExperimentKind::extrema},
                                             {"stationarity", ExperimentKind::stationarity},
                                             {"association", ExperimentKind::association},
                                             {"modulus", ExperimentKind::modulus},
                                             {"corridor", ExperimentKind::corridor}});
}

/// Parses and validates a config document.
inline ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config", "must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!config_keys().contains(key)) throw ConfigError(key, "unknown key");
  }
  for (const char* key : {"experiment", "seed", "N"}) {
    if (!j.contains(key)) throw ConfigError(key, "required key missing");
  }
  ExperimentConfig c;
  c.experiment = parse_experiment_kind(j.at("experiment"));
  const bool single = c.experiment == ExperimentKind::profile || c.experiment == ExperimentKind::geodesic;
  if (!single && !j.contains("n_samples")) throw ConfigError("n_samples", "required key missing");

  const auto& seed = j.at("seed");
  if (seed.is_number_unsigned()) {
    c.seed = seed.get<std::uint64_t>();
  } else if (seed.is_number_integer() && seed.get<std::int64_t>() >= 0) {
    c.seed = static_cast<std::uint64_t>(seed.get<std::int64_t>());
  } else {
    throw ConfigError("seed", "must be a non-negative integer");
  }
  c.N = detail::get_integer(j.at("N"), "N");
  if (c.N < 1) throw ConfigError("N", "must be >= 1");
  c.n_samples = j.contains("n_samples") ? detail::get_integer(j.at("n_samples"), "n_samples") : 1;
  if (c.n_samples < 1) throw ConfigError("n_samples", "must be >= 1");

  if (j.contains("geometry")) {
    c.geometry = detail::parse_enum<Geometry>(j.at("geometry"), "geometry", {{"p2p", Geometry::p2p}, {"p2l", Geometry::p2l}});
  }
  if (j.contains("direction")) {
    c.direction = detail::parse_enum<Direction>(j.at("direction"), "direction",
                                                {{"upper", Direction::upper}, {"lower", Direction::lower}});
  }
  if (j.contains("process")) {
    c.process = detail::parse_enum<Process>(j.at("process"), "process", {{"airy1", Process::airy1}, {"airy2", Process::airy2}});
  }
  if (j.contains("t") && j.contains("t_list")) throw ConfigError("t", "conflicts with t_list");
  if (j.contains("t")) c.t_list = {detail::get_number(j.at("t"), "t")};
  if (j.contains("t_list")) c.t_list = detail::get_number_list(j.at("t_list"), "t_list");
  if (j.contains("s")) c.s = detail::get_number(j.at("s"), "s");
  if (j.contains("s_list")) c.s_list = detail::get_number_list(j.at("s_list"), "s_list");
  if (j.contains("s1")) c.s1 = detail::get_number(j.at("s1"), "s1");
  if (j.contains("s2")) c.s2 = detail::get_number(j.at("s2"), "s2");
  if (j.contains("s_lo")) c.s_lo = detail::get_number(j.at("s_lo"), "s_lo");
  if (j.contains("s_hi")) c.s_hi = detail::get_number(j.at("s_hi"), "s_hi");
  if (j.contains("s_window")) c.s_window = detail::get_number(j.at("s_window"), "s_window");
  if (j.contains("delta_list")) c.delta_list = detail::get_number_list(j.at("delta_list"), "delta_list");
  if (j.contains("corridor_c")) c.corridor_c = detail::get_number(j.at("corridor_c"), "corridor_c");
  if (j.contains("kappa")) c.kappa = detail::get_number(j.at("kappa"), "kappa");
  if (j.contains("trunc_c")) c.trunc_c = detail::get_number(j.at("trunc_c"), "trunc_c");
  if (!(c.trunc_c > 0.0)) throw ConfigError("trunc_c", "must be positive");
  if (j.contains("checkpoint_stride")) c.checkpoint_stride = detail::get_integer(j.at("checkpoint_stride"), "checkpoint_stride");
  if (c.checkpoint_stride < 1) throw ConfigError("checkpoint_stride", "must be >= 1");
  if (j.contains("threads")) c.threads = static_cast<int>(detail::get_integer(j.at("threads"), "threads"));
  if (c.threads < 1) throw ConfigError("threads", "must be >= 1");
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ConfigError("output", "must be a string");
    c.output = j.at("output").get<std::string>();
  }
  if (j.contains("format_version") && j.at("format_version") != 1) {
    throw ConfigError("format_version", "only format_version 1 is supported");
  }
  if (c.s_lo > c.s_hi) throw ConfigError("s_lo", "must not exceed s_hi");
  return c;
}

/// Fully resolved config (every knob, defaults included).
inline Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = to_string(c.experiment);
  j["seed"] = c.seed;
  j["N"] = c.N;
  j["n_samples"] = c.n_samples;
  j["geometry"] = to_string(c.geometry);
  j["direction"] = to_string(c.direction);
  j["process"] = to_string(c.process);
  j["t_list"] = c.t_list;
  j["s"] = c.s;
  j["s_list"] = c.s_list;
  j["s1"] = c.s1;
  j["s2"] = c.s2;
  j["s_lo"] = c.s_lo;
  j["s_hi"] = c.s_hi;
  j["s_window"] = c.s_window;
  j["delta_list"] = c.delta_list;
  j["corridor_c"] = c.corridor_c;
  j["kappa"] = c.kappa;
  j["trunc_c"] = c.trunc_c;
  j["checkpoint_stride"] = c.checkpoint_stride;
  j["threads"] = c.threads;
  j["output"] = c.output;
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
}

/// Merges command-line values over an optional config file, then validates.
inline ExperimentConfig resolve_config(const Json& flags, const Json& file = Json::object()) {
  Json merged = file.is_null() ? Json::object() : file;
  if (!merged.is_object()) throw ConfigError("config", "must be a JSON object");
  for (const auto& [key, value] : flags.items()) {
    // A flag for t replaces a file t_list and vice versa.
    if (key == "t") merged.erase("t_list");
    if (key == "t_list") merged.erase("t");
    merged[key] = value;
  }
  return config_from_json(merged);
}

}  // namespace lpp
