#pragma once

// Config dispatch and result persistence.
//
// Result document (format_version 1):
//   { "format_version": 1, "config": {...resolved...},
//     "statistics": {...}, "diagnostics": {...}, "timing": {...} }
// "statistics" depends only on the config (never on threads or timing).
// Each run also writes a flat CSV companion.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "lpp/config.hpp"
#include "lpp/experiments.hpp"
#include "lpp/geodesic.hpp"
#include "lpp/scaling.hpp"

namespace lpp {

inline constexpr int kFormatVersion = 1;

struct ExperimentResult {
  Json document;
  std::string csv;

  const Json& statistics() const { return document.at("statistics"); }
};

namespace detail {

inline Json tail_json(const TailEstimate& e) {
  return Json{{"t", e.t},         {"threshold", e.threshold}, {"n_samples", e.n_samples}, {"hits", e.hits},
              {"p_hat", e.p_hat}, {"ci_lo", e.ci_lo},         {"ci_hi", e.ci_hi},         {"direction", to_string(e.direction)},
              {"geometry", to_string(e.geometry)}};
}

inline std::ostringstream csv_stream() {
  std::ostringstream os;
  os << std::setprecision(17);
  return os;
}

inline void run_tail(const ExperimentConfig& cfg, ExperimentResult& out) {
  const auto run = estimate_tails(cfg);
  Json est = Json::array();
  auto csv = csv_stream();
  csv << "t,p_hat,ci_lo,ci_hi,hits,n_samples,threshold\n";
  for (const auto& e : run.estimates) {
    est.push_back(tail_json(e));
    csv << e.t << ',' << e.p_hat << ',' << e.ci_lo << ',' << e.ci_hi << ',' << e.hits << ',' << e.n_samples << ','
        << e.threshold << '\n';
  }
  Json stats{{"estimates", est}};
  const double power = cfg.direction == Direction::upper ? 1.5 : 3.0;
  try {
    const auto fit = fit_exponent(fit_points(run.estimates), power);
    stats["exponent_fit"] = Json{{"power", fit.power},
                                 {"coefficient", fit.coefficient},
                                 {"stderr", fit.stderr_},
                                 {"intercept", fit.intercept},
                                 {"points_used", fit.points.size()}};
  } catch (const InvalidArgument&) {
    stats["exponent_fit"] = nullptr;
  }
  out.document["statistics"] = stats;
  out.document["diagnostics"] = Json{{"truncation_boundary_hits", run.truncation_hits}};
  out.csv = csv.str();
}

inline void run_extrema(const ExperimentConfig& cfg, ExperimentResult& out) {
  const auto r = extrema_growth(cfg);
  const bool airy1 = r.process == Process::airy1;
  Json rows = Json::array();
  auto csv = csv_stream();
  csv << "t,mean_max,se_max,normalized_max,mean_min,se_min,normalized_min,n_profiles";
  if (airy1) csv << ",raw_mean_max,raw_normalized_max,raw_mean_min,raw_normalized_min";
  csv << '\n';
  for (const auto& a : r.per_t) {
    Json row{{"t", a.t},
             {"mean_max", a.mean_max},
             {"se_max", a.se_max},
             {"normalized_max", a.normalized_max},
             {"mean_min", a.mean_min},
             {"se_min", a.se_min},
             {"normalized_min", a.normalized_min},
             {"n_profiles", a.n_profiles}};
    csv << a.t << ',' << a.mean_max << ',' << a.se_max << ',' << a.normalized_max << ',' << a.mean_min << ','
        << a.se_min << ',' << a.normalized_min << ',' << a.n_profiles;
    if (airy1) {
      row["raw_mean_max"] = a.raw_mean_max;
      row["raw_normalized_max"] = a.raw_normalized_max;
      row["raw_mean_min"] = a.raw_mean_min;
      row["raw_normalized_min"] = a.raw_normalized_min;
      csv << ',' << a.raw_mean_max << ',' << a.raw_normalized_max << ',' << a.raw_mean_min << ','
          << a.raw_normalized_min;
    }
    csv << '\n';
    rows.push_back(row);
  }
  const auto& lc = limit_constants();
  out.document["statistics"] = Json{{"process", to_string(r.process)},
                                    {"per_t", rows},
                                    {"limit_max", airy1 ? lc.airy1_max : lc.airy2_max},
                                    {"limit_min", airy1 ? lc.airy1_min : lc.airy2_min}};
  out.document["diagnostics"] =
      Json{{"truncation_boundary_hits", r.truncation_hits}, {"nesting_violations", r.nesting_violations}};
  out.csv = csv.str();
}

inline void run_stationarity(const ExperimentConfig& cfg, ExperimentResult& out) {
  const auto r = stationarity_check(cfg);
  Json pairs = Json::array();
  auto csv = csv_stream();
  csv << "s_a,s_b,ks_statistic,p_value\n";
  for (const auto& p : r.pairs) {
    pairs.push_back(Json{{"s_a", p.s_a}, {"s_b", p.s_b}, {"ks_statistic", p.statistic}, {"p_value", p.p_value}});
    csv << p.s_a << ',' << p.s_b << ',' << p.statistic << ',' << p.p_value << '\n';
  }
  Json means = Json::array();
  for (const auto& smp : r.samples) means.push_back(stats::mean(smp));
  out.document["statistics"] = Json{{"pairs", pairs}, {"scaled_means", means}};
  out.document["diagnostics"] = Json{{"truncation_boundary_hits", r.truncation_hits}};
  out.csv = csv.str();
}

inline void run_association(const ExperimentConfig& cfg, ExperimentResult& out) {
  const auto r = association_check(cfg);
  out.document["statistics"] = Json{{"s1", r.s1},
                                    {"s2", r.s2},
                                    {"covariance", r.cov.covariance},
                                    {"stderr", r.cov.stderr_},
                                    {"lower_bound_95", r.cov.lower_bound},
                                    {"correlation", r.correlation},
                                    {"n", r.cov.n}};
  out.document["diagnostics"] = Json::object();
  auto csv = csv_stream();
  csv << "s1,s2,covariance,stderr,lower_bound_95,correlation,n\n"
      << r.s1 << ',' << r.s2 << ',' << r.cov.covariance << ',' << r.cov.stderr_ << ',' << r.cov.lower_bound << ','
      << r.correlation << ',' << r.cov.n << '\n';
  out.csv = csv.str();
}

inline void run_modulus(const ExperimentConfig& cfg, ExperimentResult& out) {
  const auto r = modulus_experiment(cfg);
  Json rows = Json::array();
  auto csv = csv_stream();
  csv << "delta,q10,median,q90,mean\n";
  for (const auto& m : r.rows) {
    rows.push_back(Json{{"delta", m.delta}, {"q10", m.q10}, {"median", m.median}, {"q90", m.q90}, {"mean", m.mean}});
    csv << m.delta << ',' << m.q10 << ',' << m.median << ',' << m.q90 << ',' << m.mean << '\n';
  }
  out.document["statistics"] = Json{{"s_window", r.s_window}, {"rows", rows}};
  out.document["diagnostics"] = Json{{"monotonicity_violations", r.monotonicity_violations},
                                     {"truncation_boundary_hits", r.truncation_hits}};
  out.csv = csv.str();
}

inline void run_corridor(const ExperimentConfig& cfg, ExperimentResult& out) {
  const auto r = corridor_experiment(cfg);
  const double ratio = r.unconstrained.hits > 0
                           ? static_cast<double>(r.restricted.hits) / static_cast<double>(r.unconstrained.hits)
                           : 0.0;
  out.document["statistics"] = Json{{"restricted", tail_json(r.restricted)},
                                    {"unconstrained", tail_json(r.unconstrained)},
                                    {"hit_ratio", ratio},
                                    {"half_width", r.corridor.half_width},
                                    {"geodesic_exits", r.geodesic_exits}};
  out.document["diagnostics"] =
      Json{{"coupling_violations", r.coupling_violations}, {"unreachable", r.unreachable}};
  auto csv = csv_stream();
  csv << "t,restricted_p_hat,restricted_ci_lo,restricted_ci_hi,unconstrained_p_hat,unconstrained_ci_lo,"
         "unconstrained_ci_hi,hit_ratio,geodesic_exits\n"
      << r.restricted.t << ',' << r.restricted.p_hat << ',' << r.restricted.ci_lo << ',' << r.restricted.ci_hi << ','
      << r.unconstrained.p_hat << ',' << r.unconstrained.ci_lo << ',' << r.unconstrained.ci_hi << ',' << ratio << ','
      << r.geodesic_exits << '\n';
  out.csv = csv.str();
}

inline void run_profile(const ExperimentConfig& cfg, ExperimentResult& out) {
  const WeightField field{replica_seed(cfg.seed, 0)};
  const bool p2l = cfg.geometry == Geometry::p2l;
  Profile p;
  try {
    p = p2l ? flat_profile(field, cfg.N, cfg.s_lo, cfg.s_hi, cfg.trunc_c) : droplet_profile(field, cfg.N, cfg.s_lo, cfg.s_hi);
  } catch (const InvalidArgument& e) {
    throw ConfigError("s_hi", e.what());
  }
  const ScaledProfile sp = p2l ? scale_p2l_profile(p, cfg.N) : scale_p2p_profile(p, cfg.N, false);
  const auto e = profile_extrema(sp, cfg.s_lo, cfg.s_hi);
  out.document["statistics"] = Json{{"kind", to_string(sp.kind)},
                                    {"sites", p.size()},
                                    {"argmax", e.argmax},
                                    {"max", e.max},
                                    {"argmin", e.argmin},
                                    {"min", e.min}};
  out.document["diagnostics"] = Json{{"truncation_warning", p.truncation_warning}};
  std::ostringstream csv;
  write_profile_csv(csv, p);
  out.csv = csv.str();
}

inline void run_geodesic(const ExperimentConfig& cfg, ExperimentResult& out) {
  const WeightField field{replica_seed(cfg.seed, 0)};
  LatticePoint target;
  try {
    target = scaled_target(cfg.N, cfg.s);
  } catch (const InvalidArgument& e) {
    throw ConfigError("s", e.what());
  }
  const SourceSpec source = cfg.geometry == Geometry::p2l
                                ? SourceSpec{default_truncation(0, 2 * cfg.N, psi(target), psi(target), cfg.trunc_c)}
                                : SourceSpec{LatticePoint{0, 0}};
  const auto g = backtrack(field, source, target, std::nullopt, cfg.checkpoint_stride);
  const auto mid = line_intersection(g, cfg.N);
  out.document["statistics"] = Json{{"passage_time", path_weight(field, g)},
                                    {"source", Json{{"x", g.front().x}, {"y", g.front().y}}},
                                    {"target", Json{{"x", target.x}, {"y", target.y}}},
                                    {"midpoint", Json{{"x", mid.x}, {"y", mid.y}}},
                                    {"transversal_fluctuation", transversal_fluctuation(g)},
                                    {"steps", g.size() - 1}};
  out.document["diagnostics"] = Json::object();
  std::ostringstream csv;
  write_path_csv(csv, g);
  out.csv = csv.str();
}

}  // namespace detail

/// Runs the configured experiment. Does not touch the filesystem.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult out;
  out.document["format_version"] = kFormatVersion;
  out.document["config"] = config_to_json(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  switch (cfg.experiment) {
    case ExperimentKind::tail: detail::run_tail(cfg, out); break;
    case ExperimentKind::extrema: detail::run_extrema(cfg, out); break;
    case ExperimentKind::stationarity: detail::run_stationarity(cfg, out); break;
    case ExperimentKind::association: detail::run_association(cfg, out); break;
    case ExperimentKind::modulus: detail::run_modulus(cfg, out); break;
    case ExperimentKind::corridor: detail::run_corridor(cfg, out); break;
    case ExperimentKind::profile: detail::run_profile(cfg, out); break;
    case ExperimentKind::geodesic: detail::run_geodesic(cfg, out); break;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.document["timing"] = Json{{"wall_clock_seconds", secs}};
  return out;
}

struct WrittenFiles {
  std::filesystem::path json;
  std::filesystem::path csv;
};

inline WrittenFiles write_result(const ExperimentResult& r, const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  WrittenFiles files{dir / (stem + ".json"), dir / (stem + ".csv")};
  std::ofstream js(files.json);
  std::ofstream cs(files.csv);
  if (!js || !cs) throw std::runtime_error("cannot write results under " + dir.string());
  js << r.document.dump(2) << '\n';
  cs << r.csv;
  if (!js || !cs) throw std::runtime_error("write failed under " + dir.string());
  return files;
}

/// run_experiment + write_result into cfg.output, named after the experiment.
inline ExperimentResult run_config(const ExperimentConfig& cfg) {
  auto r = run_experiment(cfg);
  write_result(r, cfg.output, std::string(to_string(cfg.experiment)));
  return r;
}

}  // namespace lpp
