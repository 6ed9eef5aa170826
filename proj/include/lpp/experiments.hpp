#pragma once

// Monte Carlo experiments on exponential LPP: one-point tails, running
// extrema of scaled profiles, stationarity, association, modulus of
// continuity, and corridor-restricted passage.
//
// Replica k of an experiment with master seed m always sees the field
// WeightField{replica_seed(m, k)}; experiments with several independent
// streams (one per s value) first derive stream_seed(m, i). Aggregation is
// in replica order, so results do not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpp/numeric.hpp"
#include "lpp/error.hpp"
#include "lpp/geodesic.hpp"
#include "lpp/lattice.hpp"
#include "lpp/parallel.hpp"
#include "lpp/passage.hpp"
#include "lpp/scaling.hpp"
#include "lpp/stats.hpp"
#include "lpp/weights.hpp"

namespace lpp {

enum class Geometry { p2p, p2l };
enum class Direction { upper, lower };
enum class Process { airy1, airy2 };
enum class ExperimentKind { profile, geodesic, tail, extrema, stationarity, association, modulus, corridor };

inline std::string_view to_string(Geometry g) { return g == Geometry::p2p ? "p2p" : "p2l"; }
inline std::string_view to_string(Direction d) { return d == Direction::upper ? "upper" : "lower"; }
inline std::string_view to_string(Process p) { return p == Process::airy1 ? "airy1" : "airy2"; }
inline std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::profile: return "profile";
    case ExperimentKind::geodesic: return "geodesic";
    case ExperimentKind::tail: return "tail";
    case ExperimentKind::extrema: return "extrema";
    case ExperimentKind::stationarity: return "stationarity";
    case ExperimentKind::association: return "association";
    case ExperimentKind::modulus: return "modulus";
    case ExperimentKind::corridor: return "corridor";
  }
  return "unknown";
}

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::tail;
  std::uint64_t seed = 0;
  std::int64_t N = 0;
  std::int64_t n_samples = 0;

  Geometry geometry = Geometry::p2p;
  Direction direction = Direction::upper;
  Process process = Process::airy2;

  std::vector<double> t_list{1.0};
  double s = 0.0;
  std::vector<double> s_list{0.0, 0.5, 1.0};
  double s1 = 0.0;
  double s2 = 0.5;
  double s_lo = 0.0;    // profile window
  double s_hi = 1.0;
  double s_window = 1.0;
  std::vector<double> delta_list{0.04, 0.16};

  double corridor_c = 1.0;  // half width = floor(c N^{2/3}) psi units
  double kappa = 0.0;       // geodesic containment checked above level 2 kappa N
  double trunc_c = 6.0;
  std::int64_t checkpoint_stride = kDefaultCheckpointStride;
  int threads = 1;
  std::string output = ".";
};

// ---------------------------------------------------------------- one point

struct OnePointValues {
  double p2p = kUnreachable;
  double p2l = kUnreachable;
  std::int64_t start_psi = 0;
  bool truncation_hit = false;
};

/// T_N(s) and/or T*_N(s) on one realization. When both are requested the
/// point-to-point frontier rides along the line-to-point sweep and shares
/// its weights; values are identical to separate sweeps.
inline OnePointValues sample_one_point(const WeightField& field, std::int64_t N, double s, double trunc_c,
                                       bool want_p2p, bool want_p2l) {
  OnePointValues out;
  const std::int64_t level = 2 * N;
  const std::int64_t k = scaled_offset(N, s);
  const std::int64_t q = -2 * k;
  if (!want_p2l) {
    out.p2p = p2p(field, {0, 0}, scaled_target(N, s));
    return out;
  }
  const LineSource line = default_truncation(0, level, q, q, trunc_c);
  if (want_p2p && (line.psi_lo > 0 || line.psi_hi < 0)) {
    // The origin is outside the line window; no weights to share.
    out.p2p = p2p(field, {0, 0}, scaled_target(N, s));
    want_p2p = false;
  } else if (want_p2p) {
    (void)scaled_target(N, s);  // quadrant check only
  }

  const SweepPlan lp{line, level, q, q, std::nullopt, true};
  const SweepPlan pp{LatticePoint{0, 0}, level, q, q, std::nullopt, false};
  Frontier L = detail::source_frontier(field, lp);
  Frontier P;
  if (want_p2p) P = detail::source_frontier(field, pp);
  Frontier nl;
  Frontier np;
  std::vector<double> wbuf;
  for (std::int64_t r = 1; r < level; ++r) {
    auto [lo, hi] = lp.window_at(r);
    lo = std::max(lo, L.lo() - 1);
    hi = std::min(hi, L.hi() + 1);
    const std::size_t n = hi < lo ? 0 : static_cast<std::size_t>((hi - lo) / 2 + 1);
    wbuf.resize(n);
    if (n > 0) field.fill_diagonal(r, lo, hi, wbuf);
    detail::step(L, lo, hi, wbuf, nl);
    std::swap(L, nl);
    if (want_p2p) {
      auto [plo, phi_] = pp.window_at(r);
      plo = std::max(plo, P.lo() - 1);
      phi_ = std::min(phi_, P.hi() + 1);
      if (P.empty()) phi_ = plo - 2;
      if (phi_ >= plo) {
        // The point source's cone sits inside the line's window.
        const auto off = static_cast<std::size_t>((plo - lo) / 2);
        const auto len = static_cast<std::size_t>((phi_ - plo) / 2 + 1);
        detail::step(P, plo, phi_, std::span<const double>(wbuf).subspan(off, len), np);
      } else {
        detail::step(P, plo, phi_, {}, np);
      }
      std::swap(P, np);
    }
  }
  out.p2l = L.predecessor_max(q);
  out.start_psi = L.at(q + 1) >= L.at(q - 1) ? L.origin_at(q + 1) : L.origin_at(q - 1);
  const std::int64_t margin = truncation_margin(0, level);
  out.truncation_hit = out.start_psi - line.psi_lo < margin || line.psi_hi - out.start_psi < margin;
  if (want_p2p) out.p2p = P.predecessor_max(q);
  return out;
}

struct OnePointSamples {
  std::int64_t N = 0;
  double s = 0.0;
  std::vector<double> p2p;  // raw passage times, replica order
  std::vector<double> p2l;
  std::int64_t truncation_hits = 0;
};

inline OnePointSamples sample_one_point_values(std::uint64_t master, std::int64_t N, double s, std::int64_t n,
                                               int threads, double trunc_c, bool want_p2p, bool want_p2l) {
  auto rows = run_replicas<OnePointValues>(n, threads, [&](std::int64_t k) {
    return sample_one_point(WeightField{replica_seed(master, static_cast<std::uint64_t>(k))}, N, s, trunc_c,
                            want_p2p, want_p2l);
  });
  OnePointSamples out;
  out.N = N;
  out.s = s;
  for (const auto& r : rows) {
    if (want_p2p) out.p2p.push_back(r.p2p);
    if (want_p2l) out.p2l.push_back(r.p2l);
    out.truncation_hits += r.truncation_hit ? 1 : 0;
  }
  return out;
}

// ---------------------------------------------------------------- tails

struct TailEstimate {
  double t = 0.0;
  double threshold = 0.0;
  std::int64_t n_samples = 0;
  std::int64_t hits = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  Direction direction = Direction::upper;
  Geometry geometry = Geometry::p2p;
};

/// Raw passage-time cut for deviation t.
inline double tail_threshold(Geometry g, Direction d, std::int64_t N, double s, double t) {
  const double x = d == Direction::upper ? t : -t;
  return g == Geometry::p2p ? p2p_threshold(x, N, s) : unscale(x, N);
}

inline TailEstimate tail_from_values(const std::vector<double>& raw, Geometry g, Direction d, std::int64_t N,
                                     double s, double t) {
  TailEstimate e;
  e.t = t;
  e.geometry = g;
  e.direction = d;
  e.threshold = tail_threshold(g, d, N, s, t);
  e.n_samples = static_cast<std::int64_t>(raw.size());
  for (double v : raw) {
    if (d == Direction::upper ? v >= e.threshold : v <= e.threshold) ++e.hits;
  }
  e.p_hat = static_cast<double>(e.hits) / static_cast<double>(e.n_samples);
  const auto ci = stats::wilson_interval(e.hits, e.n_samples);
  e.ci_lo = ci.lo;
  e.ci_hi = ci.hi;
  return e;
}

inline void validate_tail_config(const ExperimentConfig& cfg) {
  if (cfg.N < 1) throw ConfigError("N", "must be >= 1");
  if (cfg.n_samples < 1) throw ConfigError("n_samples", "must be >= 1");
  if (cfg.t_list.empty()) throw ConfigError("t", "at least one deviation is required");
  if (cfg.geometry == Geometry::p2l && cfg.s != 0.0) {
    throw ConfigError("s", "point-to-line tails are taken at s = 0 (the law of T*_N(s) does not depend on s)");
  }
  if (cfg.geometry == Geometry::p2p) {
    try {
      (void)scaled_target(cfg.N, cfg.s);
    } catch (const InvalidArgument& e) {
      throw ConfigError("s", e.what());
    }
  }
  for (double t : cfg.t_list) {
    if (!std::isfinite(t)) throw ConfigError("t", "must be finite");
    if (cfg.direction == Direction::lower && tail_threshold(cfg.geometry, cfg.direction, cfg.N, cfg.s, t) <= 0.0) {
      throw ConfigError("t", "lower-tail threshold must stay positive");
    }
  }
}

struct TailRun {
  std::vector<TailEstimate> estimates;  // one per t, same replicas
  std::int64_t truncation_hits = 0;
};

/// Tail estimates at every t of cfg.t_list from one set of replicas.
inline TailRun estimate_tails(const ExperimentConfig& cfg) {
  validate_tail_config(cfg);
  const bool p2l = cfg.geometry == Geometry::p2l;
  const auto samples =
      sample_one_point_values(cfg.seed, cfg.N, cfg.s, cfg.n_samples, cfg.threads, cfg.trunc_c, !p2l, p2l);
  TailRun run;
  run.truncation_hits = samples.truncation_hits;
  for (double t : cfg.t_list) {
    run.estimates.push_back(tail_from_values(p2l ? samples.p2l : samples.p2p, cfg.geometry, cfg.direction, cfg.N,
                                             cfg.s, t));
  }
  return run;
}

inline TailEstimate estimate_tail(const ExperimentConfig& cfg) {
  ExperimentConfig one = cfg;
  if (one.t_list.size() > 1) one.t_list.resize(1);
  return estimate_tails(one).estimates.front();
}

// ---------------------------------------------------------------- fits

struct FitPoint {
  double t = 0.0;
  double p_hat = 0.0;
  std::int64_t hits = std::numeric_limits<std::int64_t>::max();
};

struct ExponentFit {
  double power = 0.0;
  double coefficient = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
  std::vector<FitPoint> points;  // the points actually used
};

inline constexpr std::int64_t kMinFitHits = 20;

/// Least-squares slope of -log p_hat against t^power (with intercept),
/// using only points with at least kMinFitHits hits.
inline ExponentFit fit_exponent(const std::vector<FitPoint>& points, double power) {
  ExponentFit fit;
  fit.power = power;
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : points) {
    if (p.hits < kMinFitHits || !(p.p_hat > 0.0)) continue;
    fit.points.push_back(p);
    x.push_back(std::pow(p.t, power));
    y.push_back(-std::log(p.p_hat));
  }
  if (x.size() < 3) throw InvalidArgument("fit_exponent: fewer than 3 points with >= 20 hits");
  const auto lf = stats::least_squares(x, y);
  fit.coefficient = lf.slope;
  fit.stderr_ = lf.slope_stderr;
  fit.intercept = lf.intercept;
  return fit;
}

inline std::vector<FitPoint> fit_points(const std::vector<TailEstimate>& est) {
  std::vector<FitPoint> out;
  for (const auto& e : est) out.push_back({e.t, e.p_hat, e.hits});
  return out;
}

// ---------------------------------------------------------------- profiles

/// Droplet profile T_N(s) for s in [0, s_hi] (requires the targets to stay in
/// the quadrant).
inline Profile droplet_profile(const WeightField& field, std::int64_t N, double s_lo, double s_hi) {
  const std::int64_t k_lo = scaled_offset(N, s_lo);
  const std::int64_t k_hi = scaled_offset(N, s_hi);
  if (k_hi > N || k_lo < -N) throw InvalidArgument("droplet_profile: window leaves the lattice quadrant");
  return p2p_profile(field, {0, 0}, 2 * N, -2 * k_hi, -2 * k_lo);
}

/// Flat profile T*_N(s) for s in [s_lo, s_hi] from L_0 truncated c_trunc
/// N^{2/3} beyond the window.
inline Profile flat_profile(const WeightField& field, std::int64_t N, double s_lo, double s_hi, double trunc_c) {
  const std::int64_t k_lo = scaled_offset(N, s_lo);
  const std::int64_t k_hi = scaled_offset(N, s_hi);
  const auto line = default_truncation(0, 2 * N, -2 * k_hi, -2 * k_lo, trunc_c);
  return line_to_point_profile(field, 0, line.psi_lo, line.psi_hi, 2 * N, -2 * k_hi, -2 * k_lo);
}

// ---------------------------------------------------------------- extrema

struct ExtremaAtT {
  double t = 0.0;
  double mean_max = 0.0;
  double mean_min = 0.0;
  double se_max = 0.0;
  double se_min = 0.0;
  std::int64_t n_profiles = 0;
  double normalized_max = 0.0;  // mean_max / (log t)^{2/3}
  double normalized_min = 0.0;  // mean_min / (log t)^{1/3}
  // airy1 only: extrema of the un-normalized profile over raw s in [0, t].
  double raw_mean_max = 0.0;
  double raw_mean_min = 0.0;
  double raw_normalized_max = 0.0;
  double raw_normalized_min = 0.0;
};

struct ExtremaGrowthResult {
  std::int64_t N = 0;
  Process process = Process::airy2;
  std::vector<double> t_list;
  std::vector<ExtremaAtT> per_t;
  std::int64_t truncation_hits = 0;
  /// Per replica, max over [0, t_i] never decreased and min never increased.
  std::int64_t nesting_violations = 0;
};

inline void validate_extrema_config(const ExperimentConfig& cfg) {
  if (cfg.N < 1) throw ConfigError("N", "must be >= 1");
  if (cfg.n_samples < 2) throw ConfigError("n_samples", "extrema need >= 2 profiles for standard errors");
  if (cfg.t_list.empty()) throw ConfigError("t_list", "must not be empty");
  for (std::size_t i = 0; i < cfg.t_list.size(); ++i) {
    if (!(cfg.t_list[i] > 1.0)) throw ConfigError("t_list", "every t must exceed 1 (log t normalization)");
    if (i > 0 && !(cfg.t_list[i] > cfg.t_list[i - 1])) throw ConfigError("t_list", "must be strictly increasing");
  }
  if (cfg.process == Process::airy2 && scaled_offset(cfg.N, cfg.t_list.back()) > cfg.N) {
    throw ConfigError("t_list", "t_max (2N)^{2/3} exceeds N: droplet targets leave the lattice quadrant");
  }
}

inline ExtremaGrowthResult extrema_growth(const ExperimentConfig& cfg) {
  validate_extrema_config(cfg);
  const double t_max = cfg.t_list.back();
  const bool airy1 = cfg.process == Process::airy1;
  const double arg_scale = cbrt_rn(4.0);  // 2^{2/3}
  const double height_scale = cbrt_rn(2.0);

  struct Row {
    std::vector<double> max, min, raw_max, raw_min;
    bool truncation_hit = false;
    bool nesting_ok = true;
  };
  auto rows = run_replicas<Row>(cfg.n_samples, cfg.threads, [&](std::int64_t k) {
    const WeightField field{replica_seed(cfg.seed, static_cast<std::uint64_t>(k))};
    Row row;
    ScaledProfile prof;
    ScaledProfile raw;
    if (airy1) {
      const Profile p = flat_profile(field, cfg.N, 0.0, arg_scale * t_max, cfg.trunc_c);
      row.truncation_hit = p.truncation_warning;
      raw = scale_p2l_profile(p, cfg.N);
      prof = airy1_normalize(raw);
    } else {
      prof = scale_p2p_profile(droplet_profile(field, cfg.N, 0.0, t_max), cfg.N, true);
    }
    for (double t : cfg.t_list) {
      const auto e = profile_extrema(prof, 0.0, t);
      if (!row.max.empty() && (e.max < row.max.back() || e.min > row.min.back())) row.nesting_ok = false;
      row.max.push_back(e.max);
      row.min.push_back(e.min);
      if (airy1) {
        const auto r = profile_extrema(raw, 0.0, t);
        row.raw_max.push_back(r.max / height_scale);
        row.raw_min.push_back(r.min / height_scale);
      }
    }
    return row;
  });

  ExtremaGrowthResult out;
  out.N = cfg.N;
  out.process = cfg.process;
  out.t_list = cfg.t_list;
  for (const auto& r : rows) {
    out.truncation_hits += r.truncation_hit ? 1 : 0;
    out.nesting_violations += r.nesting_ok ? 0 : 1;
  }
  for (std::size_t i = 0; i < cfg.t_list.size(); ++i) {
    std::vector<double> mx, mn, rmx, rmn;
    for (const auto& r : rows) {
      mx.push_back(r.max[i]);
      mn.push_back(r.min[i]);
      if (airy1) {
        rmx.push_back(r.raw_max[i]);
        rmn.push_back(r.raw_min[i]);
      }
    }
    ExtremaAtT a;
    a.t = cfg.t_list[i];
    a.n_profiles = static_cast<std::int64_t>(rows.size());
    a.mean_max = stats::mean(mx);
    a.mean_min = stats::mean(mn);
    a.se_max = stats::standard_error(mx);
    a.se_min = stats::standard_error(mn);
    const double lt = std::log(a.t);
    a.normalized_max = a.mean_max / cbrt_rn(lt * lt);
    a.normalized_min = a.mean_min / cbrt_rn(lt);
    if (airy1) {
      a.raw_mean_max = stats::mean(rmx);
      a.raw_mean_min = stats::mean(rmn);
      a.raw_normalized_max = a.raw_mean_max / cbrt_rn(lt * lt);
      a.raw_normalized_min = a.raw_mean_min / cbrt_rn(lt);
    }
    out.per_t.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------- stationarity

struct KsPair {
  double s_a = 0.0;
  double s_b = 0.0;
  double statistic = 0.0;
  double p_value = 1.0;
};

struct StationarityResult {
  std::vector<double> s_list;
  std::vector<std::vector<double>> samples;  // scaled T*_N(s), one row per s
  std::vector<KsPair> pairs;
  std::int64_t truncation_hits = 0;
};

/// Scaled T*_N(s) at each s from disjoint seed streams, with pairwise
/// two-sample KS tests.
inline StationarityResult stationarity_check(const ExperimentConfig& cfg) {
  if (cfg.N < 1) throw ConfigError("N", "must be >= 1");
  if (cfg.n_samples < 1) throw ConfigError("n_samples", "must be >= 1");
  if (cfg.s_list.size() < 2) throw ConfigError("s_list", "need at least two s values");
  StationarityResult out;
  out.s_list = cfg.s_list;
  for (std::size_t i = 0; i < cfg.s_list.size(); ++i) {
    const auto smp = sample_one_point_values(stream_seed(cfg.seed, i), cfg.N, cfg.s_list[i], cfg.n_samples,
                                             cfg.threads, cfg.trunc_c, false, true);
    out.truncation_hits += smp.truncation_hits;
    std::vector<double> scaled;
    scaled.reserve(smp.p2l.size());
    for (double v : smp.p2l) scaled.push_back(center_scale_p2l(v, cfg.N));
    out.samples.push_back(std::move(scaled));
  }
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    for (std::size_t j = i + 1; j < out.samples.size(); ++j) {
      const auto ks = stats::ks_two_sample(out.samples[i], out.samples[j]);
      out.pairs.push_back({cfg.s_list[i], cfg.s_list[j], ks.statistic, ks.p_value});
    }
  }
  return out;
}

// ---------------------------------------------------------------- association

struct AssociationResult {
  double s1 = 0.0;
  double s2 = 0.0;
  stats::CovarianceEstimate cov;
  double correlation = 0.0;
};

/// Covariance of scaled T_N(s1), T_N(s2) on shared realizations.
inline AssociationResult association_check(const ExperimentConfig& cfg) {
  if (cfg.N < 1) throw ConfigError("N", "must be >= 1");
  if (cfg.n_samples < 3) throw ConfigError("n_samples", "need >= 3 replicas");
  for (auto [name, s] : {std::pair{"s1", cfg.s1}, std::pair{"s2", cfg.s2}}) {
    const auto k = scaled_offset(cfg.N, s);
    if (k > cfg.N || k < -cfg.N) throw ConfigError(name, "target leaves the lattice quadrant");
  }
  const double lo = std::min(cfg.s1, cfg.s2);
  const double hi = std::max(cfg.s1, cfg.s2);
  const auto q1 = -2 * scaled_offset(cfg.N, cfg.s1);
  const auto q2 = -2 * scaled_offset(cfg.N, cfg.s2);
  struct Pair {
    double a = 0.0, b = 0.0;
  };
  auto rows = run_replicas<Pair>(cfg.n_samples, cfg.threads, [&](std::int64_t k) {
    const Profile p = droplet_profile(WeightField{replica_seed(cfg.seed, static_cast<std::uint64_t>(k))}, cfg.N, lo, hi);
    return Pair{center_scale_p2p(p.at_psi(q1), cfg.N, cfg.s1, false),
                center_scale_p2p(p.at_psi(q2), cfg.N, cfg.s2, false)};
  });
  std::vector<double> a, b;
  for (const auto& r : rows) {
    a.push_back(r.a);
    b.push_back(r.b);
  }
  AssociationResult out;
  out.s1 = cfg.s1;
  out.s2 = cfg.s2;
  out.cov = stats::covariance(a, b);
  out.correlation = out.cov.covariance / std::sqrt(stats::variance(a) * stats::variance(b));
  return out;
}

// ---------------------------------------------------------------- modulus

struct ModulusRow {
  double delta = 0.0;
  double q10 = 0.0;
  double median = 0.0;
  double q90 = 0.0;
  double mean = 0.0;
};

struct ModulusResult {
  double s_window = 0.0;
  std::vector<ModulusRow> rows;
  std::vector<std::vector<double>> per_replica;  // [replica][delta]
  /// Replicas where the modulus decreased along the sorted delta list.
  std::int64_t monotonicity_violations = 0;
  std::int64_t truncation_hits = 0;
};

inline ModulusResult modulus_experiment(const ExperimentConfig& cfg) {
  if (cfg.N < 1) throw ConfigError("N", "must be >= 1");
  if (cfg.n_samples < 1) throw ConfigError("n_samples", "must be >= 1");
  if (!(cfg.s_window > 0.0)) throw ConfigError("s_window", "must be positive");
  if (cfg.delta_list.empty()) throw ConfigError("delta_list", "must not be empty");
  for (double d : cfg.delta_list) {
    if (!(d > 0.0) || d > 2.0 * cfg.s_window) throw ConfigError("delta_list", "each delta must lie in (0, 2 s_window]");
  }
  std::vector<double> deltas = cfg.delta_list;
  std::sort(deltas.begin(), deltas.end());

  struct Row {
    std::vector<double> mod;
    bool truncation_hit = false;
  };
  auto rows = run_replicas<Row>(cfg.n_samples, cfg.threads, [&](std::int64_t k) {
    const WeightField field{replica_seed(cfg.seed, static_cast<std::uint64_t>(k))};
    const Profile p = flat_profile(field, cfg.N, -cfg.s_window, cfg.s_window, cfg.trunc_c);
    const ScaledProfile sp = scale_p2l_profile(p, cfg.N);
    Row r;
    r.truncation_hit = p.truncation_warning;
    for (double d : deltas) r.mod.push_back(modulus_of_continuity(sp, d));
    return r;
  });

  ModulusResult out;
  out.s_window = cfg.s_window;
  for (const auto& r : rows) {
    out.per_replica.push_back(r.mod);
    out.truncation_hits += r.truncation_hit ? 1 : 0;
    for (std::size_t i = 1; i < r.mod.size(); ++i) {
      if (r.mod[i] < r.mod[i - 1]) {
        ++out.monotonicity_violations;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    std::vector<double> col;
    for (const auto& r : rows) col.push_back(r.mod[i]);
    out.rows.push_back({deltas[i], stats::quantile(col, 0.1), stats::quantile(col, 0.5), stats::quantile(col, 0.9),
                        stats::mean(col)});
  }
  return out;
}

// ---------------------------------------------------------------- corridor

struct CorridorExperimentResult {
  Corridor corridor;
  TailEstimate restricted;
  TailEstimate unconstrained;
  /// Replicas whose unconstrained geodesic left the corridor above level
  /// 2 kappa N.
  std::int64_t geodesic_exits = 0;
  /// Replicas with T** > T (must be zero).
  std::int64_t coupling_violations = 0;
  std::int64_t unreachable = 0;
};

/// Corridor around the straight segment from the source to u_N(s): for a
/// line source the center is the constant psi of the target.
inline Corridor experiment_corridor(const ExperimentConfig& cfg) {
  const std::int64_t q = -2 * scaled_offset(cfg.N, cfg.s);
  const double n = static_cast<double>(cfg.N);
  const auto hw = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(cfg.corridor_c * cbrt_rn(n * n))));
  const std::int64_t start_center = cfg.geometry == Geometry::p2p ? 0 : q;
  return Corridor{0, 2 * cfg.N, start_center, q, hw};
}

inline CorridorExperimentResult corridor_experiment(const ExperimentConfig& cfg) {
  if (cfg.N < 1) throw ConfigError("N", "must be >= 1");
  if (cfg.n_samples < 1) throw ConfigError("n_samples", "must be >= 1");
  if (cfg.t_list.empty()) throw ConfigError("t", "a deviation is required");
  if (!(cfg.corridor_c > 0.0)) throw ConfigError("corridor_c", "must be positive");
  if (!(cfg.kappa >= 0.0 && cfg.kappa < 1.0)) throw ConfigError("kappa", "must lie in [0, 1)");
  if (cfg.geometry == Geometry::p2l && cfg.s != 0.0) throw ConfigError("s", "point-to-line corridor runs use s = 0");
  LatticePoint target;
  try {
    target = scaled_target(cfg.N, cfg.s);
  } catch (const InvalidArgument& e) {
    throw ConfigError("s", e.what());
  }
  const Corridor c = experiment_corridor(cfg);
  const bool p2l = cfg.geometry == Geometry::p2l;
  const SourceSpec source = p2l ? SourceSpec{default_truncation(0, 2 * cfg.N, psi(target), psi(target), cfg.trunc_c)}
                                : SourceSpec{LatticePoint{0, 0}};
  const auto kappa_level = static_cast<std::int64_t>(std::floor(2.0 * cfg.kappa * static_cast<double>(cfg.N)));
  struct Row {
    double restricted = kUnreachable, free = kUnreachable;
    bool exited = false;
  };
  auto rows = run_replicas<Row>(cfg.n_samples, cfg.threads, [&](std::int64_t k) {
    const WeightField field{replica_seed(cfg.seed, static_cast<std::uint64_t>(k))};
    Row r;
    r.free = p2l ? line_to_point(field, std::get<LineSource>(source), target) : p2p(field, {0, 0}, target);
    r.restricted = corridor_passage(field, source, target, c);
    if (cfg.kappa == 0.0) {
      // The unconstrained geodesic lies in c exactly when the restricted
      // maximum attains the unconstrained one.
      r.exited = r.restricted != r.free;
    } else {
      const auto g = backtrack(field, source, target, std::nullopt, cfg.checkpoint_stride);
      r.exited = std::any_of(g.points.begin(), g.points.end(), [&](const LatticePoint& p) {
        return phi(p) >= kappa_level && !corridor_contains(c, p);
      });
    }
    return r;
  });

  CorridorExperimentResult out;
  out.corridor = c;
  std::vector<double> restricted, free;
  for (const auto& r : rows) {
    restricted.push_back(r.restricted);
    free.push_back(r.free);
    out.geodesic_exits += r.exited ? 1 : 0;
    out.coupling_violations += r.restricted > r.free ? 1 : 0;
    out.unreachable += is_reachable(r.restricted) ? 0 : 1;
  }
  const double t = cfg.t_list.front();
  out.restricted = tail_from_values(restricted, cfg.geometry, Direction::upper, cfg.N, cfg.s, t);
  out.unconstrained = tail_from_values(free, cfg.geometry, Direction::upper, cfg.N, cfg.s, t);
  return out;
}

}  // namespace lpp
