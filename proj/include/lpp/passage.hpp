#pragma once

// Last passage times by anti-diagonal sweeps.
//
// Conventions: a path's weight includes its first vertex and excludes its
// last. Internally every sweep carries S(v), the best weight of a path from
// the source to v including v:
//
//   S(v) = w(v) + max(S(v - e1), S(v - e2)),   S(source) = w(source)
//
// and the public passage time to v is max(S(v - e1), S(v - e2)). Each cell
// performs one addition, so S(v) is accumulated in path order and equals the
// left-to-right sum along its argmax path bit for bit.
//
// One frontier (a single anti-diagonal of S values) is live at a time;
// weights are regenerated from the field per level.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <variant>
#include <vector>

#include "lpp/numeric.hpp"
#include "lpp/error.hpp"
#include "lpp/lattice.hpp"
#include "lpp/weights.hpp"

namespace lpp {

/// Max-plus zero: absorbing for +, identity for max.
inline constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

constexpr bool is_reachable(double v) noexcept { return v != kUnreachable; }

/// A truncated piece of the line L_level used as a source.
struct LineSource {
  std::int64_t level = 0;
  std::int64_t psi_lo = 0;
  std::int64_t psi_hi = 0;

  LineInterval interval() const { return make_interval(level, psi_lo, psi_hi); }
};

using SourceSpec = std::variant<LatticePoint, LineSource>;

inline std::int64_t source_level(const SourceSpec& s) {
  return std::visit([](const auto& v) -> std::int64_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, LatticePoint>) {
      return phi(v);
    } else {
      return v.level;
    }
  }, s);
}

/// One anti-diagonal of S values over psi in [lo, hi] (step 2), padded with
/// one unreachable cell on each side so neighbours never need bounds checks.
class Frontier {
 public:
  Frontier() = default;

  void reset(std::int64_t level, std::int64_t lo, std::int64_t hi, bool track_origin = false) {
    level_ = level;
    lo_ = lo;
    hi_ = hi;
    const std::size_t n = hi < lo ? 0 : static_cast<std::size_t>((hi - lo) / 2 + 1);
    buf_.assign(n + 2, kUnreachable);
    if (track_origin) {
      origin_.assign(n + 2, 0);
    } else {
      origin_.clear();
    }
  }

  std::int64_t level() const noexcept { return level_; }
  std::int64_t lo() const noexcept { return lo_; }
  std::int64_t hi() const noexcept { return hi_; }
  bool empty() const noexcept { return hi_ < lo_; }
  std::size_t size() const noexcept { return buf_.size() - 2; }
  bool tracks_origin() const noexcept { return !origin_.empty(); }

  double at(std::int64_t psi_value) const noexcept {
    if (psi_value < lo_ || psi_value > hi_ || !same_parity(psi_value, level_)) return kUnreachable;
    return buf_[static_cast<std::size_t>((psi_value - lo_) / 2 + 1)];
  }
  std::int64_t origin_at(std::int64_t psi_value) const noexcept {
    return origin_[static_cast<std::size_t>((psi_value - lo_) / 2 + 1)];
  }

  std::span<double> values() noexcept { return {buf_.data() + 1, size()}; }
  std::span<const double> values() const noexcept { return {buf_.data() + 1, size()}; }
  std::span<std::int64_t> origins() noexcept { return {origin_.data() + 1, size()}; }

  const double* padded() const noexcept { return buf_.data(); }
  double* padded() noexcept { return buf_.data(); }
  const std::int64_t* padded_origin() const noexcept { return origin_.data(); }
  std::int64_t* padded_origin() noexcept { return origin_.data(); }

  /// Predecessor max for a site at level()+1: max(S(v - e1), S(v - e2)).
  /// v - e1 has psi - 1 and v - e2 has psi + 1.
  double predecessor_max(std::int64_t target_psi) const noexcept {
    return std::max(at(target_psi - 1), at(target_psi + 1));
  }

 private:
  std::int64_t level_ = 0;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = -1;
  std::vector<double> buf_{kUnreachable, kUnreachable};
  std::vector<std::int64_t> origin_;
};

namespace detail {

/// Computes `next` at prev.level()+1 over [lo, hi] from `prev` and the level's
/// weights. Requires prev.lo()-1 <= lo and hi <= prev.hi()+1.
inline void step(const Frontier& prev, std::int64_t lo, std::int64_t hi, std::span<const double> weights,
                 Frontier& next) {
  const bool track = prev.tracks_origin();
  next.reset(prev.level() + 1, lo, hi, track);
  if (hi < lo) return;
  const std::size_t n = next.size();
  const double* p = prev.padded() + (1 + (lo - 1 - prev.lo()) / 2);
  double* s = next.values().data();
  const double* w = weights.data();
  if (!track) {
    for (std::size_t k = 0; k < n; ++k) s[k] = w[k] + std::max(p[k], p[k + 1]);
    return;
  }
  // Origin tracking follows the backtracking tie rule: ties go to v - e2.
  const std::int64_t* po = prev.padded_origin() + (1 + (lo - 1 - prev.lo()) / 2);
  std::int64_t* so = next.origins().data();
  for (std::size_t k = 0; k < n; ++k) {
    const bool up = p[k + 1] >= p[k];
    s[k] = w[k] + (up ? p[k + 1] : p[k]);
    so[k] = up ? po[k + 1] : po[k];
  }
}

inline std::int64_t round_up_to_parity(std::int64_t v, std::int64_t level) { return same_parity(v, level) ? v : v + 1; }
inline std::int64_t round_down_to_parity(std::int64_t v, std::int64_t level) { return same_parity(v, level) ? v : v - 1; }

}  // namespace detail

/// What a sweep computes: the source, the window of target sites on
/// target_level, and an optional corridor confining every path vertex.
struct SweepPlan {
  SourceSpec source;
  std::int64_t target_level = 0;
  std::int64_t psi_lo = 0;
  std::int64_t psi_hi = 0;
  std::optional<Corridor> corridor;
  bool track_origin = false;

  /// Admissible psi range at `level` before intersecting with the forward
  /// cone: the backward cone of the target window, cut by the corridor.
  std::pair<std::int64_t, std::int64_t> window_at(std::int64_t level) const {
    const std::int64_t back = target_level - level;
    std::int64_t lo = psi_lo - back;
    std::int64_t hi = psi_hi + back;
    if (corridor) {
      const auto [clo, chi] = corridor->cross_section(level);
      lo = std::max(lo, clo);
      hi = std::min(hi, chi);
    }
    return {detail::round_up_to_parity(lo, level), detail::round_down_to_parity(hi, level)};
  }
};

namespace detail {

/// Computes the frontier one level above `cur` into `next`.
template <WeightSource F>
void advance(const F& field, const SweepPlan& plan, const Frontier& cur, Frontier& next, std::vector<double>& wbuf) {
  const std::int64_t level = cur.level() + 1;
  auto [lo, hi] = plan.window_at(level);
  lo = std::max(lo, cur.lo() - 1);
  hi = std::min(hi, cur.hi() + 1);
  if (cur.empty()) hi = lo - 2;
  const std::size_t n = hi < lo ? 0 : static_cast<std::size_t>((hi - lo) / 2 + 1);
  wbuf.resize(n);
  if (n > 0) field.fill_diagonal(level, lo, hi, wbuf);
  step(cur, lo, hi, wbuf, next);
}

template <WeightSource F>
Frontier source_frontier(const F& field, const SweepPlan& plan) {
  const std::int64_t start = source_level(plan.source);
  auto [lo, hi] = plan.window_at(start);
  if (const auto* pt = std::get_if<LatticePoint>(&plan.source)) {
    const std::int64_t q = psi(*pt);
    const bool inside = q >= lo && q <= hi;
    lo = inside ? q : 1;
    hi = inside ? q : 0;
  } else {
    const auto iv = std::get<LineSource>(plan.source).interval();
    lo = std::max(lo, iv.psi_lo);
    hi = std::min(hi, iv.psi_hi);
  }
  Frontier cur;
  cur.reset(start, lo, hi, plan.track_origin);
  if (!cur.empty()) {
    field.fill_diagonal(start, lo, hi, cur.values());
    if (plan.track_origin) {
      auto o = cur.origins();
      for (std::size_t k = 0; k < o.size(); ++k) o[k] = lo + 2 * static_cast<std::int64_t>(k);
    }
  }
  return cur;
}

}  // namespace detail

/// Runs the sweep from the source through level target_level - 1 and returns
/// that last frontier. `on_level` sees every frontier in order, starting with
/// the source level.
template <WeightSource F>
Frontier sweep(const F& field, const SweepPlan& plan,
               const std::function<void(const Frontier&)>& on_level = {}) {
  const std::int64_t start = source_level(plan.source);
  if (plan.target_level <= start) throw InvalidArgument("sweep: target level must exceed the source level");
  Frontier cur = detail::source_frontier(field, plan);
  if (on_level) on_level(cur);
  Frontier next;
  std::vector<double> wbuf;
  while (cur.level() + 1 < plan.target_level) {
    detail::advance(field, plan, cur, next, wbuf);
    std::swap(cur, next);
    if (on_level) on_level(cur);
  }
  return cur;
}

/// Passage-time values to the sites of one anti-diagonal.
struct Profile {
  std::int64_t level = 0;
  std::vector<std::int64_t> psi_values;
  std::vector<double> values;
  SourceSpec source = LatticePoint{};
  std::optional<Corridor> corridor;
  /// Line sources only: psi of the argmax start point per target.
  std::vector<std::int64_t> start_psi;
  /// Line sources only: some argmax start lies within the boundary margin of
  /// the truncation window.
  bool truncation_warning = false;

  std::size_t size() const noexcept { return values.size(); }
  bool reachable(std::size_t i) const noexcept { return is_reachable(values[i]); }
  LatticePoint point(std::size_t i) const { return from_space_time(level, psi_values[i]); }

  /// Value at a given psi (which must be one of psi_values).
  double at_psi(std::int64_t q) const {
    if (psi_values.empty() || q < psi_values.front() || q > psi_values.back() || !same_parity(q, level)) {
      throw InvalidArgument("Profile::at_psi: psi outside the profile");
    }
    return values[static_cast<std::size_t>((q - psi_values.front()) / 2)];
  }
};

namespace detail {

inline Profile read_profile(const Frontier& last, const SweepPlan& plan) {
  Profile out;
  out.level = plan.target_level;
  out.source = plan.source;
  out.corridor = plan.corridor;
  for (std::int64_t q = plan.psi_lo; q <= plan.psi_hi; q += 2) {
    double v = last.predecessor_max(q);
    if (plan.corridor && !corridor_contains(*plan.corridor, from_space_time(plan.target_level, q))) {
      v = kUnreachable;
    }
    out.psi_values.push_back(q);
    out.values.push_back(v);
    if (plan.track_origin) {
      std::int64_t origin = 0;
      if (is_reachable(v)) {
        const double a = last.at(q - 1);
        const double b = last.at(q + 1);
        origin = b >= a ? last.origin_at(q + 1) : last.origin_at(q - 1);
      }
      out.start_psi.push_back(origin);
    }
  }
  return out;
}

inline void check_window(std::int64_t level, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvalidArgument("target psi window is empty");
  if (!same_parity(lo, level) || !same_parity(hi, level)) {
    throw InvalidArgument("target psi window not parity-consistent with the target level");
  }
}

}  // namespace detail

/// Point-to-point passage times from `source` to every site of L_{target_level}
/// with psi in [psi_lo, psi_hi]. Sites outside the up-right cone of the source
/// are unreachable.
template <WeightSource F>
Profile p2p_profile(const F& field, const LatticePoint& source, std::int64_t target_level, std::int64_t psi_lo,
                    std::int64_t psi_hi) {
  if (target_level <= phi(source)) throw InvalidArgument("p2p_profile: target level must exceed phi(source)");
  detail::check_window(target_level, psi_lo, psi_hi);
  SweepPlan plan{source, target_level, psi_lo, psi_hi, std::nullopt, false};
  return detail::read_profile(sweep(field, plan), plan);
}

/// Margin (psi units) within which an argmax start point counts as touching
/// the truncation boundary: N^{2/3} with N = (target_level - source_level)/2.
inline std::int64_t truncation_margin(std::int64_t source_level, std::int64_t target_level) {
  const double n = std::max<double>(1.0, static_cast<double>(target_level - source_level) / 2.0);
  return static_cast<std::int64_t>(std::ceil(cbrt_rn(n * n)));
}

/// Truncation window on L_{source_level} covering [psi_lo, psi_hi] widened by
/// c_trunc * N^{2/3} on each side.
inline LineSource default_truncation(std::int64_t source_level, std::int64_t target_level, std::int64_t psi_lo,
                                     std::int64_t psi_hi, double c_trunc = 6.0) {
  const double n = std::max<double>(1.0, static_cast<double>(target_level - source_level) / 2.0);
  const auto pad = static_cast<std::int64_t>(std::ceil(c_trunc * cbrt_rn(n * n)));
  const auto iv = make_interval(source_level, psi_lo - pad - 1, psi_hi + pad + 1);
  return {source_level, iv.psi_lo, iv.psi_hi};
}

/// Line-to-point passage times: paths may start anywhere on the truncated
/// source line (start weight included) and end at each target site.
template <WeightSource F>
Profile line_to_point_profile(const F& field, std::int64_t source_level, std::int64_t psi_trunc_lo,
                              std::int64_t psi_trunc_hi, std::int64_t target_level, std::int64_t psi_lo,
                              std::int64_t psi_hi) {
  if (target_level <= source_level) throw InvalidArgument("line_to_point_profile: source level must be below target");
  detail::check_window(target_level, psi_lo, psi_hi);
  const auto trunc = make_interval(source_level, psi_trunc_lo, psi_trunc_hi);
  SweepPlan plan{LineSource{source_level, trunc.psi_lo, trunc.psi_hi}, target_level, psi_lo, psi_hi, std::nullopt,
                 true};
  Profile out = detail::read_profile(sweep(field, plan), plan);
  const std::int64_t margin = truncation_margin(source_level, target_level);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out.reachable(i)) continue;
    const auto q = out.start_psi[i];
    if (q - trunc.psi_lo < margin || trunc.psi_hi - q < margin) out.truncation_warning = true;
  }
  return out;
}

/// Maximum path weight over paths that stay inside `c`. Returns kUnreachable
/// if no admissible path exists.
template <WeightSource F>
double corridor_passage(const F& field, const SourceSpec& source, const LatticePoint& target, const Corridor& c) {
  c.validate();
  if (!corridor_contains(c, target)) throw InvalidArgument("corridor_passage: target outside corridor");
  const std::int64_t start = source_level(source);
  if (const auto* pt = std::get_if<LatticePoint>(&source)) {
    if (!corridor_contains(c, *pt)) throw InvalidArgument("corridor_passage: source outside corridor");
    if (*pt == target) return 0.0;
  } else if (start < c.start_level) {
    throw InvalidArgument("corridor_passage: source line below corridor start");
  }
  if (phi(target) <= start) throw InvalidArgument("corridor_passage: target must lie above the source");
  SweepPlan plan{source, phi(target), psi(target), psi(target), c, false};
  return sweep(field, plan).predecessor_max(psi(target));
}

/// T_{u,v} for u <= v coordinate-wise.
template <WeightSource F>
double p2p(const F& field, const LatticePoint& u, const LatticePoint& v) {
  if (u.x > v.x || u.y > v.y) throw InvalidArgument("p2p: endpoints are not ordered u <= v");
  if (u == v) return 0.0;
  return p2p_profile(field, u, phi(v), psi(v), psi(v)).values.front();
}

/// T_{L_r, v} over the given truncation of L_r.
template <WeightSource F>
double line_to_point(const F& field, const LineSource& line, const LatticePoint& v) {
  return line_to_point_profile(field, line.level, line.psi_lo, line.psi_hi, phi(v), psi(v), psi(v)).values.front();
}

/// CSV rows `level,psi,value,reachable`, values with 17 significant digits.
inline void write_profile_csv(std::ostream& os, const Profile& p, bool header = true) {
  if (header) os << "level,psi,value,reachable\n";
  std::ostringstream line;
  line << std::setprecision(17);
  for (std::size_t i = 0; i < p.size(); ++i) {
    line.str({});
    line << p.level << ',' << p.psi_values[i] << ',';
    if (p.reachable(i)) {
      line << p.values[i] << ",1\n";
    } else {
      line << "-inf,0\n";
    }
    os << line.str();
  }
}

}  // namespace lpp
