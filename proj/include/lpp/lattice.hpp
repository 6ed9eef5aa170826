#pragma once

// Lattice geometry for last passage percolation on Z^2.
//
// Two coordinate systems are used throughout: Cartesian (x, y) and the
// rotated pair (phi, psi) = (x + y, x - y). phi is "time" and indexes the
// anti-diagonal L_r = {x + y = r}; psi is the "space" coordinate along it.
// A site with phi = r always has psi of the same parity as r.

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "lpp/numeric.hpp"
#include "lpp/error.hpp"

namespace lpp {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

  friend std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
    return os << '(' << p.x << ',' << p.y << ')';
  }
};

struct SpaceTimeCoords {
  std::int64_t phi = 0;
  std::int64_t psi = 0;

  friend constexpr bool operator==(const SpaceTimeCoords&, const SpaceTimeCoords&) = default;
};

struct AntiDiagonal {
  std::int64_t r = 0;
};

constexpr std::int64_t phi(const LatticePoint& p) noexcept { return p.x + p.y; }
constexpr std::int64_t psi(const LatticePoint& p) noexcept { return p.x - p.y; }

constexpr bool same_parity(std::int64_t a, std::int64_t b) noexcept {
  return ((a - b) & 1) == 0;
}

constexpr SpaceTimeCoords to_space_time(const LatticePoint& p) noexcept {
  return {phi(p), psi(p)};
}

inline LatticePoint from_space_time(std::int64_t phi_value, std::int64_t psi_value) {
  if (!same_parity(phi_value, psi_value)) {
    throw InvalidArgument("from_space_time: phi and psi must have equal parity");
  }
  return {(phi_value + psi_value) / 2, (phi_value - psi_value) / 2};
}

inline LatticePoint from_space_time(const SpaceTimeCoords& c) {
  return from_space_time(c.phi, c.psi);
}

constexpr bool on_line(const LatticePoint& p, AntiDiagonal line) noexcept {
  return phi(p) == line.r;
}

/// (2N)^{2/3}, the KPZ transversal unit. Computed as cbrt((2N)^2) so perfect
/// cubes come out exact (8^{2/3} == 4, not 3.9999...).
inline double transversal_unit(std::int64_t N) {
  const double two_n = 2.0 * static_cast<double>(N);
  return cbrt_rn(two_n * two_n);
}

/// 2^{4/3} N^{1/3} = (16 N)^{1/3}, the KPZ fluctuation unit.
inline double fluctuation_unit(std::int64_t N) {
  return cbrt_rn(16.0 * static_cast<double>(N));
}

/// floor(s (2N)^{2/3}): the lattice offset of u_N(s) from the diagonal point.
inline std::int64_t scaled_offset(std::int64_t N, double s) {
  if (N < 1) throw InvalidArgument("scaled target requires N >= 1");
  return static_cast<std::int64_t>(std::floor(s * transversal_unit(N)));
}

struct ScaledTarget {
  std::int64_t N = 1;
  double s = 0.0;
};

/// u_N(s) = (N - floor(s (2N)^{2/3}), N + floor(s (2N)^{2/3})).
inline LatticePoint scaled_target(std::int64_t N, double s) {
  const std::int64_t k = scaled_offset(N, s);
  if (k > N || k < -N) {
    throw InvalidArgument("scaled_target: |s|(2N)^{2/3} exceeds N, target leaves the quadrant");
  }
  return {N - k, N + k};
}

inline LatticePoint scaled_target(const ScaledTarget& t) { return scaled_target(t.N, t.s); }

/// A run of sites on one anti-diagonal, psi_lo <= psi <= psi_hi.
/// Bounds are kept with the parity of `level`; use make_interval to snap.
struct LineInterval {
  std::int64_t level = 0;
  std::int64_t psi_lo = 0;
  std::int64_t psi_hi = 0;

  constexpr bool empty() const noexcept { return psi_lo > psi_hi; }
  constexpr std::int64_t size() const noexcept {
    return empty() ? 0 : (psi_hi - psi_lo) / 2 + 1;
  }
  constexpr bool contains(const LatticePoint& p) const noexcept {
    const auto q = psi(p);
    return phi(p) == level && q >= psi_lo && q <= psi_hi;
  }
};

/// Snaps [lo, hi] inward to the parity of `level`. May produce an empty interval.
constexpr LineInterval make_interval(std::int64_t level, std::int64_t lo, std::int64_t hi) noexcept {
  if (!same_parity(lo, level)) ++lo;
  if (!same_parity(hi, level)) --hi;
  return {level, lo, hi};
}

/// The sites u_N(s), s in [s_lo, s_hi]. The lowest one sits at offset
/// floor(s_lo (2N)^{2/3}), so its own s may fall just below s_lo.
inline LineInterval scaled_interval(std::int64_t N, double s_lo, double s_hi) {
  // psi = -2k, so increasing s runs toward decreasing psi.
  const std::int64_t k_lo = scaled_offset(N, s_lo);
  const std::int64_t k_hi = scaled_offset(N, s_hi);
  return make_interval(2 * N, -2 * k_hi, -2 * k_lo);
}

inline std::vector<LatticePoint> interval_points(const LineInterval& iv) {
  std::vector<LatticePoint> out;
  if (iv.empty()) return out;
  if (!same_parity(iv.psi_lo, iv.level) || !same_parity(iv.psi_hi, iv.level)) {
    throw InvalidArgument("interval_points: bounds not parity-consistent with level");
  }
  out.reserve(static_cast<std::size_t>(iv.size()));
  for (auto q = iv.psi_lo; q <= iv.psi_hi; q += 2) out.push_back(from_space_time(iv.level, q));
  return out;
}

/// Parallelogram strip between two anti-diagonals. Its center line runs
/// from psi_center_start on L_{start_level} to psi_center_end on
/// L_{end_level}; membership tolerates |psi - center| <= half_width.
/// All comparisons are exact integer cross-multiplications.
struct Corridor {
  std::int64_t start_level = 0;
  std::int64_t end_level = 1;
  std::int64_t psi_center_start = 0;
  std::int64_t psi_center_end = 0;
  std::int64_t half_width = 1;

  void validate() const {
    if (start_level >= end_level) throw InvalidArgument("corridor: start_level must be < end_level");
    if (half_width < 0) throw InvalidArgument("corridor: half_width must be >= 0");
  }

  constexpr std::int64_t span() const noexcept { return end_level - start_level; }

  /// Center numerator at level r: center(r) = center_numerator(r) / span().
  constexpr __int128 center_numerator(std::int64_t r) const noexcept {
    return static_cast<__int128>(psi_center_start) * span() +
           static_cast<__int128>(psi_center_end - psi_center_start) * (r - start_level);
  }

  /// Inclusive psi bounds of the cross-section at level r (not parity snapped).
  /// Returns lo > hi when r lies outside [start_level, end_level].
  constexpr std::pair<std::int64_t, std::int64_t> cross_section(std::int64_t r) const noexcept {
    if (r < start_level || r > end_level) return {1, 0};
    const __int128 d = span();
    const __int128 c = center_numerator(r);
    const __int128 lo_num = c - static_cast<__int128>(half_width) * d;
    const __int128 hi_num = c + static_cast<__int128>(half_width) * d;
    return {static_cast<std::int64_t>(ceil_div(lo_num, d)), static_cast<std::int64_t>(floor_div(hi_num, d))};
  }

 private:
  static constexpr __int128 floor_div(__int128 a, __int128 b) noexcept {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static constexpr __int128 ceil_div(__int128 a, __int128 b) noexcept { return -floor_div(-a, b); }
};

/// Straight corridor hugging the segment from `from` to `to`.
inline Corridor corridor_between(const LatticePoint& from, const LatticePoint& to, std::int64_t half_width) {
  Corridor c{phi(from), phi(to), psi(from), psi(to), half_width};
  c.validate();
  return c;
}

constexpr bool corridor_contains(const Corridor& c, const LatticePoint& p) noexcept {
  const std::int64_t r = phi(p);
  if (r < c.start_level || r > c.end_level) return false;
  const __int128 d = c.span();
  __int128 dev = static_cast<__int128>(psi(p)) * d - c.center_numerator(r);
  if (dev < 0) dev = -dev;
  return dev <= static_cast<__int128>(c.half_width) * d;
}

}  // namespace lpp
