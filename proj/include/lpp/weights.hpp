#pragma once

// Counter-based Exp(1) weight field.
//
// The weight at a site is a pure function of (seed, x, y); nothing is stored.
// Bit-exact construction (part of the result-file contract):
//
//   mix(z):  z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//            z ^= z >> 27; z *= 0x94D049BB133111EB;
//            z ^= z >> 31
//   site  = (uint64)x * 0x9E3779B97F4A7C15  ^  rotl64((uint64)y, 32)
//   key   = seed ^ mix(site)
//   bits  = mix(key)
//   u     = (bits >> 11) * 2^-53              in [0, 1)
//   w     = -log(1 - u)                       (u' = 1 - u in (0, 1])
//
// x and y are converted to uint64 by two's complement. w == 0 only when
// u == 0; that single pattern is remapped to the smallest positive double.

#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <map>
#include <vector>

#include "lpp/error.hpp"
#include "lpp/lattice.hpp"

namespace lpp {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

/// Seed of replica `k` under master seed `master` (SplitMix64 stream).
constexpr std::uint64_t replica_seed(std::uint64_t master, std::uint64_t k) noexcept {
  return mix64(master + (k + 1) * kGolden);
}

/// Independent master seed for a numbered sub-stream (e.g. one per s value).
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return mix64(master ^ mix64((stream + 1) * 0xD1B54A32D192ED03ULL));
}

/// Inverse CDF of Exp(1). Requires 0 <= u < 1.
inline double exp_inverse_cdf(double u) {
  if (!(u >= 0.0 && u < 1.0)) throw InvalidArgument("exp_inverse_cdf: u must lie in [0, 1)");
  return -std::log(1.0 - u);
}

namespace detail {

inline constexpr std::int64_t kCoordLimit = std::int64_t{1} << 31;

constexpr std::uint64_t site_bits(std::uint64_t seed, std::int64_t x, std::int64_t y) noexcept {
  const std::uint64_t h = static_cast<std::uint64_t>(x) * kGolden ^ std::rotl(static_cast<std::uint64_t>(y), 32);
  return mix64(seed ^ mix64(h));
}

inline double weight_from_bits(std::uint64_t bits) noexcept {
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  const double w = -std::log(1.0 - u);
  return w > 0.0 ? w : std::numeric_limits<double>::denorm_min();
}

inline void check_coords(std::int64_t x, std::int64_t y) {
  if (x >= kCoordLimit || x <= -kCoordLimit || y >= kCoordLimit || y <= -kCoordLimit) {
    throw InvalidArgument("weight field: coordinate outside |x|, |y| < 2^31");
  }
}

}  // namespace detail

/// i.i.d. Exp(1) field over Z^2, fully determined by `seed`.
struct WeightField {
  std::uint64_t seed = 0;

  double weight_at(const LatticePoint& p) const {
    detail::check_coords(p.x, p.y);
    return detail::weight_from_bits(detail::site_bits(seed, p.x, p.y));
  }

  /// Weights on L_r for psi_lo <= psi <= psi_hi (step 2), written to `out`.
  /// `out.size()` must equal the number of sites.
  void fill_diagonal(std::int64_t r, std::int64_t psi_lo, std::int64_t psi_hi, std::span<double> out) const {
    if (psi_lo > psi_hi) return;
    const LatticePoint first = from_space_time(r, psi_lo);
    const LatticePoint last = from_space_time(r, psi_hi);
    detail::check_coords(first.x, first.y);
    detail::check_coords(last.x, last.y);
    std::int64_t x = first.x;
    std::int64_t y = first.y;
    for (double& w : out) {
      w = detail::weight_from_bits(detail::site_bits(seed, x, y));
      ++x;
      --y;
    }
  }
};

inline double weight_at(const WeightField& f, const LatticePoint& p) { return f.weight_at(p); }

inline std::vector<double> diagonal_weights(const WeightField& f, std::int64_t r, std::int64_t psi_lo,
                                            std::int64_t psi_hi) {
  if (psi_lo > psi_hi) return {};
  if (!same_parity(psi_lo, r) || !same_parity(psi_hi, r)) {
    throw InvalidArgument("diagonal_weights: psi range not parity-consistent with r");
  }
  std::vector<double> out(static_cast<std::size_t>((psi_hi - psi_lo) / 2 + 1));
  f.fill_diagonal(r, psi_lo, psi_hi, out);
  return out;
}

/// Any type the DP engines can read weights from.
template <class F>
concept WeightSource = requires(const F& f, LatticePoint p, std::int64_t r, std::span<double> out) {
  { f.weight_at(p) } -> std::convertible_to<double>;
  f.fill_diagonal(r, r, r, out);
};

/// A base field with a handful of sites replaced. Used to probe monotone
/// coupling and to plant heavy sites.
template <WeightSource Base = WeightField>
class OverriddenField {
 public:
  explicit OverriddenField(Base base) : base_(std::move(base)) {}

  void set(const LatticePoint& p, double w) { overrides_[p] = w; }

  double weight_at(const LatticePoint& p) const {
    if (auto it = overrides_.find(p); it != overrides_.end()) return it->second;
    return base_.weight_at(p);
  }

  void fill_diagonal(std::int64_t r, std::int64_t psi_lo, std::int64_t psi_hi, std::span<double> out) const {
    base_.fill_diagonal(r, psi_lo, psi_hi, out);
    if (overrides_.empty()) return;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const auto p = from_space_time(r, psi_lo + 2 * static_cast<std::int64_t>(k));
      if (auto it = overrides_.find(p); it != overrides_.end()) out[k] = it->second;
    }
  }

 private:
  Base base_;
  std::map<LatticePoint, double> overrides_;
};

}  // namespace lpp
