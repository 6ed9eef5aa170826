#pragma once

// KPZ centering and scaling, and functionals of scaled profiles.
//
//   droplet:  (T_N(s) - 4N) / (2^{4/3} N^{1/3})   ~  A2(s) - s^2
//   flat:     (T*_N(s) - 4N) / (2^{4/3} N^{1/3})  ~  2^{1/3} A1(2^{-2/3} s)
//
// A profile on L_{2N} is a grid function of s with pitch 1/(2N)^{2/3}: the
// site with psi = -2k sits at s = k / (2N)^{2/3}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lpp/numeric.hpp"
#include "lpp/error.hpp"
#include "lpp/lattice.hpp"
#include "lpp/passage.hpp"

namespace lpp {

enum class ProfileKind { airy2_parabolic, airy2_stationary, airy1_raw, airy1_normalized };

inline std::string_view to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::airy2_parabolic: return "airy2_parabolic";
    case ProfileKind::airy2_stationary: return "airy2_stationary";
    case ProfileKind::airy1_raw: return "airy1_raw";
    case ProfileKind::airy1_normalized: return "airy1_normalized";
  }
  return "unknown";
}

struct ScaledProfile {
  std::vector<double> s_values;
  std::vector<double> values;
  ProfileKind kind = ProfileKind::airy2_parabolic;

  std::size_t size() const noexcept { return values.size(); }
};

/// Almost-sure limit constants and one-point tail exponents.
struct LimitConstants {
  double airy2_max = cbrt_rn(0.75 * 0.75);                      // (3/4)^{2/3}
  double airy2_min = -cbrt_rn(12.0);                            // -(12)^{1/3}
  double airy1_max = cbrt_rn(std::pow(3.0 / (4.0 * std::sqrt(2.0)), 2.0));  // (3/(4 sqrt 2))^{2/3}
  double airy1_min = -cbrt_rn(3.0);                             // -3^{1/3}
  double upper_tail_p2p = 4.0 / 3.0;
  double upper_tail_p2l = 4.0 / 3.0;
  double lower_tail_p2p = 1.0 / 12.0;
  double lower_tail_p2l = 1.0 / 6.0;
};

inline const LimitConstants& limit_constants() {
  static const LimitConstants c{};
  return c;
}

/// (T - 4N) / (2^{4/3} N^{1/3}), plus s^2 when `subtract_parabola` so the
/// result approximates A2(s) rather than A2(s) - s^2.
inline double center_scale_p2p(double T, std::int64_t N, double s, bool subtract_parabola) {
  if (N < 1) throw InvalidArgument("center_scale_p2p: N must be >= 1");
  const double x = (T - 4.0 * static_cast<double>(N)) / fluctuation_unit(N);
  return subtract_parabola ? x + s * s : x;
}

inline double center_scale_p2l(double T, std::int64_t N) {
  if (N < 1) throw InvalidArgument("center_scale_p2l: N must be >= 1");
  return (T - 4.0 * static_cast<double>(N)) / fluctuation_unit(N);
}

/// Inverse of center_scale_p2l (and of center_scale_p2p without parabola).
inline double unscale(double x, std::int64_t N) {
  return 4.0 * static_cast<double>(N) + x * fluctuation_unit(N);
}

/// Raw passage time corresponding to a scaled height `x` at s (droplet),
/// i.e. 4N - s^2 unit + x unit.
inline double p2p_threshold(double x, std::int64_t N, double s) {
  return 4.0 * static_cast<double>(N) + (x - s * s) * fluctuation_unit(N);
}

inline double s_of_offset(std::int64_t k, std::int64_t N) {
  return static_cast<double>(k) / transversal_unit(N);
}

namespace detail {

inline void check_profile_level(const Profile& p, std::int64_t N) {
  if (p.level != 2 * N) throw InvalidArgument("scaled profile: profile level must be 2N");
}

}  // namespace detail

/// Droplet profile on L_{2N} as a function of s (increasing), unreachable
/// sites dropped.
inline ScaledProfile scale_p2p_profile(const Profile& p, std::int64_t N, bool subtract_parabola) {
  detail::check_profile_level(p, N);
  ScaledProfile out;
  out.kind = subtract_parabola ? ProfileKind::airy2_stationary : ProfileKind::airy2_parabolic;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (!p.reachable(i)) continue;
    const double s = s_of_offset(-p.psi_values[i] / 2, N);
    out.s_values.push_back(s);
    out.values.push_back(center_scale_p2p(p.values[i], N, s, subtract_parabola));
  }
  return out;
}

inline ScaledProfile scale_p2l_profile(const Profile& p, std::int64_t N) {
  detail::check_profile_level(p, N);
  ScaledProfile out;
  out.kind = ProfileKind::airy1_raw;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (!p.reachable(i)) continue;
    out.s_values.push_back(s_of_offset(-p.psi_values[i] / 2, N));
    out.values.push_back(center_scale_p2l(p.values[i], N));
  }
  return out;
}

/// 2^{1/3} A1(2^{-2/3} s)  ->  A1(x): divide heights by 2^{1/3}, map s to
/// x = 2^{-2/3} s.
inline ScaledProfile airy1_normalize(const ScaledProfile& p) {
  if (p.kind != ProfileKind::airy1_raw) throw InvalidArgument("airy1_normalize: profile kind must be airy1_raw");
  const double height = cbrt_rn(2.0);
  const double arg = 1.0 / cbrt_rn(4.0);
  ScaledProfile out;
  out.kind = ProfileKind::airy1_normalized;
  out.s_values.reserve(p.size());
  out.values.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.s_values.push_back(p.s_values[i] * arg);
    out.values.push_back(p.values[i] / height);
  }
  return out;
}

struct Extrema {
  double argmax = 0.0;
  double max = 0.0;
  double argmin = 0.0;
  double min = 0.0;
};

/// Extrema over grid points with s in [s_lo, s_hi]; ties go to the smallest s.
inline Extrema profile_extrema(const ScaledProfile& p, double s_lo, double s_hi) {
  bool any = false;
  Extrema e;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double s = p.s_values[i];
    if (s < s_lo || s > s_hi) continue;
    const double v = p.values[i];
    if (!any) {
      e = {s, v, s, v};
      any = true;
      continue;
    }
    if (v > e.max) {
      e.max = v;
      e.argmax = s;
    }
    if (v < e.min) {
      e.min = v;
      e.argmin = s;
    }
  }
  if (!any) throw InvalidArgument("profile_extrema: window contains no grid point");
  return e;
}

/// max |v(s1) - v(s2)| over grid pairs with |s1 - s2| <= delta.
inline double modulus_of_continuity(const ScaledProfile& p, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("modulus_of_continuity: delta must be positive");
  // s values are k / (2N)^{2/3} rounded; the slack keeps exact grid
  // distances from dropping out by one ulp.
  const double reach = delta * (1.0 + 1e-12);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size() && p.s_values[j] - p.s_values[i] <= reach; ++j) {
      worst = std::max(worst, std::abs(p.values[j] - p.values[i]));
    }
  }
  return worst;
}

/// CSV rows `s,value,kind`.
inline void write_scaled_csv(std::ostream& os, const ScaledProfile& p, bool header = true) {
  if (header) os << "s,value,kind\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < p.size(); ++i) os << p.s_values[i] << ',' << p.values[i] << ',' << to_string(p.kind) << '\n';
}

}  // namespace lpp
