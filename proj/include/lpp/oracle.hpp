#pragma once

// Exhaustive path enumeration: the reference the DP engines are checked
// against. Deliberately naive.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lpp/error.hpp"
#include "lpp/geodesic.hpp"
#include "lpp/lattice.hpp"
#include "lpp/passage.hpp"
#include "lpp/weights.hpp"

namespace lpp::oracle {

inline constexpr std::int64_t kMaxSteps = 24;

struct PathEnumeration {
  SourceSpec source;
  LatticePoint target;
  std::optional<Corridor> corridor;
  std::vector<GeodesicPath> paths;
};

namespace detail {

inline bool admissible(const std::optional<Corridor>& c, const LatticePoint& p) {
  return !c || corridor_contains(*c, p);
}

/// Calls `visit` with every monotone path from `from` to `to` lying in `c`.
inline void for_each_path(const LatticePoint& from, const LatticePoint& to, const std::optional<Corridor>& c,
                          const std::function<void(const std::vector<LatticePoint>&)>& visit) {
  std::vector<LatticePoint> path{from};
  std::function<void()> go = [&]() {
    const LatticePoint cur = path.back();
    if (!admissible(c, cur)) return;
    if (cur == to) {
      visit(path);
      return;
    }
    if (cur.x < to.x) {
      path.push_back({cur.x + 1, cur.y});
      go();
      path.pop_back();
    }
    if (cur.y < to.y) {
      path.push_back({cur.x, cur.y + 1});
      go();
      path.pop_back();
    }
  };
  go();
}

inline void check_bound(const LatticePoint& from, const LatticePoint& to, std::int64_t max_steps) {
  if (to.x < from.x || to.y < from.y) throw InvalidArgument("oracle: target not above-right of source");
  if ((to.x - from.x) + (to.y - from.y) > max_steps) throw InvalidArgument("oracle: enumeration bound exceeded");
}

inline std::vector<LatticePoint> start_points(const SourceSpec& source, const LatticePoint& target) {
  if (const auto* pt = std::get_if<LatticePoint>(&source)) return {*pt};
  std::vector<LatticePoint> out;
  for (const auto& p : interval_points(std::get<LineSource>(source).interval())) {
    if (p.x <= target.x && p.y <= target.y) out.push_back(p);
  }
  return out;
}

}  // namespace detail

inline PathEnumeration enumerate_paths(const LatticePoint& source, const LatticePoint& target,
                                       const std::optional<Corridor>& c = std::nullopt,
                                       std::int64_t max_steps = kMaxSteps) {
  detail::check_bound(source, target, max_steps);
  PathEnumeration out{source, target, c, {}};
  detail::for_each_path(source, target, c, [&](const std::vector<LatticePoint>& p) { out.paths.push_back({p}); });
  return out;
}

struct BruteForceResult {
  double value = kUnreachable;
  GeodesicPath argmax;
  std::int64_t paths = 0;
};

/// Max over all admissible paths of the path-order weight sum, last vertex
/// excluded. Line sources range over every window point below-left of target.
template <WeightSource F>
BruteForceResult brute_force(const F& field, const SourceSpec& source, const LatticePoint& target,
                             const std::optional<Corridor>& c = std::nullopt, std::int64_t max_steps = kMaxSteps) {
  BruteForceResult best;
  for (const auto& start : detail::start_points(source, target)) {
    detail::check_bound(start, target, max_steps);
    detail::for_each_path(start, target, c, [&](const std::vector<LatticePoint>& path) {
      ++best.paths;
      double sum = 0.0;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) sum += field.weight_at(path[i]);
      if (best.argmax.empty() || sum > best.value) {
        best.value = sum;
        best.argmax.points = path;
      }
    });
  }
  return best;
}

template <WeightSource F>
double brute_force_passage(const F& field, const SourceSpec& source, const LatticePoint& target,
                           const std::optional<Corridor>& c = std::nullopt, std::int64_t max_steps = kMaxSteps) {
  return brute_force(field, source, target, c, max_steps).value;
}

}  // namespace lpp::oracle
