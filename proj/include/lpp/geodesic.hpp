#pragma once

// Geodesic extraction by backtracking through the S frontiers.
//
// The forward sweep keeps a copy of every `stride`-th frontier. Walking back
// from the target, the frontiers of one block are recomputed from its
// checkpoint, so memory is O(width * (levels / stride + stride)).

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <vector>

#include "lpp/error.hpp"
#include "lpp/lattice.hpp"
#include "lpp/passage.hpp"
#include "lpp/weights.hpp"

namespace lpp {

struct GeodesicPath {
  std::vector<LatticePoint> points;

  bool empty() const noexcept { return points.empty(); }
  std::size_t size() const noexcept { return points.size(); }
  const LatticePoint& front() const { return points.front(); }
  const LatticePoint& back() const { return points.back(); }

  /// Each step is +e1 or +e2.
  bool is_monotone() const noexcept {
    for (std::size_t i = 1; i < points.size(); ++i) {
      const auto dx = points[i].x - points[i - 1].x;
      const auto dy = points[i].y - points[i - 1].y;
      if (!((dx == 1 && dy == 0) || (dx == 0 && dy == 1))) return false;
    }
    return true;
  }
};

inline constexpr std::int64_t kDefaultCheckpointStride = 64;

/// Sum of weights along the path in path order, last vertex excluded.
template <WeightSource F>
double path_weight(const F& field, const GeodesicPath& g) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < g.points.size(); ++i) sum += field.weight_at(g.points[i]);
  return sum;
}

/// Argmax path from the source spec to `target`, optionally confined to `c`.
/// Ties between the two predecessors go to v - e2.
template <WeightSource F>
GeodesicPath backtrack(const F& field, const SourceSpec& source, const LatticePoint& target,
                       const std::optional<Corridor>& c = std::nullopt,
                       std::int64_t stride = kDefaultCheckpointStride) {
  if (stride < 1) throw InvalidArgument("backtrack: checkpoint stride must be >= 1");
  const std::int64_t start = source_level(source);
  if (const auto* pt = std::get_if<LatticePoint>(&source); pt && *pt == target) return {{target}};
  if (phi(target) <= start) throw InvalidArgument("backtrack: target must lie above the source");
  if (c) {
    c->validate();
    if (!corridor_contains(*c, target)) throw Unreachable("backtrack: target outside corridor");
  }

  SweepPlan plan{source, phi(target), psi(target), psi(target), c, false};
  std::vector<Frontier> checkpoints;
  Frontier last = sweep(field, plan, [&](const Frontier& f) {
    if ((f.level() - start) % stride == 0) checkpoints.push_back(f);
  });
  if (!is_reachable(last.predecessor_max(psi(target)))) throw Unreachable("backtrack: target unreachable");

  std::vector<LatticePoint> reversed{target};
  std::int64_t q = psi(target);
  std::vector<Frontier> block;
  std::vector<double> wbuf;
  for (auto ci = checkpoints.size(); ci-- > 0;) {
    // Recompute the block's frontiers from its checkpoint.
    const std::int64_t block_start = checkpoints[ci].level();
    const std::int64_t block_end = std::min(block_start + stride - 1, plan.target_level - 1);
    block.assign(1, checkpoints[ci]);
    while (block.back().level() < block_end) {
      Frontier next;
      detail::advance(field, plan, block.back(), next, wbuf);
      block.push_back(std::move(next));
    }
    for (auto bi = block.size(); bi-- > 0;) {
      const Frontier& f = block[bi];
      const double via_e1 = f.at(q - 1);
      const double via_e2 = f.at(q + 1);
      q = via_e2 >= via_e1 ? q + 1 : q - 1;
      reversed.push_back(from_space_time(f.level(), q));
    }
  }
  return {{reversed.rbegin(), reversed.rend()}};
}

/// Gamma(r): the path point on L_r.
inline LatticePoint line_intersection(const GeodesicPath& g, std::int64_t r) {
  if (g.empty()) throw InvalidArgument("line_intersection: empty path");
  const std::int64_t first = phi(g.front());
  if (r < first || r > phi(g.back())) throw InvalidArgument("line_intersection: level outside the path");
  return g.points[static_cast<std::size_t>(r - first)];
}

/// max |psi(p) - psi_line(phi(p))| where psi_line interpolates between the
/// path's endpoints. Computed exactly; the result is numerator / span.
inline double transversal_fluctuation(const GeodesicPath& g) {
  if (g.size() < 2) return 0.0;
  const std::int64_t r0 = phi(g.front());
  const std::int64_t d = phi(g.back()) - r0;
  const std::int64_t q0 = psi(g.front());
  const std::int64_t dq = psi(g.back()) - q0;
  __int128 worst = 0;
  for (const auto& p : g.points) {
    __int128 dev = static_cast<__int128>(psi(p) - q0) * d - static_cast<__int128>(dq) * (phi(p) - r0);
    if (dev < 0) dev = -dev;
    if (dev > worst) worst = dev;
  }
  return static_cast<double>(worst) / static_cast<double>(d);
}

/// Every path point whose level lies in [c.start_level, c.end_level] is in c.
inline bool contained_in(const GeodesicPath& g, const Corridor& c) {
  for (const auto& p : g.points) {
    const auto r = phi(p);
    if (r < c.start_level || r > c.end_level) continue;
    if (!corridor_contains(c, p)) return false;
  }
  return true;
}

/// CSV rows `step,x,y,phi,psi`.
inline void write_path_csv(std::ostream& os, const GeodesicPath& g, bool header = true) {
  if (header) os << "step,x,y,phi,psi\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& p = g.points[i];
    os << i << ',' << p.x << ',' << p.y << ',' << phi(p) << ',' << psi(p) << '\n';
  }
}

}  // namespace lpp
