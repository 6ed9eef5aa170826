#pragma once

// Cross-checks of the DP engines against exhaustive enumeration. Every
// comparison is bitwise.

#include <bit>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lpp/geodesic.hpp"
#include "lpp/oracle.hpp"
#include "lpp/passage.hpp"
#include "lpp/weights.hpp"

namespace lpp {

struct OracleCheckReport {
  std::int64_t cases = 0;
  std::int64_t comparisons = 0;
  std::int64_t mismatches = 0;
  std::vector<std::string> failures;  // first few, for humans

  bool ok() const noexcept { return mismatches == 0; }
};

namespace detail {

inline bool same_bits(double a, double b) noexcept {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

class OracleChecker {
 public:
  explicit OracleChecker(OracleCheckReport& report) : report_(report) {}

  void expect(bool ok, const std::string& what) {
    ++report_.comparisons;
    if (ok) return;
    ++report_.mismatches;
    if (report_.failures.size() < 20) report_.failures.push_back(what);
  }

  /// All engine variants on one field for source offset + shape (m, n).
  void check_case(const WeightField& field, std::int64_t m, std::int64_t n, std::mt19937_64& rng) {
    ++report_.cases;
    std::uniform_int_distribution<std::int64_t> shift(-3, 3);
    const LatticePoint src{shift(rng), shift(rng)};
    const LatticePoint dst{src.x + m, src.y + n};
    std::ostringstream tag;
    tag << "seed=" << field.seed << " src=" << src << " dst=" << dst;

    // Point to point, value and geodesic.
    const auto bf = oracle::brute_force(field, SourceSpec{src}, dst);
    expect(same_bits(p2p(field, src, dst), bf.value), "p2p value " + tag.str());
    std::uniform_int_distribution<std::int64_t> stride(1, 5);
    const auto g = backtrack(field, SourceSpec{src}, dst, std::nullopt, stride(rng));
    expect(g.points == bf.argmax.points, "p2p geodesic " + tag.str());
    expect(same_bits(path_weight(field, g), bf.value), "p2p geodesic weight " + tag.str());
    if (m + n == 0) return;

    // Line to point over a truncation window containing both psi's.
    std::uniform_int_distribution<std::int64_t> pad(0, 3);
    const std::int64_t r0 = phi(src);
    const auto iv = make_interval(r0, std::min(psi(src), psi(dst)) - 2 * pad(rng) - 1,
                                  std::max(psi(src), psi(dst)) + 2 * pad(rng) + 1);
    const LineSource line{r0, iv.psi_lo, iv.psi_hi};
    const auto lbf = oracle::brute_force(field, SourceSpec{line}, dst);
    expect(same_bits(line_to_point(field, line, dst), lbf.value), "line value " + tag.str());
    const auto lg = backtrack(field, SourceSpec{line}, dst, std::nullopt, stride(rng));
    expect(lg.points == lbf.argmax.points, "line geodesic " + tag.str());

    // Corridors: random strips that contain both endpoints.
    std::uniform_int_distribution<std::int64_t> width(0, 3);
    std::uniform_int_distribution<std::int64_t> wiggle(-2, 2);
    for (int attempt = 0; attempt < 20; ++attempt) {
      Corridor c{r0 - (attempt % 2), phi(dst) + pad(rng) % 2, psi(src) + wiggle(rng), psi(dst) + wiggle(rng),
                 width(rng)};
      if (!corridor_contains(c, src) || !corridor_contains(c, dst)) continue;
      std::ostringstream ctag;
      ctag << tag.str() << " corridor=[" << c.start_level << ',' << c.end_level << ',' << c.psi_center_start << ','
           << c.psi_center_end << ',' << c.half_width << ']';
      const auto cbf = oracle::brute_force(field, SourceSpec{src}, dst, c);
      const double cv = corridor_passage(field, SourceSpec{src}, dst, c);
      expect(same_bits(cv, cbf.value), "corridor value " + ctag.str());
      if (is_reachable(cv)) {
        const auto cg = backtrack(field, SourceSpec{src}, dst, c, stride(rng));
        expect(cg.points == cbf.argmax.points, "corridor geodesic " + ctag.str());
      }
      const auto clbf = oracle::brute_force(field, SourceSpec{line}, dst, c);
      expect(same_bits(corridor_passage(field, SourceSpec{line}, dst, c), clbf.value), "corridor line " + ctag.str());
      break;
    }
  }

 private:
  OracleCheckReport& report_;
};

}  // namespace detail

/// `cases` random instances with m + n <= max_steps.
inline OracleCheckReport oracle_check(std::int64_t max_steps, std::int64_t cases, std::uint64_t seed) {
  if (max_steps < 0 || max_steps > oracle::kMaxSteps) throw InvalidArgument("oracle_check: max_steps out of range");
  OracleCheckReport report;
  detail::OracleChecker checker(report);
  std::mt19937_64 rng(seed);
  for (std::int64_t k = 0; k < cases; ++k) {
    std::uniform_int_distribution<std::int64_t> total(0, max_steps);
    const auto steps = total(rng);
    std::uniform_int_distribution<std::int64_t> split(0, steps);
    const auto m = split(rng);
    checker.check_case(WeightField{replica_seed(seed, static_cast<std::uint64_t>(k))}, m, steps - m, rng);
  }
  return report;
}

/// Every shape (m, n) with m + n <= max_steps, for `seeds` fields each.
inline OracleCheckReport oracle_check_all_shapes(std::int64_t max_steps, std::int64_t seeds, std::uint64_t seed) {
  if (max_steps < 0 || max_steps > oracle::kMaxSteps) throw InvalidArgument("oracle_check: max_steps out of range");
  OracleCheckReport report;
  detail::OracleChecker checker(report);
  std::mt19937_64 rng(seed);
  for (std::int64_t k = 0; k < seeds; ++k) {
    const WeightField field{replica_seed(seed, static_cast<std::uint64_t>(k))};
    for (std::int64_t m = 0; m <= max_steps; ++m) {
      for (std::int64_t n = 0; m + n <= max_steps; ++n) checker.check_case(field, m, n, rng);
    }
  }
  return report;
}

}  // namespace lpp
