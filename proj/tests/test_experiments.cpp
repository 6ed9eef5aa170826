#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lpp/run.hpp"

namespace {

using lpp::Direction;
using lpp::ExperimentConfig;
using lpp::ExperimentKind;
using lpp::Geometry;
using lpp::Process;
using lpp::WeightField;

ExperimentConfig base(ExperimentKind kind, std::int64_t N, std::int64_t n) {
  ExperimentConfig c;
  c.experiment = kind;
  c.seed = 99;
  c.N = N;
  c.n_samples = n;
  return c;
}

TEST(Experiments, JointSweepMatchesSeparateSweeps) {
  for (std::uint64_t k = 0; k < 6; ++k) {
    const WeightField f{lpp::replica_seed(4, k)};
    for (double s : {0.0, 0.4, -0.7, 1.0}) {
      const std::int64_t N = 64;
      const auto v = lpp::sample_one_point(f, N, s, 6.0, true, true);
      const auto target = lpp::scaled_target(N, s);
      EXPECT_EQ(v.p2p, lpp::p2p(f, {0, 0}, target));
      const auto line = lpp::default_truncation(0, 2 * N, lpp::psi(target), lpp::psi(target), 6.0);
      EXPECT_EQ(v.p2l, lpp::line_to_point(f, line, target));
      EXPECT_EQ(lpp::p2p(f, lpp::from_space_time(0, v.start_psi), target), v.p2l);
      const auto only = lpp::sample_one_point(f, N, s, 6.0, true, false);
      EXPECT_EQ(only.p2p, v.p2p);
    }
    // Narrow truncation: the origin falls outside the line window.
    const auto narrow = lpp::sample_one_point(f, 64, 1.0, 0.5, true, true);
    EXPECT_EQ(narrow.p2p, lpp::p2p(f, {0, 0}, lpp::scaled_target(64, 1.0)));
    EXPECT_GE(narrow.p2l, 0.0);
  }
}

TEST(Experiments, TailDegenerateThresholds) {
  const std::vector<double> raw{10.0, 12.0, 14.0};
  const auto all = lpp::tail_from_values(raw, Geometry::p2p, Direction::upper, 4, 0.0, -100.0);
  EXPECT_EQ(all.p_hat, 1.0);
  EXPECT_EQ(all.hits, 3);

  auto cfg = base(ExperimentKind::tail, 30, 200);
  cfg.t_list = {1e6};
  const auto none = lpp::estimate_tail(cfg);
  EXPECT_EQ(none.hits, 0);
  EXPECT_EQ(none.p_hat, 0.0);
  EXPECT_EQ(none.ci_lo, 0.0);
  EXPECT_NEAR(none.ci_hi * 200, 3.84, 0.1);
}

TEST(Experiments, TailValidation) {
  auto cfg = base(ExperimentKind::tail, 30, 10);
  cfg.geometry = Geometry::p2l;
  cfg.s = 0.5;
  EXPECT_THROW(lpp::estimate_tail(cfg), lpp::ConfigError);
  cfg.geometry = Geometry::p2p;
  cfg.s = 5.0;
  EXPECT_THROW(lpp::estimate_tail(cfg), lpp::ConfigError);
  cfg.s = 0.0;
  cfg.direction = Direction::lower;
  cfg.t_list = {100.0};
  try {
    lpp::estimate_tail(cfg);
    FAIL();
  } catch (const lpp::ConfigError& e) {
    EXPECT_EQ(e.field(), "t");
  }
}

TEST(Experiments, TailSharesReplicasAcrossT) {
  auto cfg = base(ExperimentKind::tail, 40, 300);
  cfg.t_list = {-1.0, 0.0, 1.0};
  const auto run = lpp::estimate_tails(cfg);
  ASSERT_EQ(run.estimates.size(), 3u);
  EXPECT_GE(run.estimates[0].hits, run.estimates[1].hits);
  EXPECT_GE(run.estimates[1].hits, run.estimates[2].hits);
  cfg.t_list = {0.0};
  EXPECT_EQ(lpp::estimate_tail(cfg).hits, run.estimates[1].hits);
}

TEST(Experiments, ExactExponentFits) {
  std::vector<lpp::FitPoint> up;
  std::vector<lpp::FitPoint> low;
  for (double t : {1.0, 1.5, 2.0}) {
    up.push_back({t, std::exp(-(4.0 / 3.0) * std::pow(t, 1.5))});
    low.push_back({t, std::exp(-std::pow(t, 3) / 12.0)});
  }
  const auto fu = lpp::fit_exponent(up, 1.5);
  EXPECT_NEAR(fu.coefficient, 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(fu.intercept, 0.0, 1e-12);
  EXPECT_NEAR(fu.stderr_, 0.0, 1e-6);
  const auto fl = lpp::fit_exponent(low, 3.0);
  EXPECT_NEAR(fl.coefficient, 1.0 / 12.0, 1e-12);
  EXPECT_EQ(fl.power, 3.0);
}

// Synthetic-data oracle: multiplicative noise of up to 5% on p leaves the
// truth within 3 standard errors.
TEST(Experiments, NoisyExponentFit) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  int inside = 0;
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<lpp::FitPoint> pts;
    for (double t = 1.0; t <= 2.76; t += 0.25) pts.push_back({t, std::exp(-(4.0 / 3.0) * std::pow(t, 1.5)) * (1 + noise(rng))});
    const auto f = lpp::fit_exponent(pts, 1.5);
    inside += std::abs(f.coefficient - 4.0 / 3.0) <= 3.0 * f.stderr_;
  }
  EXPECT_GE(inside, static_cast<int>(0.95 * reps));
}

TEST(Experiments, FitNeedsEnoughHits) {
  std::vector<lpp::FitPoint> pts{{1.0, 0.2, 500}, {1.5, 0.05, 100}, {2.0, 0.0001, 5}};
  EXPECT_THROW(lpp::fit_exponent(pts, 1.5), lpp::InvalidArgument);
  pts.push_back({1.2, 0.1, 20});
  EXPECT_EQ(lpp::fit_exponent(pts, 1.5).points.size(), 3u);
}

TEST(Experiments, ExtremaValidation) {
  auto cfg = base(ExperimentKind::extrema, 500, 10);
  cfg.t_list = {4, 8, 16, 32};
  try {
    lpp::extrema_growth(cfg);
    FAIL();
  } catch (const lpp::ConfigError& e) {
    EXPECT_EQ(e.field(), "t_list");
  }
  cfg.t_list = {1.0, 2.0};
  EXPECT_THROW(lpp::extrema_growth(cfg), lpp::ConfigError);
  cfg.t_list = {3.0, 2.0};
  EXPECT_THROW(lpp::extrema_growth(cfg), lpp::ConfigError);
}

TEST(Experiments, ExtremaNesting) {
  auto cfg = base(ExperimentKind::extrema, 60, 20);
  cfg.t_list = {1.5, 2.0};
  const auto a2 = lpp::extrema_growth(cfg);
  EXPECT_EQ(a2.nesting_violations, 0);
  ASSERT_EQ(a2.per_t.size(), 2u);
  EXPECT_GE(a2.per_t[1].mean_max, a2.per_t[0].mean_max);
  EXPECT_LE(a2.per_t[1].mean_min, a2.per_t[0].mean_min);
  EXPECT_GT(a2.per_t[0].mean_max, a2.per_t[0].mean_min);

  cfg.process = Process::airy1;
  cfg.N = 40;
  cfg.t_list = {2.0, 8.0};  // flat geometry: no quadrant limit
  const auto a1 = lpp::extrema_growth(cfg);
  EXPECT_EQ(a1.nesting_violations, 0);
  EXPECT_GE(a1.per_t[1].mean_max, a1.per_t[0].mean_max);
  // Normalizing shrinks the window to [0, t] in A1 units and divides by 2^{1/3}.
  EXPECT_GE(a1.per_t[1].mean_max, a1.per_t[1].raw_mean_max);
}

TEST(Experiments, StationarityAndAssociation) {
  auto cfg = base(ExperimentKind::stationarity, 40, 200);
  cfg.s_list = {0.0, 1.0};
  const auto st = lpp::stationarity_check(cfg);
  ASSERT_EQ(st.pairs.size(), 1u);
  EXPECT_EQ(st.samples[0].size(), 200u);
  const auto self = lpp::stats::ks_two_sample(st.samples[0], st.samples[0]);
  EXPECT_EQ(self.statistic, 0.0);

  auto ac = base(ExperimentKind::association, 40, 200);
  ac.s1 = ac.s2 = 0.3;
  const auto var = lpp::association_check(ac);
  EXPECT_GT(var.cov.covariance, 0.0);
  EXPECT_NEAR(var.correlation, 1.0, 1e-12);
  ac.s2 = 5.0;
  EXPECT_THROW(lpp::association_check(ac), lpp::ConfigError);
}

TEST(Experiments, ModulusMatchesProfiles) {
  auto cfg = base(ExperimentKind::modulus, 40, 5);
  cfg.s_window = 0.5;
  cfg.delta_list = {1.0, 0.1};
  const auto m = lpp::modulus_experiment(cfg);
  EXPECT_EQ(m.rows.front().delta, 0.1);
  EXPECT_EQ(m.monotonicity_violations, 0);
  for (std::int64_t k = 0; k < 5; ++k) {
    const WeightField f{lpp::replica_seed(cfg.seed, static_cast<std::uint64_t>(k))};
    const auto sp = lpp::scale_p2l_profile(lpp::flat_profile(f, 40, -0.5, 0.5, 6.0), 40);
    const auto& row = m.per_replica[static_cast<std::size_t>(k)];
    EXPECT_EQ(row[0], lpp::modulus_of_continuity(sp, 0.1));
    EXPECT_EQ(row[1], lpp::modulus_of_continuity(sp, 1.0));
    const auto e = lpp::profile_extrema(sp, -1, 1);
    EXPECT_LE(row[1], e.max - e.min);
  }
}

TEST(Experiments, WideCorridorIsNonBinding) {
  for (Geometry g : {Geometry::p2p, Geometry::p2l}) {
    auto cfg = base(ExperimentKind::corridor, 30, 40);
    cfg.geometry = g;
    cfg.corridor_c = 100.0;
    cfg.t_list = {0.0};
    const auto r = lpp::corridor_experiment(cfg);
    EXPECT_EQ(r.geodesic_exits, 0);
    EXPECT_EQ(r.coupling_violations, 0);
    EXPECT_EQ(r.restricted.hits, r.unconstrained.hits);
  }
}

TEST(Experiments, CorridorCouplingAndExits) {
  auto cfg = base(ExperimentKind::corridor, 50, 60);
  cfg.corridor_c = 0.3;
  cfg.t_list = {-2.0};
  const auto r = lpp::corridor_experiment(cfg);
  EXPECT_EQ(r.coupling_violations, 0);
  EXPECT_LE(r.restricted.hits, r.unconstrained.hits);
  EXPECT_GT(r.geodesic_exits, 0);
  cfg.kappa = 0.5;
  const auto late = lpp::corridor_experiment(cfg);
  EXPECT_LE(late.geodesic_exits, r.geodesic_exits);
}

TEST(Experiments, DeterministicAcrossRunsAndThreads) {
  auto cfg = base(ExperimentKind::tail, 50, 64);
  cfg.t_list = {-1.0, 0.0, 0.5};
  const auto a = lpp::run_experiment(cfg);
  const auto b = lpp::run_experiment(cfg);
  EXPECT_EQ(a.statistics().dump(), b.statistics().dump());
  EXPECT_EQ(a.csv, b.csv);
  cfg.threads = 8;
  const auto c = lpp::run_experiment(cfg);
  EXPECT_EQ(a.statistics().dump(), c.statistics().dump());

  auto ex = base(ExperimentKind::extrema, 40, 16);
  ex.t_list = {1.2, 2.0};
  const auto e1 = lpp::run_experiment(ex);
  ex.threads = 8;
  EXPECT_EQ(e1.statistics().dump(), lpp::run_experiment(ex).statistics().dump());
}

TEST(Experiments, ResultDocument) {
  auto cfg = base(ExperimentKind::geodesic, 30, 1);
  const auto r = lpp::run_experiment(cfg);
  EXPECT_EQ(r.document.at("format_version"), 1);
  EXPECT_EQ(r.document.at("config").at("N"), 30);
  EXPECT_EQ(r.statistics().at("steps"), 60);
  EXPECT_EQ(r.csv.substr(0, 17), "step,x,y,phi,psi\n");
  EXPECT_TRUE(r.document.contains("timing"));
  EXPECT_TRUE(r.document.contains("diagnostics"));

  cfg.experiment = ExperimentKind::profile;
  cfg.s_lo = 0.0;
  cfg.s_hi = 0.5;
  const auto p = lpp::run_experiment(cfg);
  EXPECT_EQ(p.csv.substr(0, 26), "level,psi,value,reachable\n");
}

}  // namespace
