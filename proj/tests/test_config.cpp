#include <gtest/gtest.h>

#include "lpp/config.hpp"
#include "lpp/run.hpp"

namespace {

using lpp::Json;

std::string error_field(const Json& flags, const Json& file = Json::object()) {
  try {
    lpp::resolve_config(flags, file);
  } catch (const lpp::ConfigError& e) {
    return e.field();
  }
  return "";
}

TEST(Config, FlagsOverrideFile) {
  const Json file{{"experiment", "tail"}, {"seed", 3}, {"N", 500}, {"n_samples", 10}};
  const auto cfg = lpp::resolve_config(Json{{"N", 1000}}, file);
  EXPECT_EQ(cfg.N, 1000);
  EXPECT_EQ(cfg.seed, 3u);
  const auto t = lpp::resolve_config(Json{{"t", 2.0}}, Json{{"experiment", "tail"}, {"seed", 3}, {"N", 5},
                                                            {"n_samples", 1}, {"t_list", {1.0, 1.5}}});
  EXPECT_EQ(t.t_list, std::vector<double>{2.0});
}

TEST(Config, Defaults) {
  const auto cfg = lpp::resolve_config(Json{{"experiment", "profile"}, {"seed", 1}, {"N", 10}});
  EXPECT_EQ(cfg.trunc_c, 6.0);
  EXPECT_EQ(cfg.checkpoint_stride, 64);
  EXPECT_EQ(cfg.threads, 1);
  EXPECT_EQ(cfg.n_samples, 1);
}

TEST(Config, Errors) {
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"N", 10}, {"n_samples", 5}}), "seed");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}}), "n_samples");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}, {"n_samples", 0}}), "n_samples");
  EXPECT_EQ(error_field(Json{{"experiment", "bogus"}, {"seed", 1}, {"N", 10}, {"n_samples", 1}}), "experiment");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}, {"n_samples", 1}, {"colour", 1}}),
            "colour");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", -1}, {"N", 10}, {"n_samples", 1}}), "seed");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10.5}, {"n_samples", 1}}), "N");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}, {"n_samples", 1}, {"geometry", "p2x"}}),
            "geometry");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}, {"n_samples", 1}, {"trunc_c", 0}}),
            "trunc_c");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}, {"n_samples", 1}, {"threads", 0}}),
            "threads");
  EXPECT_EQ(error_field(Json::object(),
                        Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}, {"n_samples", 1}, {"t", 1}, {"t_list", {2}}}),
            "t");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}, {"n_samples", 1}, {"format_version", 2}}),
            "format_version");
  EXPECT_EQ(error_field(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}, {"n_samples", 1}, {"format_version", 1}}),
            "");
  EXPECT_THROW(lpp::config_from_json(Json{{"experiment", "tail"}, {"seed", 1}, {"N", 10}, {"n_samples", 1},
                                          {"format_version", 2}}),
               lpp::ConfigError);
}

// The echoed config reproduces the statistics byte for byte.
TEST(Config, EchoReproducesStatistics) {
  const auto cfg = lpp::resolve_config(Json{{"experiment", "tail"}, {"seed", 21}, {"N", 40}, {"n_samples", 100},
                                            {"t_list", {-0.5, 0.0, 0.5}}});
  const auto first = lpp::run_experiment(cfg);
  const auto again = lpp::run_experiment(lpp::config_from_json(first.document.at("config")));
  EXPECT_EQ(first.statistics().dump(), again.statistics().dump());
  EXPECT_EQ(first.csv, again.csv);
}

}  // namespace
