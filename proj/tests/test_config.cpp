#include <gtest/gtest.h>

#include "rwrers/config.hpp"
#include "rwrers/errors.hpp"

using namespace rwrers;
using nlohmann::json;

namespace {

std::string config_error(const json& j) {
  try {
    load_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, Defaults) {
  bool generated = false;
  const ExperimentConfig cfg = load_config(json::object(), &generated);
  EXPECT_TRUE(generated);
  EXPECT_EQ(cfg.space, Space::regular_tree(3));
  EXPECT_EQ(cfg.kernel, KernelFamily::DelayedSrw);
  EXPECT_EQ(cfg.N, 20);
  EXPECT_EQ(cfg.M, 100000);
  EXPECT_EQ(cfg.R, 12);
  EXPECT_EQ(cfg.r, 1);
  EXPECT_EQ(cfg.k, 1);
  EXPECT_EQ(cfg.tol, 1e-12);
  EXPECT_EQ(cfg.mode, WeightingMode::Unimodular);
  EXPECT_DOUBLE_EQ(cfg.env.p, 2.0 / 3.0);
  EXPECT_EQ(cfg.env.palette, 4u);
  EXPECT_TRUE(cfg.representatives.empty());

  const ExperimentConfig end = load_config(json{{"space", "tree-end3"}, {"seed", 4}}, &generated);
  EXPECT_FALSE(generated);
  EXPECT_EQ(end.seed, 4u);
  EXPECT_EQ(end.kernel, KernelFamily::MWeighted);
  EXPECT_EQ(end.mode, WeightingMode::General);

  const ExperimentConfig alili = load_config(json{{"space", "line"}, {"kernel", "alili"}, {"seed", 1}});
  EXPECT_TRUE(alili.env.site_params);
  EXPECT_FALSE(alili.env.percolation);
}

TEST(Config, RoundTrip) {
  const json in = {{"space", "subdivided-line"}, {"kernel", "srw-clusters"}, {"p", 0.4},
                   {"N", 7},  {"M", 1234},  {"seed", "0xff"}, {"representatives", {2}},
                   {"workers", 3}, {"observables", {"walker_orbit", "first_step"}}};
  const ExperimentConfig cfg = load_config(in);
  EXPECT_EQ(cfg.seed, 255u);
  EXPECT_EQ(cfg.representatives, std::vector<int>{2});
  EXPECT_EQ(load_config(serialize_config(cfg)), cfg);
  const json manifest = {{"tool", "rwrers"}, {"config", serialize_config(cfg)}};
  EXPECT_EQ(load_config(manifest), cfg);
  EXPECT_EQ(load_config_text(serialize_config(cfg).dump()), cfg);
}

TEST(Config, AliliOffTheLineNamesBothFields) {
  const std::string msg = config_error({{"space", "tree3"}, {"kernel", "alili"}, {"seed", 1}});
  EXPECT_NE(msg.find("kernel = alili"), std::string::npos) << msg;
  EXPECT_NE(msg.find("space = tree3"), std::string::npos) << msg;
}

TEST(Config, Rejections) {
  EXPECT_NE(config_error({{"spaec", "tree3"}}).find("spaec"), std::string::npos);
  EXPECT_FALSE(config_error({{"kernel", "srw-clusters"}, {"percolation", false}}).empty());
  EXPECT_FALSE(config_error({{"space", "tree-end3"}, {"mode", "unimodular"}}).empty());
  EXPECT_FALSE(config_error({{"N", 0}}).empty());
  EXPECT_FALSE(config_error({{"M", 0}}).empty());
  EXPECT_FALSE(config_error({{"M", 1.5}}).empty());
  EXPECT_FALSE(config_error({{"N", 250}, {"k", 10}}).empty());
  EXPECT_FALSE(config_error({{"tol", 0.0}}).empty());
  EXPECT_FALSE(config_error({{"p", 1.5}}).empty());
  EXPECT_FALSE(config_error({{"representatives", {2}}}).empty());
  EXPECT_FALSE(config_error({{"representatives", "some"}}).empty());
  EXPECT_FALSE(config_error({{"space", "tree1"}}).empty());
  EXPECT_FALSE(config_error({{"seed", -3}}).empty());
  EXPECT_FALSE(config_error(json::array()).empty());
  EXPECT_THROW(load_config_text("{not json"), ConfigError);
}
